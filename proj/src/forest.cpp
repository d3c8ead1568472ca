// Copyright 2026 The plsbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pls/forest.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <numeric>
#include <utility>

#include "pls/error.hpp"
#include "pls/parallel.hpp"

namespace pls {

namespace {

using i128 = __int128;

// Weighted child purity score sum_c l_c^2 / n_l + sum_c r_c^2 / n_r as an
// exact fraction; larger is better.
struct Score {
  i128 num = 0;
  i128 den = 1;
};

bool greater(const Score& a, const Score& b) {
  // Operands stay below 2^62 for nodes under 4096 rows; wider nodes take the
  // 128-bit product.
  constexpr i128 kNarrow = i128(1) << 31;
  if (a.num < kNarrow && a.den < kNarrow && b.num < kNarrow && b.den < kNarrow)
    return static_cast<std::int64_t>(a.num) * static_cast<std::int64_t>(b.den) >
           static_cast<std::int64_t>(b.num) * static_cast<std::int64_t>(a.den);
  return a.num * b.den > b.num * a.den;
}

Score split_score(std::uint64_t l0, std::uint64_t l1, std::uint64_t r0, std::uint64_t r1) {
  const i128 nl = l0 + l1, nr = r0 + r1;
  const i128 a = i128(l0) * l0 + i128(l1) * l1;
  const i128 b = i128(r0) * r0 + i128(r1) * r1;
  return {a * nr + b * nl, nl * nr};
}

std::array<std::uint32_t, 2> count_labels(const FeatureMatrix& data, std::span<const std::size_t> rows) {
  std::array<std::uint32_t, 2> c{};
  for (std::size_t r : rows) ++c[data.labels[r]];
  return c;
}

// Feature-major copy of a FeatureMatrix so a split scan reads one column
// contiguously.
struct ColumnMajor {
  std::size_t rows = 0;
  std::vector<float> values;

  explicit ColumnMajor(const FeatureMatrix& m) : rows(m.rows), values(m.rows * m.cols) {
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < m.cols; ++c) values[c * m.rows + r] = m.at(r, c);
  }
  const float* column(std::size_t c) const { return values.data() + c * rows; }
};

// Order-preserving 32-bit key for a float (-0 folded onto +0), shifted left
// by one with the label in the low bit, so one integer sort orders by value
// then label.
std::uint64_t sort_key(float v, std::uint8_t label) {
  if (v == 0.0f) v = 0.0f;
  const auto bits = std::bit_cast<std::uint32_t>(v);
  const std::uint32_t ordered = (bits & 0x80000000u) ? ~bits : (bits | 0x80000000u);
  return (static_cast<std::uint64_t>(ordered) << 1) | (label ? 1u : 0u);
}

float key_value(std::uint64_t key) {
  const auto ordered = static_cast<std::uint32_t>(key >> 1);
  const std::uint32_t bits = (ordered & 0x80000000u) ? (ordered & 0x7FFFFFFFu) : ~ordered;
  return std::bit_cast<float>(bits);
}

std::optional<Split> best_split_columns(const ColumnMajor& columns, const FeatureMatrix& data,
                                        std::span<const std::size_t> rows, std::span<const int> feature_subset,
                                        int min_samples_leaf) {
  const std::size_t n = rows.size();
  if (n < 2) return std::nullopt;
  const auto parent = count_labels(data, rows);
  const std::size_t min_leaf = static_cast<std::size_t>(std::max(min_samples_leaf, 1));
  // Parent score sum_c c^2 / n; a split must strictly exceed it.
  const Score parent_score{i128(parent[0]) * parent[0] + i128(parent[1]) * parent[1], i128(n)};

  std::vector<int> features(feature_subset.begin(), feature_subset.end());
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());

  std::optional<Split> best;
  Score best_score = parent_score;
  std::vector<std::uint64_t> keys(n);
  for (int f : features) {
    if (f < 0 || static_cast<std::size_t>(f) >= data.cols) throw Error("best_split: feature index out of range");
    const float* col = columns.column(static_cast<std::size_t>(f));
    for (std::size_t i = 0; i < n; ++i) keys[i] = sort_key(col[rows[i]], data.labels[rows[i]]);
    std::sort(keys.begin(), keys.end());
    std::uint64_t l0 = 0, l1 = 0;
    float current = key_value(keys[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      (keys[i] & 1u ? l1 : l0) += 1;
      const float next = key_value(keys[i + 1]);
      const float here = current;
      current = next;
      if (!(here < next)) continue;
      const std::size_t nl = i + 1;
      if (nl < min_leaf || n - nl < min_leaf) continue;
      const Score s = split_score(l0, l1, parent[0] - l0, parent[1] - l1);
      if (greater(s, best_score)) {
        best_score = s;
        const double gain = (static_cast<double>(s.num) / static_cast<double>(s.den) -
                             static_cast<double>(parent_score.num) / static_cast<double>(parent_score.den)) /
                            static_cast<double>(n);
        best = Split{f, 0.5 * (static_cast<double>(here) + static_cast<double>(next)), gain};
      }
    }
  }
  return best;
}

struct Builder {
  const FeatureMatrix& data;
  const ColumnMajor& columns;
  const Hyperparams& hp;
  Rng& rng;
  DecisionTree tree;
  std::vector<int> feature_pool;

  int build(std::vector<std::size_t> rows, int depth) {
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[index].counts = count_labels(data, rows);
    const auto counts = tree.nodes[index].counts;
    const bool pure = counts[0] == 0 || counts[1] == 0;
    const bool depth_reached = hp.max_depth > 0 && depth >= hp.max_depth;
    const bool too_small = rows.size() < 2 * static_cast<std::size_t>(std::max(hp.min_samples_leaf, 1));
    if (pure || depth_reached || too_small) return index;

    // Partial Fisher-Yates draw of the feature subset.
    const int d = static_cast<int>(feature_pool.size());
    const int k = std::clamp(hp.features_per_split, 1, d);
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - i)));
      std::swap(feature_pool[i], feature_pool[j]);
    }
    std::vector<int> subset(feature_pool.begin(), feature_pool.begin() + k);
    std::sort(subset.begin(), subset.end());

    const auto split = best_split_columns(columns, data, rows, subset, hp.min_samples_leaf);
    if (!split) return index;

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) (data.at(r, static_cast<std::size_t>(split->feature)) <= split->threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    tree.nodes[index].feature = split->feature;
    tree.nodes[index].threshold = split->threshold;
    const int l = build(std::move(left), depth + 1);
    tree.nodes[index].left = l;
    const int r = build(std::move(right), depth + 1);
    tree.nodes[index].right = r;
    return index;
  }
};

}  // namespace

double gini_impurity(std::span<const std::uint32_t> class_counts) {
  std::uint64_t total = 0;
  for (auto c : class_counts) total += c;
  if (total == 0) throw Error("gini_impurity: empty node");
  double sum_sq = 0.0;
  for (auto c : class_counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

std::optional<Split> best_split(const FeatureMatrix& data, std::span<const std::size_t> rows,
                                std::span<const int> feature_subset, int min_samples_leaf) {
  return best_split_columns(ColumnMajor(data), data, rows, feature_subset, min_samples_leaf);
}

std::uint8_t DecisionTree::predict(std::span<const float> features) const {
  if (nodes.empty()) throw Error("DecisionTree::predict: empty tree");
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& node = nodes[i];
    i = static_cast<std::size_t>(features[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right);
  }
  return nodes[i].counts[1] >= nodes[i].counts[0] ? 1 : 0;
}

int DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  int deepest = 0;
  std::vector<std::pair<std::size_t, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes[i].is_leaf()) {
      stack.emplace_back(static_cast<std::size_t>(nodes[i].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes[i].right), d + 1);
    }
  }
  return deepest;
}

namespace {

DecisionTree grow_tree(const FeatureMatrix& data, const ColumnMajor& columns, std::span<const std::size_t> rows,
                       const Hyperparams& hp, Rng& rng) {
  if (rows.empty()) throw Error("train_tree: no samples");
  Builder b{data, columns, hp, rng, {}, std::vector<int>(data.cols)};
  std::iota(b.feature_pool.begin(), b.feature_pool.end(), 0);
  b.build(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
  return std::move(b.tree);
}

}  // namespace

DecisionTree train_tree(const FeatureMatrix& data, std::span<const std::size_t> rows, const Hyperparams& hp,
                        Rng& rng) {
  return grow_tree(data, ColumnMajor(data), rows, hp, rng);
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> sample(n);
  for (auto& s : sample) s = static_cast<std::size_t>(rng.below(n));
  return sample;
}

ForestModel train_forest(const FeatureMatrix& train, const Hyperparams& hp, std::uint64_t seed) {
  if (train.rows == 0) throw Error("train_forest: empty training set");
  if (hp.n_trees < 1) throw ConfigError("n_trees", "must be >= 1");
  ForestModel model;
  model.hyperparams = hp;
  model.feature_count = static_cast<std::uint32_t>(train.cols);
  model.feature_hash = feature_config_hash();
  model.seed = seed;
  model.trees.resize(static_cast<std::size_t>(hp.n_trees));
  const ColumnMajor columns(train);
  parallel_for(model.trees.size(), [&](std::size_t t) {
    Rng rng(derive_seed(seed, Stream::kTree, {t}));
    const auto sample = bootstrap_indices(train.rows, rng);
    model.trees[t] = grow_tree(train, columns, sample, hp, rng);
  });
  return model;
}

Prediction predict(const ForestModel& model, std::span<const float> features) {
  if (features.size() != model.feature_count)
    throw Error("predict: expected " + std::to_string(model.feature_count) + " features, got " +
                std::to_string(features.size()));
  if (model.trees.empty()) throw Error("predict: model has no trees");
  Prediction p;
  for (const auto& tree : model.trees) p.votes += tree.predict(features);
  const auto n = static_cast<std::uint32_t>(model.trees.size());
  p.score = static_cast<double>(p.votes) / static_cast<double>(n);
  p.label = 2 * p.votes >= n ? 1 : 0;
  return p;
}

std::vector<Hyperparams> HyperGrid::cells() const {
  std::vector<Hyperparams> out;
  for (int t : n_trees)
    for (int d : max_depth)
      for (int m : min_samples_leaf)
        for (int f : features_per_split) out.push_back({t, d, m, f});
  return out;
}

namespace {

std::vector<int> int_list(const nlohmann::json& doc, const char* key, bool allow_null, std::vector<int> fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_array() || it->empty()) throw ConfigError(std::string("grid.") + key, "must be a non-empty array");
  std::vector<int> out;
  for (const auto& v : *it) {
    if (v.is_null() && allow_null) {
      out.push_back(0);
    } else if (v.is_number_integer() && v.get<long long>() >= (allow_null ? 0 : 1) && v.get<long long>() < (1 << 30)) {
      out.push_back(v.get<int>());
    } else {
      throw ConfigError(std::string("grid.") + key, "invalid entry " + v.dump());
    }
  }
  return out;
}

}  // namespace

HyperGrid grid_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("grid", "must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "n_trees" && key != "max_depth" && key != "min_samples_leaf" && key != "features_per_split")
      throw ConfigError("grid." + key, "unknown field");
  HyperGrid defaults;
  HyperGrid g;
  g.n_trees = int_list(doc, "n_trees", false, defaults.n_trees);
  g.max_depth = int_list(doc, "max_depth", true, defaults.max_depth);
  g.min_samples_leaf = int_list(doc, "min_samples_leaf", false, defaults.min_samples_leaf);
  g.features_per_split = int_list(doc, "features_per_split", false, defaults.features_per_split);
  return g;
}

HyperGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("grid", "cannot open " + path.string());
  try {
    return grid_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("grid", std::string("invalid JSON: ") + e.what());
  }
}

nlohmann::json to_json(const Hyperparams& hp) {
  return {{"n_trees", hp.n_trees},
          {"max_depth", hp.max_depth > 0 ? nlohmann::json(hp.max_depth) : nlohmann::json(nullptr)},
          {"min_samples_leaf", hp.min_samples_leaf},
          {"features_per_split", hp.features_per_split}};
}

nlohmann::json to_json(const HyperGrid& g) {
  nlohmann::json depth = nlohmann::json::array();
  for (int d : g.max_depth) depth.push_back(d > 0 ? nlohmann::json(d) : nlohmann::json(nullptr));
  return {{"n_trees", g.n_trees},
          {"max_depth", depth},
          {"min_samples_leaf", g.min_samples_leaf},
          {"features_per_split", g.features_per_split}};
}

std::vector<int> stratified_folds(std::span<const std::uint8_t> labels, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("k", "cross-validation needs k >= 2");
  if (static_cast<std::size_t>(k) > labels.size()) throw ConfigError("k", "k exceeds the number of samples");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] ? 1 : 0].push_back(i);
  Rng rng(derive_seed(seed, Stream::kFold));
  std::vector<int> fold(labels.size(), 0);
  // Continue the round-robin across classes so fold sizes differ by at most one.
  std::size_t next = 0;
  for (auto& members : by_class) {
    rng.shuffle(std::span(members));
    for (std::size_t i : members) fold[i] = static_cast<int>(next++ % static_cast<std::size_t>(k));
  }
  return fold;
}

CvResult cross_validate(const FeatureMatrix& train, const HyperGrid& grid, int k, std::uint64_t seed) {
  const auto cells = grid.cells();
  if (cells.empty()) throw ConfigError("grid", "grid is empty");
  const auto fold = stratified_folds(train.labels, k, seed);

  std::vector<std::vector<std::size_t>> fit_rows(static_cast<std::size_t>(k)), val_rows(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < train.rows; ++i)
    for (int f = 0; f < k; ++f) (fold[i] == f ? val_rows : fit_rows)[static_cast<std::size_t>(f)].push_back(i);
  std::vector<FeatureMatrix> fit_sets;
  for (int f = 0; f < k; ++f) {
    const auto& rows = fit_rows[static_cast<std::size_t>(f)];
    FeatureMatrix m;
    m.rows = rows.size();
    m.cols = train.cols;
    std::array<std::size_t, 2> seen{};
    for (std::size_t r : rows) {
      const auto rv = train.row(r);
      m.values.insert(m.values.end(), rv.begin(), rv.end());
      m.labels.push_back(train.labels[r]);
      ++seen[train.labels[r] ? 1 : 0];
    }
    if (seen[0] == 0 || seen[1] == 0)
      throw Error("cross_validate: fold " + std::to_string(f) + " training part is missing a class");
    fit_sets.push_back(std::move(m));
  }

  // Tree t of a forest depends only on (seed, t, data, hyperparameters other
  // than n_trees), so smaller forests are prefixes of larger ones: grow the
  // largest forest of each group once and score every prefix from it.
  CvResult result;
  result.table.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    result.table[c].hyperparams = cells[c];
    result.table[c].fold_accuracy.assign(static_cast<std::size_t>(k), 0.0);
  }
  auto same_group = [](const Hyperparams& a, const Hyperparams& b) {
    return a.max_depth == b.max_depth && a.min_samples_leaf == b.min_samples_leaf &&
           a.features_per_split == b.features_per_split;
  };
  std::vector<bool> done(cells.size(), false);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (done[c]) continue;
    std::vector<std::size_t> group;
    Hyperparams largest = cells[c];
    for (std::size_t o = c; o < cells.size(); ++o)
      if (!done[o] && same_group(cells[c], cells[o])) {
        group.push_back(o);
        done[o] = true;
        largest.n_trees = std::max(largest.n_trees, cells[o].n_trees);
      }
    for (int f = 0; f < k; ++f) {
      const auto model = train_forest(fit_sets[static_cast<std::size_t>(f)], largest,
                                      derive_seed(seed, Stream::kFold, {static_cast<std::uint64_t>(f)}));
      const auto& rows = val_rows[static_cast<std::size_t>(f)];
      // votes[r][t]: eavesdropper votes among the first t + 1 trees.
      std::vector<std::vector<std::uint32_t>> votes(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto x = train.row(rows[i]);
        std::uint32_t v = 0;
        votes[i].reserve(model.trees.size());
        for (const auto& tree : model.trees) votes[i].push_back(v += tree.predict(x));
      }
      for (std::size_t cell : group) {
        const auto n = static_cast<std::uint32_t>(cells[cell].n_trees);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const std::uint8_t label = 2 * votes[i][n - 1] >= n ? 1 : 0;
          correct += label == train.labels[rows[i]];
        }
        result.table[cell].fold_accuracy[static_cast<std::size_t>(f)] =
            rows.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(rows.size());
      }
    }
  }
  for (auto& row : result.table) {
    double sum = 0.0;
    for (double a : row.fold_accuracy) sum += a;
    row.mean_accuracy = sum / k;
  }

  auto depth_key = [](int d) { return d > 0 ? d : std::numeric_limits<int>::max(); };
  for (std::size_t c = 1; c < result.table.size(); ++c) {
    const auto& cand = result.table[c];
    const auto& cur = result.table[result.best_index];
    const bool better =
        cand.mean_accuracy > cur.mean_accuracy ||
        (cand.mean_accuracy == cur.mean_accuracy &&
         (cand.hyperparams.n_trees < cur.hyperparams.n_trees ||
          (cand.hyperparams.n_trees == cur.hyperparams.n_trees &&
           depth_key(cand.hyperparams.max_depth) < depth_key(cur.hyperparams.max_depth))));
    if (better) result.best_index = c;
  }
  result.best = result.table[result.best_index].hyperparams;
  return result;
}

}  // namespace pls
