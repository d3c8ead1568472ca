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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>

#include "pls/dataset.hpp"
#include "pls/error.hpp"
#include "pls/forest.hpp"

using namespace pls;

namespace {

FeatureMatrix matrix(std::size_t rows, std::size_t cols) {
  FeatureMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.values.assign(rows * cols, 0.0f);
  m.labels.assign(rows, 0);
  return m;
}

float& cell(FeatureMatrix& m, std::size_t r, std::size_t c) { return m.values[r * m.cols + c]; }

// 207-column toy set: class decided by feature 204 (the power side feature),
// other columns noise.
FeatureMatrix separable(std::size_t rows, std::uint64_t seed) {
  Rng rng(seed);
  auto m = matrix(rows, kFeatureCount);
  for (std::size_t r = 0; r < rows; ++r) {
    m.labels[r] = static_cast<std::uint8_t>(rng.below(2));
    for (std::size_t c = 0; c < m.cols; ++c) cell(m, r, c) = static_cast<float>(rng.uniform());
    cell(m, r, 204) = m.labels[r] ? 0.6f + 0.4f * static_cast<float>(rng.uniform())
                                  : 0.4f * static_cast<float>(rng.uniform());
  }
  return m;
}

std::vector<std::size_t> all_rows(const FeatureMatrix& m) {
  std::vector<std::size_t> r(m.rows);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// Exhaustive oracle in plain double arithmetic: Gini gain for every
// (feature, midpoint threshold) pair.
double brute_best_gain(const FeatureMatrix& m, const std::vector<int>& features) {
  const auto gini = [](double c0, double c1) {
    const double n = c0 + c1;
    return n == 0 ? 0.0 : 1.0 - (c0 / n) * (c0 / n) - (c1 / n) * (c1 / n);
  };
  double p0 = 0, p1 = 0;
  for (std::size_t r = 0; r < m.rows; ++r) (m.labels[r] ? p1 : p0) += 1;
  const double parent = gini(p0, p1);
  double best = 0.0;
  for (int f : features) {
    std::set<float> values;
    for (std::size_t r = 0; r < m.rows; ++r) values.insert(m.at(r, f));
    std::vector<float> v(values.begin(), values.end());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const double t = 0.5 * (double(v[i]) + double(v[i + 1]));
      double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
      for (std::size_t r = 0; r < m.rows; ++r) {
        const bool left = m.at(r, f) <= t;
        (left ? (m.labels[r] ? l1 : l0) : (m.labels[r] ? r1 : r0)) += 1;
      }
      const double n = double(m.rows);
      const double gain = parent - ((l0 + l1) / n) * gini(l0, l1) - ((r0 + r1) / n) * gini(r0, r1);
      best = std::max(best, gain);
    }
  }
  return best;
}

double accuracy(const ForestModel& model, const FeatureMatrix& m) {
  std::size_t ok = 0;
  for (std::size_t r = 0; r < m.rows; ++r) ok += predict(model, m.row(r)).label == m.labels[r];
  return static_cast<double>(ok) / static_cast<double>(m.rows);
}

}  // namespace

TEST_CASE("gini impurity") {
  CHECK(gini_impurity(std::vector<std::uint32_t>{10, 0}) == 0.0);
  CHECK(gini_impurity(std::vector<std::uint32_t>{5, 5}) == doctest::Approx(0.5));
  CHECK(gini_impurity(std::vector<std::uint32_t>{65, 35}) == doctest::Approx(0.455));
  CHECK_THROWS_AS(gini_impurity(std::vector<std::uint32_t>{0, 0}), Error);
}

TEST_CASE("best_split basic cases") {
  auto m = matrix(2, 1);
  cell(m, 1, 0) = 1.0f;
  m.labels = {0, 1};
  const std::vector<int> f0{0};
  const auto s = best_split(m, all_rows(m), f0);
  REQUIRE(s.has_value());
  CHECK(s->feature == 0);
  CHECK(s->threshold == 0.5);
  CHECK(s->gain == doctest::Approx(0.5));

  auto flat = matrix(6, 2);
  flat.labels = {0, 1, 0, 1, 0, 1};
  const std::vector<int> both{0, 1};
  CHECK_FALSE(best_split(flat, all_rows(flat), both).has_value());
}

TEST_CASE("best_split ties go to the lower feature index, then lower threshold") {
  auto m = matrix(4, 3);
  // Features 1 and 2 are identical perfect separators; feature 0 is useless.
  const float v[4] = {0.0f, 1.0f, 2.0f, 3.0f};
  m.labels = {0, 0, 1, 1};
  for (std::size_t r = 0; r < 4; ++r) {
    cell(m, r, 1) = v[r];
    cell(m, r, 2) = v[r];
  }
  const std::vector<int> f{2, 1, 0};
  const auto s = best_split(m, all_rows(m), f);
  REQUIRE(s.has_value());
  CHECK(s->feature == 1);
  CHECK(s->threshold == 1.5);

  // Labels 0 1 0 1: thresholds 0.5 and 2.5 tie; the lower wins.
  m.labels = {0, 1, 1, 0};
  const std::vector<int> only1{1};
  const auto t = best_split(m, all_rows(m), only1);
  REQUIRE(t.has_value());
  CHECK(t->threshold == 0.5);
}

TEST_CASE("best_split agrees with exhaustive search on 50 random sets") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = matrix(20, 6);
    for (std::size_t r = 0; r < 20; ++r) {
      m.labels[r] = static_cast<std::uint8_t>(rng.below(2));
      // Coarse values so ties between thresholds and features occur.
      for (std::size_t c = 0; c < 6; ++c) cell(m, r, c) = static_cast<float>(rng.below(6)) * 0.5f;
    }
    std::vector<int> features{0, 1, 2, 3, 4, 5};
    const auto s = best_split(m, all_rows(m), features);
    const double oracle = brute_best_gain(m, features);
    if (oracle <= 1e-15) {
      CHECK_FALSE(s.has_value());
    } else {
      REQUIRE(s.has_value());
      CHECK(s->gain == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("min_samples_leaf is respected by best_split") {
  auto m = matrix(5, 1);
  for (std::size_t r = 0; r < 5; ++r) cell(m, r, 0) = static_cast<float>(r);
  m.labels = {1, 0, 0, 0, 0};
  const std::vector<int> f{0};
  const auto loose = best_split(m, all_rows(m), f, 1);
  REQUIRE(loose.has_value());
  CHECK(loose->threshold == 0.5);
  const auto strict = best_split(m, all_rows(m), f, 2);
  REQUIRE(strict.has_value());
  CHECK(strict->threshold == 1.5);
}

TEST_CASE("tree growth limits") {
  const auto m = separable(60, 4);
  Rng rng(1);
  SUBCASE("pure input is a single leaf") {
    auto pure = m;
    std::fill(pure.labels.begin(), pure.labels.end(), 1);
    const auto t = train_tree(pure, all_rows(pure), Hyperparams{}, rng);
    CHECK(t.nodes.size() == 1);
    CHECK(t.nodes[0].is_leaf());
  }
  SUBCASE("a stump has at most three nodes") {
    Hyperparams hp;
    hp.max_depth = 1;
    hp.features_per_split = 207;
    const auto t = train_tree(m, all_rows(m), hp, rng);
    CHECK(t.nodes.size() <= 3);
    CHECK(t.depth() <= 1);
  }
  SUBCASE("depth never exceeds max_depth") {
    for (int d : {2, 3, 5}) {
      Hyperparams hp;
      hp.max_depth = d;
      CHECK(train_tree(m, all_rows(m), hp, rng).depth() <= d);
    }
  }
}

TEST_CASE("an unconstrained tree memorizes 50 distinct samples") {
  Rng data_rng(8);
  auto m = matrix(50, 5);
  for (std::size_t r = 0; r < 50; ++r) {
    m.labels[r] = static_cast<std::uint8_t>(data_rng.below(2));
    for (std::size_t c = 0; c < 5; ++c) cell(m, r, c) = static_cast<float>(data_rng.uniform());
  }
  Rng rng(2);
  Hyperparams hp;
  hp.features_per_split = 2;
  const auto t = train_tree(m, all_rows(m), hp, rng);
  for (std::size_t r = 0; r < 50; ++r) CHECK(t.predict(m.row(r)) == m.labels[r]);
  // Every leaf is reachable: each non-root node has exactly one parent.
  std::vector<int> parents(t.nodes.size(), 0);
  for (const auto& n : t.nodes)
    if (!n.is_leaf()) {
      ++parents[static_cast<std::size_t>(n.left)];
      ++parents[static_cast<std::size_t>(n.right)];
    }
  CHECK(parents[0] == 0);
  for (std::size_t i = 1; i < parents.size(); ++i) CHECK(parents[i] == 1);
}

TEST_CASE("bootstrap resamples cover about 1 - 1/e of the rows") {
  Rng rng(12);
  double sum = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto idx = bootstrap_indices(400, rng);
    REQUIRE(idx.size() == 400);
    sum += static_cast<double>(std::set<std::size_t>(idx.begin(), idx.end()).size()) / 400.0;
  }
  CHECK(std::abs(sum / 200.0 - (1.0 - std::exp(-1.0))) <= 0.03);
}

TEST_CASE("forests are deterministic per seed and nest by tree count") {
  const auto m = separable(80, 5);
  Hyperparams hp;
  hp.n_trees = 12;
  const auto a = train_forest(m, hp, 99);
  const auto b = train_forest(m, hp, 99);
  CHECK(serialize_model(a) == serialize_model(b));
  CHECK(a.trees.size() == 12);
  CHECK(serialize_model(train_forest(m, hp, 100)) != serialize_model(a));
  hp.n_trees = 5;
  const auto small = train_forest(m, hp, 99);
  for (std::size_t t = 0; t < 5; ++t) CHECK(small.trees[t] == a.trees[t]);
  hp.n_trees = 0;
  CHECK_THROWS_AS(train_forest(m, hp, 1), ConfigError);
}

TEST_CASE("prediction scores, vote ties and length checks") {
  ForestModel model;
  DecisionTree zero, one;
  zero.nodes.push_back(TreeNode{-1, 0.0, -1, -1, {3, 1}});
  one.nodes.push_back(TreeNode{-1, 0.0, -1, -1, {1, 3}});
  model.trees = {zero, one};
  const std::vector<float> x(kFeatureCount, 0.0f);
  const auto p = predict(model, x);
  CHECK(p.votes == 1);
  CHECK(p.score == 0.5);
  CHECK(p.label == 1);  // ties go to the eavesdropper class
  model.trees = {zero, zero, zero};
  CHECK(predict(model, x).score == 0.0);
  CHECK(predict(model, x).label == 0);
  const std::vector<float> short_x(10, 0.0f);
  CHECK_THROWS_AS(predict(model, short_x), Error);

  DecisionTree tie;
  tie.nodes.push_back(TreeNode{-1, 0.0, -1, -1, {2, 2}});
  CHECK(tie.predict(x) == 1);
}

TEST_CASE("a separable toy set is learned by both a single tree and the forest") {
  const auto train = separable(120, 6);
  const auto held_out = separable(60, 7);
  Rng rng(4);
  Hyperparams full;
  full.features_per_split = kFeatureCount;
  const auto tree = train_tree(train, all_rows(train), full, rng);
  // With every feature visible the root split is the separating one.
  CHECK(tree.nodes[0].feature == 204);
  CHECK(tree.nodes[0].threshold > 0.4);
  CHECK(tree.nodes[0].threshold < 0.6);
  Hyperparams hp;
  hp.n_trees = 50;
  // Bootstrap resamples keep the class gap, so with every feature visible
  // each tree's root separates the classes.
  hp.features_per_split = kFeatureCount;
  CHECK(accuracy(train_forest(train, hp, 3), held_out) == 1.0);
  // With 15 of 207 features per split, most splits see only noise.
  hp.features_per_split = 15;
  const auto forest = train_forest(train, hp, 3);
  CHECK(accuracy(forest, held_out) >= 0.8);
  for (std::size_t r = 0; r < held_out.rows; ++r) {
    const auto s = predict(forest, held_out.row(r)).score;
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("grid JSON") {
  const auto g = grid_from_json(nlohmann::json::parse(R"({"n_trees":[5,10],"max_depth":[3,null]})"));
  CHECK(g.n_trees == std::vector<int>{5, 10});
  CHECK(g.max_depth == std::vector<int>{3, 0});
  CHECK(g.min_samples_leaf == HyperGrid{}.min_samples_leaf);
  CHECK(g.cells().size() == 2 * 2 * 2 * 1);
  CHECK(grid_from_json(to_json(g)).cells() == g.cells());
  CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"trees":[5]})")), ConfigError);
  CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"n_trees":[]})")), ConfigError);
  CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"n_trees":[0]})")), ConfigError);
  const auto shipped = load_grid(std::filesystem::path(PLS_SOURCE_DIR) / "configs" / "grid.json");
  CHECK(shipped.cells() == HyperGrid{}.cells());
}

TEST_CASE("stratified folds") {
  std::vector<std::uint8_t> labels(50, 0);
  for (std::size_t i = 0; i < 20; ++i) labels[i] = 1;
  const auto folds = stratified_folds(labels, 5, 1);
  std::vector<int> size(5, 0), pos(5, 0);
  for (std::size_t i = 0; i < 50; ++i) {
    ++size[folds[i]];
    pos[folds[i]] += labels[i];
  }
  for (int f = 0; f < 5; ++f) {
    CHECK(size[f] == 10);
    CHECK(pos[f] == 4);
  }
  CHECK_THROWS_AS(stratified_folds(labels, 1, 1), ConfigError);
  CHECK_THROWS_AS(stratified_folds(labels, 51, 1), ConfigError);
}

TEST_CASE("cross-validation") {
  const auto m = separable(60, 9);
  SUBCASE("one cell is returned as best") {
    HyperGrid g;
    g.n_trees = {7};
    g.max_depth = {3};
    g.min_samples_leaf = {1};
    const auto cv = cross_validate(m, g, 5, 1);
    CHECK(cv.table.size() == 1);
    CHECK(cv.best == cv.table[0].hyperparams);
    CHECK(cv.table[0].fold_accuracy.size() == 5);
  }
  SUBCASE("best mean dominates the table; ties favour fewer trees") {
    HyperGrid g;
    g.n_trees = {3, 9};
    g.max_depth = {2, 0};
    g.min_samples_leaf = {1, 3};
    const auto cv = cross_validate(m, g, 4, 2);
    for (const auto& row : cv.table) CHECK(cv.table[cv.best_index].mean_accuracy >= row.mean_accuracy);
    for (const auto& row : cv.table)
      if (row.mean_accuracy == cv.table[cv.best_index].mean_accuracy) CHECK(cv.best.n_trees <= row.hyperparams.n_trees);
  }
  SUBCASE("sharing tree prefixes across n_trees matches separate runs") {
    HyperGrid both, three, nine;
    both.n_trees = {3, 9};
    three.n_trees = {3};
    nine.n_trees = {9};
    for (auto* g : {&both, &three, &nine}) {
      g->max_depth = {4};
      g->min_samples_leaf = {1};
    }
    const auto a = cross_validate(m, both, 5, 3);
    CHECK(a.table[0].fold_accuracy == cross_validate(m, three, 5, 3).table[0].fold_accuracy);
    CHECK(a.table[1].fold_accuracy == cross_validate(m, nine, 5, 3).table[0].fold_accuracy);
  }
  SUBCASE("leave-one-out on 10 samples") {
    auto small = separable(10, 10);
    small.labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
    HyperGrid g;
    g.n_trees = {5};
    g.max_depth = {0};
    g.min_samples_leaf = {1};
    const auto cv = cross_validate(small, g, 10, 4);
    CHECK(std::isfinite(cv.table[0].mean_accuracy));
  }
  SUBCASE("a class missing from a fold's training part is an error") {
    auto tiny = separable(6, 11);
    tiny.labels = {0, 0, 0, 0, 0, 1};
    HyperGrid g;
    g.n_trees = {3};
    CHECK_THROWS_AS(cross_validate(tiny, g, 6, 1), Error);
  }
}

TEST_CASE("PLSF model round trip and corruption") {
  const auto m = separable(40, 12);
  Hyperparams hp;
  hp.n_trees = 4;
  auto model = train_forest(m, hp, 5);
  model.split_seed = 17;
  model.split_ratio = 0.75;
  const auto bytes = serialize_model(model);
  CHECK(parse_model(bytes) == model);
  auto bad = bytes;
  bad[bad.size() / 2] ^= 0x10;
  CHECK_THROWS_AS(parse_model(bad), IntegrityError);
  const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 20);
  CHECK_THROWS_AS(parse_model(cut), FormatError);
  auto magic = bytes;
  magic[0] = 'Q';
  CHECK_THROWS_AS(parse_model(magic), FormatError);
  const auto path = std::filesystem::temp_directory_path() / "pls_test.plsf";
  write_model(model, path);
  CHECK(read_model(path) == model);
  std::filesystem::remove(path);
}

TEST_CASE("test accuracy varies less across seeds with 100 trees than with 5") {
  const auto ds = generate_dataset(ScenarioConfig{});
  const auto split = split_dataset(ds, 0.8, ds.manifest.master_seed);
  const auto train = feature_matrix(ds.samples, split.train);
  const auto test = feature_matrix(ds.samples, split.test);
  const auto variance = [&](int n_trees) {
    Hyperparams hp;
    hp.n_trees = n_trees;
    std::vector<double> acc;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) acc.push_back(accuracy(train_forest(train, hp, seed), test));
    const double mean = std::accumulate(acc.begin(), acc.end(), 0.0) / 10.0;
    double v = 0.0;
    for (double a : acc) v += (a - mean) * (a - mean);
    return v / 10.0;
  };
  const double v5 = variance(5), v100 = variance(100);
  MESSAGE("accuracy variance: 5 trees " << v5 << ", 100 trees " << v100);
  CHECK(v100 < v5);
}
