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

#pragma once

// Random forest over FeatureMatrix rows: bootstrap-bagged CART trees with
// Gini splits and a random feature subset per node, majority vote, and
// stratified k-fold grid search.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pls/features.hpp"
#include "pls/rng.hpp"

namespace pls {

struct Hyperparams {
  int n_trees = 100;
  int max_depth = 0;  // 0 = unlimited
  int min_samples_leaf = 1;
  int features_per_split = 15;
  bool operator==(const Hyperparams&) const = default;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // x <= threshold goes left
  int left = -1;
  int right = -1;
  std::array<std::uint32_t, 2> counts{};  // training class counts reaching the node
  bool is_leaf() const noexcept { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

class DecisionTree {
 public:
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  // Majority class of the reached leaf; ties go to class 1.
  std::uint8_t predict(std::span<const float> features) const;
  int depth() const;
  bool operator==(const DecisionTree&) const = default;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  Hyperparams hyperparams;
  std::uint32_t feature_count = kFeatureCount;
  std::uint64_t feature_hash = 0;
  std::uint64_t seed = 0;
  // Train/test split used to fit the model, so evaluation can reproduce it.
  std::uint64_t split_seed = 0;
  double split_ratio = 0.8;
  bool operator==(const ForestModel&) const = default;
};

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

// 1 - sum p_c^2. Throws on an empty node.
double gini_impurity(std::span<const std::uint32_t> class_counts);

// Best Gini split over `feature_subset`, candidate thresholds at midpoints of
// consecutive distinct values, each child holding at least min_samples_leaf
// rows. Gains are compared exactly; ties go to the lower feature index, then
// the lower threshold. nullopt when no split has positive gain.
std::optional<Split> best_split(const FeatureMatrix& data, std::span<const std::size_t> rows,
                                std::span<const int> feature_subset, int min_samples_leaf = 1);

DecisionTree train_tree(const FeatureMatrix& data, std::span<const std::size_t> rows, const Hyperparams& hp,
                        Rng& rng);

// n draws with replacement from [0, n).
std::vector<std::size_t> bootstrap_indices(std::size_t n, Rng& rng);

// Tree t is grown on bootstrap_indices drawn from the stream derived from
// (seed, t), so a forest's first m trees equal the m-tree forest.
ForestModel train_forest(const FeatureMatrix& train, const Hyperparams& hp, std::uint64_t seed);

struct Prediction {
  std::uint8_t label = 0;
  double score = 0.0;  // votes / n_trees
  std::uint32_t votes = 0;
};

// label = 1 iff score >= 0.5.
Prediction predict(const ForestModel& model, std::span<const float> features);

struct HyperGrid {
  std::vector<int> n_trees{50, 100, 200};
  std::vector<int> max_depth{8, 12, 0};
  std::vector<int> min_samples_leaf{1, 3};
  std::vector<int> features_per_split{15};

  // Cartesian product in (n_trees, max_depth, min_samples_leaf,
  // features_per_split) order, last index fastest.
  std::vector<Hyperparams> cells() const;
};

// {"n_trees": [...], "max_depth": [8, null], ...}; null or 0 depth = unlimited.
HyperGrid grid_from_json(const nlohmann::json& doc);
HyperGrid load_grid(const std::filesystem::path& path);
nlohmann::json to_json(const HyperGrid& grid);
nlohmann::json to_json(const Hyperparams& hp);

struct CvRow {
  Hyperparams hyperparams;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct CvResult {
  Hyperparams best;
  std::size_t best_index = 0;
  std::vector<CvRow> table;
};

// Stratified k-fold grid search. Best cell: highest mean fold accuracy, ties
// to fewer trees, then shallower depth. Throws when a class is missing from
// the training part of some fold.
CvResult cross_validate(const FeatureMatrix& train, const HyperGrid& grid, int k, std::uint64_t seed);

// Fold index per row.
std::vector<int> stratified_folds(std::span<const std::uint8_t> labels, int k, std::uint64_t seed);

// "PLSF" model container; see docs/formats.md.
std::vector<std::uint8_t> serialize_model(const ForestModel& model);
ForestModel parse_model(std::span<const std::uint8_t> bytes);
void write_model(const ForestModel& model, const std::filesystem::path& path);
ForestModel read_model(const std::filesystem::path& path);

}  // namespace pls
