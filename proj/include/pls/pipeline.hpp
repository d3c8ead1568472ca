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

// End-to-end commands behind the plsbench CLI. Each command writes its
// artifacts plus a run manifest (<primary output>.run.json) listing every
// artifact with its SHA-256 and the wall-clock time of each stage.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pls/config.hpp"
#include "pls/dataset.hpp"
#include "pls/forest.hpp"
#include "pls/metrics.hpp"
#include "pls/secrecy.hpp"

namespace pls {

inline constexpr const char* kToolVersion = "plsbench 1.0.0";

struct GenerateArgs {
  std::optional<std::filesystem::path> config;  // built-in defaults when absent
  std::optional<std::uint64_t> seed;            // overrides master_seed
  std::filesystem::path out;
  std::optional<std::filesystem::path> dump_channel;  // serving channel of UE 0 as CSIT
};

struct TrainArgs {
  std::filesystem::path dataset;
  std::optional<std::filesystem::path> grid;  // default grid when absent
  std::filesystem::path out_model;
  std::optional<std::filesystem::path> out_report;
  std::optional<std::uint64_t> seed;  // defaults to the dataset's master seed
  int folds = 5;
  double split = 0.8;
  std::string model_name = "RF";
};

struct TrainOutcome {
  ForestModel model;
  CvResult cv;
  MetricsReport report;  // on the held-out test split
};

struct EvaluateArgs {
  std::filesystem::path model;
  std::filesystem::path dataset;
  std::filesystem::path out;
  bool all_samples = false;  // default: the model's own test split
  std::string model_name = "RF";
};

struct SweepArgs {
  std::filesystem::path model;
  std::optional<std::filesystem::path> config;
  std::vector<double> ratios{1.0, 1.5, 2.0, 2.5, 3.0};
  int n_seeds = 5;
  std::optional<std::uint64_t> seed;  // base of the per-point seed list
  std::filesystem::path out;
};

struct ReportArgs {
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> out;  // stdout when absent
};

Dataset cmd_generate(const GenerateArgs& args);
TrainOutcome cmd_train_rf(const TrainArgs& args);
MetricsReport cmd_evaluate(const EvaluateArgs& args);
SecrecyCurve cmd_sweep(const SweepArgs& args);
std::string cmd_report(const ReportArgs& args);

// Parses "1,1.5,2".
std::vector<double> parse_ratio_list(const std::string& text);

// Seeds used by the sweep: derived from base, one per index.
std::vector<std::uint64_t> sweep_seeds(std::uint64_t base, int count);

std::filesystem::path run_manifest_path(const std::filesystem::path& primary_output);

// True when every artifact listed in the manifest exists with its SHA-256.
bool verify_run_manifest(const std::filesystem::path& manifest_path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pls
