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

#include "pls/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "pls/checksum.hpp"
#include "pls/error.hpp"
#include "pls/features.hpp"
#include "pls/rng.hpp"

namespace pls {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class RunManifest {
 public:
  RunManifest(std::string command, std::uint64_t seed) {
    doc_ = {{"schema", "pls.run.v1"},
            {"command", std::move(command)},
            {"tool_version", kToolVersion},
            {"master_seed", seed},
            {"artifacts", nlohmann::json::array()},
            {"timings_s", nlohmann::json::object()}};
  }
  void set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }
  void timing(const std::string& stage, double seconds) { doc_["timings_s"][stage] = seconds; }
  void artifact(const std::filesystem::path& path) {
    doc_["artifacts"].push_back({{"path", std::filesystem::absolute(path).string()}, {"sha256", file_sha256(path)}});
  }
  void write(const std::filesystem::path& primary) const {
    write_text(run_manifest_path(primary), doc_.dump(2) + "\n");
  }

 private:
  nlohmann::json doc_;
};

ScenarioConfig resolve_config(const std::optional<std::filesystem::path>& path) {
  ScenarioConfig config = path ? load_config(*path) : ScenarioConfig{};
  validate(config);
  return config;
}

std::vector<std::size_t> all_positions(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

MetricsReport evaluate_rows(const ForestModel& model, const FeatureMatrix& m, std::string name, double train_seconds) {
  std::vector<std::uint8_t> predictions;
  predictions.reserve(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) predictions.push_back(predict(model, m.row(r)).label);
  return report(confusion(predictions, m.labels), std::move(name), train_seconds);
}

void check_feature_layout(const ForestModel& model) {
  if (model.feature_hash != feature_config_hash() || model.feature_count != static_cast<std::uint32_t>(kFeatureCount))
    throw FormatError("feature_hash", "model was trained with a different feature layout");
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::filesystem::path run_manifest_path(const std::filesystem::path& primary_output) {
  return std::filesystem::path(primary_output.string() + ".run.json");
}

bool verify_run_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) return false;
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("artifacts")) return false;
  for (const auto& a : doc["artifacts"]) {
    const std::filesystem::path p = a.at("path").get<std::string>();
    if (!std::filesystem::exists(p) || file_sha256(p) != a.at("sha256").get<std::string>()) return false;
  }
  return true;
}

Dataset cmd_generate(const GenerateArgs& args) {
  ScenarioConfig config = resolve_config(args.config);
  if (args.seed) config.master_seed = *args.seed;
  const auto start = Clock::now();
  Dataset ds = generate_dataset(config);
  const double gen_s = seconds_since(start);
  write_dataset(ds, args.out);

  RunManifest run("generate", config.master_seed);
  run.set("config_hash", config_hash(config));
  run.timing("generate", gen_s);
  run.artifact(args.out);
  if (args.dump_channel) {
    const Topology topology = build_topology(config);
    const auto& node = topology.nodes.front();
    std::vector<LargeScale> row;
    for (const auto& bs : topology.base_stations) row.push_back(link_large_scale(node, bs, config));
    write_channel_tensor(*args.dump_channel, serving_channel(node, topology, config, row).h);
    run.artifact(*args.dump_channel);
  }
  run.write(args.out);
  return ds;
}

TrainOutcome cmd_train_rf(const TrainArgs& args) {
  const Dataset ds = read_dataset(args.dataset);
  const HyperGrid grid = args.grid ? load_grid(*args.grid) : HyperGrid{};
  const std::uint64_t seed = args.seed.value_or(ds.manifest.master_seed);
  const SplitIndex split = split_dataset(ds, args.split, seed);
  const FeatureMatrix train = feature_matrix(ds.samples, split.train);
  const FeatureMatrix test = feature_matrix(ds.samples, split.test);

  TrainOutcome out;
  const auto start = Clock::now();
  out.cv = cross_validate(train, grid, args.folds, seed);
  const double cv_s = seconds_since(start);
  const auto fit_start = Clock::now();
  out.model = train_forest(train, out.cv.best, seed);
  const double fit_s = seconds_since(fit_start);
  const double train_s = seconds_since(start);
  out.model.split_seed = seed;
  out.model.split_ratio = args.split;
  out.report = evaluate_rows(out.model, test, args.model_name, train_s);

  write_model(out.model, args.out_model);
  RunManifest run("train-rf", seed);
  run.set("dataset_sha256", file_sha256(args.dataset));
  run.set("grid", to_json(grid));
  run.set("best_hyperparams", to_json(out.cv.best));
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : out.cv.table)
    table.push_back({{"hyperparams", to_json(row.hyperparams)}, {"fold_accuracy", row.fold_accuracy}, {"mean_accuracy", row.mean_accuracy}});
  run.set("cv_table", table);
  run.set("split", {{"ratio", args.split}, {"train", split.train.size()}, {"test", split.test.size()}});
  run.timing("cross_validation", cv_s);
  run.timing("final_fit", fit_s);
  run.timing("train_total", train_s);
  run.artifact(args.out_model);
  if (args.out_report) {
    write_text(*args.out_report, to_json(out.report).dump(2) + "\n");
    run.artifact(*args.out_report);
  }
  run.write(args.out_model);
  return out;
}

MetricsReport cmd_evaluate(const EvaluateArgs& args) {
  const ForestModel model = read_model(args.model);
  check_feature_layout(model);
  const Dataset ds = read_dataset(args.dataset);
  const auto start = Clock::now();
  std::vector<std::size_t> rows;
  if (args.all_samples) rows = all_positions(ds.samples.size());
  else rows = split_dataset(ds, model.split_ratio, model.split_seed).test;
  // No training happens here, so train_seconds stays 0 and the report is a
  // pure function of (model, dataset).
  MetricsReport r = evaluate_rows(model, feature_matrix(ds.samples, rows), args.model_name, 0.0);
  write_text(args.out, to_json(r).dump(2) + "\n");

  RunManifest run("evaluate", model.seed);
  run.timing("evaluate", seconds_since(start));
  run.artifact(args.out);
  run.write(args.out);
  return r;
}

std::vector<double> parse_ratio_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("ratios", "not a number: \"" + item + "\"");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("ratios", "not a number: \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("ratios", "empty list");
  return out;
}

std::vector<std::uint64_t> sweep_seeds(std::uint64_t base, int count) {
  if (count < 1) throw ConfigError("seeds", "must be >= 1");
  std::vector<std::uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(derive_seed(base, Stream::kSweep, {static_cast<std::uint64_t>(i)}));
  return out;
}

SecrecyCurve cmd_sweep(const SweepArgs& args) {
  const ScenarioConfig config = resolve_config(args.config);
  ForestModel model = read_model(args.model);
  check_feature_layout(model);
  const auto seeds = sweep_seeds(args.seed.value_or(config.master_seed), args.n_seeds);
  const auto start = Clock::now();
  const ForestClassifier classifier(std::move(model));
  SecrecyCurve curve = secrecy_sweep(config, classifier, args.ratios, seeds);
  write_text(args.out, sweep_csv(curve));

  RunManifest run("secrecy-sweep", config.master_seed);
  run.set("config_hash", config_hash(config));
  run.set("seeds", seeds);
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points)
    points.push_back({{"ratio", p.ratio}, {"n_lu", p.n_lu}, {"n_e", p.n_e}, {"false_negatives", p.false_negatives},
                      {"false_positives", p.false_positives}, {"degenerate", p.degenerate}});
  run.set("points", points);
  run.timing("sweep", seconds_since(start));
  run.artifact(args.out);
  run.write(args.out);
  return curve;
}

std::string cmd_report(const ReportArgs& args) {
  if (args.inputs.empty()) throw ConfigError("inputs", "at least one report is required");
  std::vector<MetricsReport> reports;
  for (const auto& p : args.inputs) reports.push_back(load_metrics(p));
  std::string table = markdown_table(reports);
  if (args.out) write_text(*args.out, table);
  return table;
}

}  // namespace pls
