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

// plsbench: dataset generation, Random Forest training and evaluation,
// secrecy-rate sweep and report consolidation.
//
// Exit codes: 0 success, 2 configuration error, 3 data-format error,
// 4 internal invariant violation, 1 any other failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pls/error.hpp"
#include "pls/pipeline.hpp"

namespace {

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitFormat = 3;
constexpr int kExitInvariant = 4;

void print_report(const pls::MetricsReport& r) {
  std::printf("%s: accuracy %.4f  precision/recall legit %.4f/%.4f  eaves %.4f/%.4f  (n=%llu)\n", r.model.c_str(),
              r.accuracy, r.per_class[0].precision, r.per_class[0].recall, r.per_class[1].precision,
              r.per_class[1].recall, static_cast<unsigned long long>(r.confusion.total()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical-layer security workbench for B5G indoor-factory networks"};
  app.set_version_flag("--version", std::string(pls::kToolVersion));
  app.require_subcommand(1);

  pls::GenerateArgs gen;
  std::uint64_t gen_seed = 0;
  std::string gen_config, gen_dump;
  auto* generate = app.add_subcommand("generate", "Simulate a topology and write a PLSD dataset");
  generate->add_option("--config", gen_config, "Scenario config (JSON); built-in defaults when omitted")->check(CLI::ExistingFile);
  auto* gen_seed_opt = generate->add_option("--seed", gen_seed, "Override the master seed");
  generate->add_option("--out", gen.out, "Output dataset path")->required();
  generate->add_option("--dump-channel", gen_dump, "Also write the serving channel tensor of UE 0 (CSIT)");

  pls::TrainArgs train;
  std::uint64_t train_seed = 0;
  std::string train_grid, train_report;
  auto* train_rf = app.add_subcommand("train-rf", "Grid-search, cross-validate and fit the Random Forest");
  train_rf->add_option("--dataset", train.dataset, "PLSD dataset")->required()->check(CLI::ExistingFile);
  train_rf->add_option("--grid", train_grid, "Hyper-parameter grid (JSON)")->check(CLI::ExistingFile);
  train_rf->add_option("--out", train.out_model, "Output model path")->required();
  train_rf->add_option("--report", train_report, "Test-split MetricsReport JSON path");
  auto* train_seed_opt = train_rf->add_option("--seed", train_seed, "Split/CV/forest seed (default: dataset seed)");
  train_rf->add_option("--folds", train.folds, "Cross-validation folds")->check(CLI::Range(2, 100));
  train_rf->add_option("--split", train.split, "Train fraction")->check(CLI::Range(0.0, 1.0));

  pls::EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score a model and write a MetricsReport JSON");
  evaluate->add_option("--model", eval.model, "PLSF model")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--dataset", eval.dataset, "PLSD dataset")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval.out, "Output report path")->required();
  evaluate->add_flag("--all", eval.all_samples, "Score every sample instead of the model's test split");
  evaluate->add_option("--name", eval.model_name, "Model name in the report");

  pls::SweepArgs sweep;
  std::uint64_t sweep_seed = 0;
  std::string sweep_config, ratio_text = "1,1.5,2,2.5,3";
  auto* secrecy = app.add_subcommand("secrecy-sweep", "Average secrecy rate versus LU-to-eavesdropper ratio");
  secrecy->add_option("--model", sweep.model, "PLSF model")->required()->check(CLI::ExistingFile);
  secrecy->add_option("--config", sweep_config, "Scenario config (JSON)")->check(CLI::ExistingFile);
  secrecy->add_option("--ratios", ratio_text, "Comma-separated, strictly increasing ratios");
  secrecy->add_option("--seeds", sweep.n_seeds, "Topologies per ratio")->check(CLI::PositiveNumber);
  auto* sweep_seed_opt = secrecy->add_option("--seed", sweep_seed, "Base seed (default: config master seed)");
  secrecy->add_option("--out", sweep.out, "Output CSV path")->required();

  pls::ReportArgs rep;
  std::string rep_out;
  auto* report = app.add_subcommand("report", "Merge MetricsReport JSONs into a Markdown table");
  report->add_option("inputs", rep.inputs, "MetricsReport JSON files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", rep_out, "Output Markdown path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (generate->parsed()) {
      if (!gen_config.empty()) gen.config = gen_config;
      if (*gen_seed_opt) gen.seed = gen_seed;
      if (!gen_dump.empty()) gen.dump_channel = gen_dump;
      const auto ds = pls::cmd_generate(gen);
      std::printf("wrote %zu samples to %s\n", ds.samples.size(), gen.out.string().c_str());
    } else if (train_rf->parsed()) {
      if (!train_grid.empty()) train.grid = train_grid;
      if (!train_report.empty()) train.out_report = train_report;
      if (*train_seed_opt) train.seed = train_seed;
      const auto outcome = pls::cmd_train_rf(train);
      print_report(outcome.report);
      std::printf("train_seconds %.3f  best n_trees=%d max_depth=%d min_samples_leaf=%d\n",
                  outcome.report.train_seconds, outcome.cv.best.n_trees, outcome.cv.best.max_depth,
                  outcome.cv.best.min_samples_leaf);
    } else if (evaluate->parsed()) {
      print_report(pls::cmd_evaluate(eval));
    } else if (secrecy->parsed()) {
      if (!sweep_config.empty()) sweep.config = sweep_config;
      if (*sweep_seed_opt) sweep.seed = sweep_seed;
      sweep.ratios = pls::parse_ratio_list(ratio_text);
      const auto curve = pls::cmd_sweep(sweep);
      std::fputs(pls::sweep_csv(curve).c_str(), stdout);
    } else if (report->parsed()) {
      if (!rep_out.empty()) rep.out = rep_out;
      const std::string table = pls::cmd_report(rep);
      if (!rep.out) std::fputs(table.c_str(), stdout);
    }
  } catch (const pls::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const pls::FormatError& e) {
    std::fprintf(stderr, "data-format error: %s\n", e.what());
    return kExitFormat;
  } catch (const pls::InvariantError& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOther;
  }
  return 0;
}
