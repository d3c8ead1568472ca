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

// Binary classification metrics. Class 1 (eavesdropper) is the positive class.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace pls {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;
  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  std::string model;
  std::array<ClassMetrics, 2> per_class;  // [0] legitimate, [1] eavesdropper
  double accuracy = 0.0;
  ConfusionMatrix confusion;
  double train_seconds = 0.0;
  // Names of metrics whose denominator was zero (reported as 0), e.g. "precision_1".
  std::vector<std::string> undefined;
};

ConfusionMatrix confusion(std::span<const std::uint8_t> predictions, std::span<const std::uint8_t> labels);

// Harmonic mean; 0 when both inputs are 0.
double f1_score(double precision, double recall) noexcept;

MetricsReport report(const ConfusionMatrix& cm, std::string model_name, double train_seconds);

inline constexpr const char* kMetricsSchema = "pls.metrics.v1";

// Fixed field names: model, precision_0, recall_0, f1_0, precision_1,
// recall_1, f1_1, accuracy, train_seconds. "schema" and "confusion" are
// optional on input.
nlohmann::json to_json(const MetricsReport& r);
MetricsReport metrics_from_json(const nlohmann::json& doc);
MetricsReport load_metrics(const std::filesystem::path& path);

// Markdown tables: the per-class layout (precision, recall, F1 per class per
// model, rows ordered DCNN 1, DCNN 2, LSTM, RF, then others), followed by
// overall accuracy and training time per model.
std::string markdown_table(std::span<const MetricsReport> reports);

}  // namespace pls
