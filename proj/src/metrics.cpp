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

#include "pls/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pls/error.hpp"

namespace pls {

ConfusionMatrix confusion(std::span<const std::uint8_t> predictions, std::span<const std::uint8_t> labels) {
  if (predictions.size() != labels.size()) throw Error("confusion: predictions and labels differ in length");
  if (predictions.empty()) throw Error("confusion: no samples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predictions[i] != 0, y = labels[i] != 0;
    if (p && y) ++cm.tp;
    else if (p) ++cm.fp;
    else if (y) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

double f1_score(double precision, double recall) noexcept {
  return precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

MetricsReport report(const ConfusionMatrix& cm, std::string model_name, double train_seconds) {
  if (cm.total() == 0) throw Error("report: empty confusion matrix");
  MetricsReport r;
  r.model = std::move(model_name);
  r.confusion = cm;
  r.train_seconds = std::max(train_seconds, 0.0);
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());

  // correct / predicted and correct / actual for each class.
  const std::array<std::uint64_t, 2> correct{cm.tn, cm.tp};
  const std::array<std::uint64_t, 2> predicted{cm.tn + cm.fn, cm.tp + cm.fp};
  const std::array<std::uint64_t, 2> actual{cm.tn + cm.fp, cm.tp + cm.fn};
  for (int c = 0; c < 2; ++c) {
    auto& m = r.per_class[static_cast<std::size_t>(c)];
    if (predicted[c] > 0) m.precision = static_cast<double>(correct[c]) / static_cast<double>(predicted[c]);
    else r.undefined.push_back("precision_" + std::to_string(c));
    if (actual[c] > 0) m.recall = static_cast<double>(correct[c]) / static_cast<double>(actual[c]);
    else r.undefined.push_back("recall_" + std::to_string(c));
    m.f1 = f1_score(m.precision, m.recall);
  }
  return r;
}

nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json j = {{"schema", kMetricsSchema},
                      {"model", r.model},
                      {"precision_0", r.per_class[0].precision},
                      {"recall_0", r.per_class[0].recall},
                      {"f1_0", r.per_class[0].f1},
                      {"precision_1", r.per_class[1].precision},
                      {"recall_1", r.per_class[1].recall},
                      {"f1_1", r.per_class[1].f1},
                      {"accuracy", r.accuracy},
                      {"train_seconds", r.train_seconds},
                      {"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"tn", r.confusion.tn}, {"fn", r.confusion.fn}}}};
  if (!r.undefined.empty()) j["undefined_metrics"] = r.undefined;
  return j;
}

MetricsReport metrics_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("report", "must be a JSON object");
  if (auto it = doc.find("schema"); it != doc.end() && *it != kMetricsSchema)
    throw FormatError("schema", "unsupported schema " + it->dump());
  MetricsReport r;
  auto number = [&](const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_number()) throw FormatError(key, "missing or not a number");
    return it->get<double>();
  };
  auto it = doc.find("model");
  if (it == doc.end() || !it->is_string()) throw FormatError("model", "missing or not a string");
  r.model = it->get<std::string>();
  for (int c = 0; c < 2; ++c) {
    const std::string suffix = "_" + std::to_string(c);
    auto& m = r.per_class[static_cast<std::size_t>(c)];
    m.precision = number(("precision" + suffix).c_str());
    m.recall = number(("recall" + suffix).c_str());
    m.f1 = number(("f1" + suffix).c_str());
  }
  r.accuracy = number("accuracy");
  r.train_seconds = number("train_seconds");
  if (auto c = doc.find("confusion"); c != doc.end()) {
    try {
      r.confusion = {c->at("tp").get<std::uint64_t>(), c->at("fp").get<std::uint64_t>(),
                     c->at("tn").get<std::uint64_t>(), c->at("fn").get<std::uint64_t>()};
    } catch (const nlohmann::json::exception&) {
      throw FormatError("confusion", "malformed");
    }
  }
  if (auto u = doc.find("undefined_metrics"); u != doc.end() && u->is_array())
    for (const auto& v : *u) r.undefined.push_back(v.get<std::string>());
  return r;
}

MetricsReport load_metrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("report", "cannot open " + path.string());
  try {
    return metrics_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error&) {
    throw FormatError("report", "invalid JSON in " + path.string());
  }
}

namespace {

std::string canonical_name(const std::string& name) {
  std::string out;
  for (char c : name)
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

int table_rank(const std::string& name) {
  const std::string key = canonical_name(name);
  if (key == "dcnn1") return 0;
  if (key == "dcnn2") return 1;
  if (key == "lstm") return 2;
  if (key == "rf" || key == "randomforest") return 3;
  return 4;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string markdown_table(std::span<const MetricsReport> reports) {
  std::vector<const MetricsReport*> rows;
  for (const auto& r : reports) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const MetricsReport* a, const MetricsReport* b) { return table_rank(a->model) < table_rank(b->model); });
  std::ostringstream out;
  out << "| Model | Class | Precision | Recall | F1-Score |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto* r : rows) {
    out << "| " << r->model << " | Not eavesdropper | " << fmt2(r->per_class[0].precision) << " | "
        << fmt2(r->per_class[0].recall) << " | " << fmt2(r->per_class[0].f1) << " |\n";
    out << "|  | Eavesdropper | " << fmt2(r->per_class[1].precision) << " | " << fmt2(r->per_class[1].recall)
        << " | " << fmt2(r->per_class[1].f1) << " |\n";
  }
  out << "\n| Model | Accuracy | Train (s) |\n";
  out << "|---|---|---|\n";
  for (const auto* r : rows) out << "| " << r->model << " | " << fmt2(r->accuracy) << " | " << fmt2(r->train_seconds) << " |\n";
  return out.str();
}

}  // namespace pls
