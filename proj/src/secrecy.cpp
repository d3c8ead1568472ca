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

#include "pls/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pls/channel.hpp"
#include "pls/error.hpp"
#include "pls/features.hpp"

namespace pls {

std::size_t CapacityTable::index(int ue_id, int bs_id) const {
  if (ue_id < 0 || static_cast<std::size_t>(ue_id) >= n_nodes_) throw Error("capacity: unknown UE id " + std::to_string(ue_id));
  if (bs_id < 0 || static_cast<std::size_t>(bs_id) >= n_bs_) throw Error("capacity: unknown BS id " + std::to_string(bs_id));
  return static_cast<std::size_t>(ue_id) * n_bs_ + static_cast<std::size_t>(bs_id);
}

CapacityTable compute_capacities(const Topology& topology, const ScenarioConfig& config) {
  CapacityTable table(topology.nodes.size(), topology.base_stations.size());
  for (const auto& node : topology.nodes)
    for (const auto& bs : topology.base_stations)
      table.set(node.id, bs.id,
                capacity_bps_hz(link_sinr_db(node.tx_power_dbm, link_large_scale(node, bs, config), config.radio)));
  return table;
}

double secrecy_rate(double c_legit, double c_eaves) noexcept { return std::max(c_legit - c_eaves, 0.0); }

double link_secrecy(const Topology& topology, const CapacityTable& capacities, const EavesSet& eaves_set, int lu_id) {
  topology.node(lu_id);
  if (eaves_set.contains(lu_id)) throw Error("link_secrecy: node " + std::to_string(lu_id) + " is in the eavesdropper set");
  if (capacities.nodes() != topology.nodes.size() || capacities.base_stations() != topology.base_stations.size())
    throw Error("link_secrecy: capacity table does not cover the topology");
  int serving = 0;
  for (int b = 1; b < static_cast<int>(capacities.base_stations()); ++b)
    if (capacities.at(lu_id, b) > capacities.at(lu_id, serving)) serving = b;
  // Only eavesdroppers aimed at this link intercept it; the strongest of
  // them at the serving BS is the adversary.
  double adversary = 0.0;
  for (int e : eaves_set)
    if (topology.node(e).target_id == lu_id) adversary = std::max(adversary, capacities.at(e, serving));
  return secrecy_rate(capacities.at(lu_id, serving), adversary);
}

double average_secrecy_rate(const Topology& topology, const CapacityTable& capacities, const EavesSet& eaves_set) {
  for (int e : eaves_set) topology.node(e);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& node : topology.nodes) {
    if (eaves_set.contains(node.id)) continue;
    sum += link_secrecy(topology, capacities, eaves_set, node.id);
    ++n;
  }
  if (n == 0) throw Error("average_secrecy_rate: every node is in the eavesdropper set");
  return sum / static_cast<double>(n);
}

EavesSet true_eavesdroppers(const Topology& topology) {
  EavesSet out;
  for (const auto& node : topology.nodes)
    if (node.role == Role::kEavesdropper) out.insert(node.id);
  return out;
}

std::vector<std::uint8_t> ForestClassifier::classify(const Topology& topology, std::span<const CsiSample> samples) const {
  if (samples.size() != topology.nodes.size()) throw Error("ForestClassifier: one sample per node required");
  std::vector<std::uint8_t> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(predict(model_, extract_features(s)).label);
  return out;
}

SecrecyCurve secrecy_sweep(const ScenarioConfig& base_config, const Classifier& classifier,
                           std::span<const double> ratios, std::span<const std::uint64_t> seeds) {
  if (ratios.empty()) throw ConfigError("ratios", "at least one ratio is required");
  if (seeds.empty()) throw ConfigError("seeds", "at least one seed is required");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] > 0.0) || !std::isfinite(ratios[i])) throw ConfigError("ratios", "every ratio must be > 0");
    if (i > 0 && !(ratios[i] > ratios[i - 1])) throw ConfigError("ratios", "ratios must be strictly increasing");
  }
  const int total = base_config.n_ue();

  SecrecyCurve curve;
  curve.classifier = classifier.name();
  curve.seeds.assign(seeds.begin(), seeds.end());
  for (double ratio : ratios) {
    SweepPoint point;
    point.ratio = ratio;
    point.n_e = static_cast<int>(std::llround(total / (1.0 + ratio)));
    point.n_lu = total - point.n_e;
    point.degenerate = point.n_lu == 0 || point.n_e == 0;
    double sum_truth = 0.0, sum_pred = 0.0;
    for (std::uint64_t seed : seeds) {
      ScenarioConfig config = base_config;
      config.n_lu = point.n_lu;
      config.n_e = point.n_e;
      config.master_seed = seed;
      const Topology topology = build_topology(config);
      const CapacityTable caps = compute_capacities(topology, config);
      std::vector<CsiSample> samples;
      if (classifier.needs_samples()) samples = simulate_samples(topology, config);
      const auto labels = classifier.classify(topology, samples);
      if (labels.size() != topology.nodes.size()) throw Error("classifier returned the wrong number of labels");

      EavesSet truth = true_eavesdroppers(topology);
      EavesSet predicted;
      for (const auto& node : topology.nodes) {
        const bool p = labels[static_cast<std::size_t>(node.id)] != 0;
        const bool y = node.role == Role::kEavesdropper;
        if (p) predicted.insert(node.id);
        point.false_negatives += y && !p;
        point.false_positives += p && !y;
      }
      if (point.degenerate) {
        truth.clear();
        predicted.clear();
      }
      sum_truth += average_secrecy_rate(topology, caps, truth);
      sum_pred += predicted.size() < topology.nodes.size() ? average_secrecy_rate(topology, caps, predicted) : 0.0;
      ++point.n_seeds;
    }
    point.avg_sr_truth = sum_truth / point.n_seeds;
    point.avg_sr_predicted = sum_pred / point.n_seeds;
    curve.points.push_back(point);
  }
  return curve;
}

std::string sweep_csv(const SecrecyCurve& curve) {
  std::ostringstream out;
  out << "ratio,avg_sr_truth,avg_sr_predicted,n_seeds\n";
  char buf[128];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.6g,%.9f,%.9f,%d\n", p.ratio, p.avg_sr_truth, p.avg_sr_predicted, p.n_seeds);
    out << buf;
  }
  return out.str();
}

}  // namespace pls
