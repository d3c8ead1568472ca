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

// Per-link and average secrecy rates, under ground truth and under a
// classifier's eavesdropper predictions, and the LU-to-E ratio sweep.

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pls/config.hpp"
#include "pls/dataset.hpp"
#include "pls/forest.hpp"
#include "pls/scenario.hpp"

namespace pls {

// Dense [ue_id][bs_id] spectral efficiencies in bits/s/Hz.
class CapacityTable {
 public:
  CapacityTable() = default;
  CapacityTable(std::size_t n_nodes, std::size_t n_bs) : n_nodes_(n_nodes), n_bs_(n_bs), values_(n_nodes * n_bs, 0.0) {}

  double at(int ue_id, int bs_id) const { return values_[index(ue_id, bs_id)]; }
  void set(int ue_id, int bs_id, double value) { values_[index(ue_id, bs_id)] = value; }
  std::size_t nodes() const noexcept { return n_nodes_; }
  std::size_t base_stations() const noexcept { return n_bs_; }
  // Adds delta to every entry.
  void shift(double delta) {
    for (auto& v : values_) v += delta;
  }

 private:
  std::size_t index(int ue_id, int bs_id) const;
  std::size_t n_nodes_ = 0;
  std::size_t n_bs_ = 0;
  std::vector<double> values_;
};

using EavesSet = std::set<int>;

// capacity_bps_hz(link_sinr_db(...)) for every link.
CapacityTable compute_capacities(const Topology& topology, const ScenarioConfig& config);

// [c_l - c_e]^+
double secrecy_rate(double c_legit, double c_eaves) noexcept;

// Serving BS = argmax_b C(lu, b) (ties to the lowest id); adversary = the
// strongest member of eaves_set whose target_id is lu_id, measured at that BS
// (none when no such member exists). Members of eaves_set that target no one
// (legitimate users flagged by a classifier) leave the averaged set but
// intercept nothing.
double link_secrecy(const Topology& topology, const CapacityTable& capacities, const EavesSet& eaves_set, int lu_id);

// Mean link_secrecy over every node outside eaves_set.
double average_secrecy_rate(const Topology& topology, const CapacityTable& capacities, const EavesSet& eaves_set);

EavesSet true_eavesdroppers(const Topology& topology);

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string name() const = 0;
  // Whether classify() reads the simulated CSI samples; if not, the sweep
  // skips the SRS simulation.
  virtual bool needs_samples() const { return true; }
  // One label per node (node-id order); `samples` is empty when
  // needs_samples() is false.
  virtual std::vector<std::uint8_t> classify(const Topology& topology, std::span<const CsiSample> samples) const = 0;
};

class ForestClassifier final : public Classifier {
 public:
  explicit ForestClassifier(ForestModel model, std::string name = "RF")
      : model_(std::move(model)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  std::vector<std::uint8_t> classify(const Topology& topology, std::span<const CsiSample> samples) const override;

 private:
  ForestModel model_;
  std::string name_;
};

struct SweepPoint {
  double ratio = 0.0;
  int n_lu = 0;
  int n_e = 0;
  double avg_sr_truth = 0.0;
  double avg_sr_predicted = 0.0;
  int n_seeds = 0;
  // Summed over seeds.
  std::uint64_t false_negatives = 0;
  std::uint64_t false_positives = 0;
  bool degenerate = false;
};

struct SecrecyCurve {
  std::vector<SweepPoint> points;
  std::vector<std::uint64_t> seeds;
  std::string classifier;
};

// For each ratio (strictly increasing, > 0) the total UE count of base_config
// is split into n_e = round(N / (1 + ratio)) eavesdroppers and the rest
// legitimate, then topology, capacities and classifier predictions are
// regenerated per seed and averaged.
SecrecyCurve secrecy_sweep(const ScenarioConfig& base_config, const Classifier& classifier,
                           std::span<const double> ratios, std::span<const std::uint64_t> seeds);

// ratio,avg_sr_truth,avg_sr_predicted,n_seeds
std::string sweep_csv(const SecrecyCurve& curve);

}  // namespace pls
