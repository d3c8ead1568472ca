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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pls/channel.hpp"
#include "pls/config.hpp"
#include "pls/scenario.hpp"

namespace pls {

inline constexpr int kImageSize = 64;
inline constexpr int kImagePlanes = 3;
inline constexpr int kSideFeatures = 3;
inline constexpr std::size_t kImageValues = std::size_t{kImageSize} * kImageSize * kImagePlanes;

// 64 x 64 x 3 image, row-major (row, col, plane). Rows follow the subcarrier
// axis and columns the SRS-symbol axis of the estimate.
//   plane 0: mean |h| over ports
//   plane 1: phase of the port-coherent mean, (-pi, pi] -> [0, 1]
//   plane 2: standard deviation of |h| over ports
// Each plane is min-max normalized on its own; a constant plane becomes 0.
struct CsiImage {
  std::vector<float> values = std::vector<float>(kImageValues, 0.0f);

  float at(int row, int col, int plane) const {
    return values[(static_cast<std::size_t>(row) * kImageSize + col) * kImagePlanes + plane];
  }
  float& at(int row, int col, int plane) {
    return values[(static_cast<std::size_t>(row) * kImageSize + col) * kImagePlanes + plane];
  }
  bool operator==(const CsiImage&) const = default;
};

struct CsiSample {
  int ue_id = 0;
  CsiImage image;
  std::array<float, kSideFeatures> side{};  // x_norm, y_norm, power_norm
  std::uint8_t label = 0;                   // 0 legitimate, 1 eavesdropper
  bool operator==(const CsiSample&) const = default;
};

// Constants that map raw positions and powers onto [0, 1].
struct Normalization {
  double width_m = 1.0;
  double depth_m = 1.0;
  double power_min_dbm = 0.0;
  double power_max_dbm = 1.0;
  bool operator==(const Normalization&) const = default;
};

struct DatasetManifest {
  std::string scenario_hash;
  std::string radio_hash;
  std::uint64_t master_seed = 0;
  Normalization normalization;
  // Full manifest document as stored in the file.
  nlohmann::json document;
  bool operator==(const DatasetManifest&) const = default;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<CsiSample> samples;
  bool operator==(const Dataset&) const = default;
};

// Positions into Dataset::samples.
struct SplitIndex {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  double ratio = 0.8;
};

// Resamples an n-point axis onto m points by box-filter area averaging.
// Row i of the returned m x n matrix holds the input weights of output i.
std::vector<double> area_resample_weights(int n_in, int m_out);

// Uses estimates[serving_index]; every estimate must share one shape.
CsiImage build_csi_image(std::span<const CsiEstimate> estimates, std::size_t serving_index);

std::uint8_t label_of(const UeNode& node) noexcept;

// Power range [lu_power, gamma_hi * lu_power] and the area bounds.
Normalization normalization_for(const ScenarioConfig& config);
std::array<float, kSideFeatures> side_features(const UeNode& node, const Normalization& norm);

// Ground-truth channel of the node's serving link (strongest BS by large-scale
// gain), drawn from the same streams simulate_sample uses.
ChannelRealization serving_channel(const UeNode& node, const Topology& topology, const ScenarioConfig& config,
                                   std::span<const LargeScale> large_scale_row);

// Simulates the serving link of one node: channel, SRS through AWGN, LS
// estimate, image. The serving BS is the strongest by large-scale gain.
CsiSample simulate_sample(const UeNode& node, const Topology& topology, const ScenarioConfig& config,
                          std::span<const LargeScale> large_scale_row, const Normalization& norm);

// One sample per node of an existing topology, in node-id order.
std::vector<CsiSample> simulate_samples(const Topology& topology, const ScenarioConfig& config);

Dataset generate_dataset(const ScenarioConfig& config);

// "PLSD" container; see docs/formats.md for the byte layout.
std::vector<std::uint8_t> serialize_dataset(const Dataset& ds);
Dataset parse_dataset(std::span<const std::uint8_t> bytes);
void write_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

// Stratified shuffle split; ratio is the train fraction, in (0, 1).
SplitIndex split_dataset(const Dataset& ds, double ratio, std::uint64_t seed);
SplitIndex split_labels(std::span<const std::uint8_t> labels, double ratio, std::uint64_t seed);

}  // namespace pls
