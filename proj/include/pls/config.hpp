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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace pls {

// Radio and channel-model parameters. Defaults follow the 28 GHz indoor
// factory deployment: 120 kHz SCS, 60 RBs, 12 SRS symbols, 32 BS antennas.
struct RadioConfig {
  double carrier_hz = 28e9;
  double scs_hz = 120e3;
  double bandwidth_hz = 400e6;
  int num_rbs = 60;
  int subcarriers_per_rb = 12;
  int channel_symbols = 14;
  int srs_symbols = 12;
  int bs_antennas = 32;
  int ue_antennas = 1;
  double noise_figure_db = 5.0;
  int num_paths = 8;
  double rician_k_db = 7.0;
  double lu_speed_kmh = 3.0;
  double clutter_distance_m = 10.0;
  double shadowing_los_db = 4.0;
  double shadowing_nlos_db = 7.0;
  double delay_spread_ns = 25.0;
  // Aggregate co-channel interference added to the link SINR noise floor.
  std::optional<double> interference_dbm;

  int active_subcarriers() const noexcept { return num_rbs * subcarriers_per_rb; }
  bool operator==(const RadioConfig&) const = default;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Range&) const = default;
};

struct ScenarioConfig {
  int n_bs = 18;
  int n_lu = 325;
  int n_e = 175;
  double width_m = 180.0;
  double depth_m = 80.0;
  double bs_height_m = 8.0;
  double ue_height_m = 1.5;
  Range alpha_range{0.3, 0.7};
  Range gamma_range{1.05, 1.3};
  double lu_power_dbm = 23.0;
  double bs_power_dbm = 40.0;
  // Grid cells narrower than this are rejected.
  double min_bs_spacing_m = 1.0;
  std::uint64_t master_seed = 20250101;
  RadioConfig radio;

  int n_ue() const noexcept { return n_lu + n_e; }
  bool operator==(const ScenarioConfig&) const = default;
};

// Throws ConfigError naming the first offending field.
void validate(const ScenarioConfig& config);

// JSON layout: {"scenario": {...}, "radio": {...}}. In "scenario", the keys
// n_bs, n_lu, n_e and master_seed are required; everything else falls back
// to the defaults above. Unknown keys are rejected.
ScenarioConfig config_from_json(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ScenarioConfig& config);
nlohmann::json to_json(const RadioConfig& radio);

// CRC-32 of the compact canonical JSON, as hex.
std::string config_hash(const ScenarioConfig& config);
std::string radio_hash(const RadioConfig& radio);

}  // namespace pls
