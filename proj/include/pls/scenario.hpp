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

// Cell-free indoor-factory topology: base stations on a grid, legitimate UEs
// uniformly placed, eavesdroppers interpolated between a victim UE and its
// nearest base station and transmitting at a scaled power.

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "pls/config.hpp"

namespace pls {

struct Position3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Position3D&) const = default;
};

double euclidean_distance(const Position3D& p, const Position3D& q) noexcept;

enum class Role : std::uint8_t { kLegitimate = 0, kEavesdropper = 1 };

const char* to_string(Role role) noexcept;

struct UeNode {
  int id = 0;
  Role role = Role::kLegitimate;
  Position3D position;
  double tx_power_dbm = 0.0;
  // Index within its role group; keys the node's random streams so a node's
  // draws do not depend on how many nodes of the other role exist.
  int role_index = 0;
  // Eavesdroppers: id of the legitimate user whose link they were placed to
  // intercept; -1 for legitimate users.
  int target_id = -1;
  bool operator==(const UeNode&) const = default;
};

struct BaseStation {
  int id = 0;
  Position3D position;
  int num_antennas = 1;
  bool operator==(const BaseStation&) const = default;
};

struct Link {
  int ue_id = 0;
  int bs_id = 0;
  bool operator==(const Link&) const = default;
};

// Node ids are 0..n-1 (legitimate first, then eavesdroppers) and base-station
// ids are 0..n_bs-1, so both double as vector indices.
struct Topology {
  std::vector<BaseStation> base_stations;
  std::vector<UeNode> nodes;
  std::vector<Link> links;

  const UeNode& node(int id) const;
  const BaseStation& base_station(int id) const;
  int count(Role role) const noexcept;
  bool operator==(const Topology&) const = default;
};

struct GridShape {
  int cols = 1;
  int rows = 1;
};

// Factor pair cols x rows = n_bs whose cells are closest to square; ties go to
// fewer columns.
GridShape bs_grid_shape(int n_bs, double width_m, double depth_m);

std::vector<BaseStation> place_base_stations(const ScenarioConfig& config);
std::vector<UeNode> place_legitimate_users(const ScenarioConfig& config);

// Index of the closest base station; ties go to the lowest id.
std::size_t nearest_base_station(const Position3D& p, std::span<const BaseStation> stations);

struct EavesdropperPlacement {
  Position3D unclamped;  // alpha * UE + (1 - alpha) * BS
  Position3D position;   // unclamped with z set to the UE antenna height
  int bs_id = 0;
};

// alpha in [0, 1]; lower alpha places the eavesdropper closer to the BS.
EavesdropperPlacement place_eavesdropper(const UeNode& target, std::span<const BaseStation> stations,
                                         double alpha, double ue_height_m);

// gamma * P_LU, taken literally in the dBm domain. Requires gamma > 1.
double assign_eavesdropper_power(double lu_power_dbm, double gamma);

Topology build_topology(const ScenarioConfig& config);

// ids, roles, positions rounded to 1e-6 m and powers to 1e-3 dBm.
nlohmann::json topology_to_json(const Topology& topology);

}  // namespace pls
