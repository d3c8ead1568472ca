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

#include "pls/scenario.hpp"

#include <cmath>
#include <limits>

#include "pls/error.hpp"
#include "pls/rng.hpp"

namespace pls {

double euclidean_distance(const Position3D& p, const Position3D& q) noexcept {
  const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

const char* to_string(Role role) noexcept {
  return role == Role::kLegitimate ? "legitimate" : "eavesdropper";
}

const UeNode& Topology::node(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes.size() || nodes[id].id != id)
    throw Error("unknown UE id " + std::to_string(id));
  return nodes[static_cast<std::size_t>(id)];
}

const BaseStation& Topology::base_station(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= base_stations.size())
    throw Error("unknown base station id " + std::to_string(id));
  return base_stations[static_cast<std::size_t>(id)];
}

int Topology::count(Role role) const noexcept {
  int n = 0;
  for (const auto& node : nodes) n += node.role == role;
  return n;
}

GridShape bs_grid_shape(int n_bs, double width_m, double depth_m) {
  GridShape best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int cols = 1; cols <= n_bs; ++cols) {
    if (n_bs % cols != 0) continue;
    const int rows = n_bs / cols;
    const double score = std::abs(std::log((width_m / cols) / (depth_m / rows)));
    if (score < best_score) {
      best_score = score;
      best = {cols, rows};
    }
  }
  return best;
}

std::vector<BaseStation> place_base_stations(const ScenarioConfig& config) {
  if (config.n_bs < 1) throw ConfigError("scenario.n_bs", "must be >= 1");
  const GridShape grid = bs_grid_shape(config.n_bs, config.width_m, config.depth_m);
  const double cell_w = config.width_m / grid.cols;
  const double cell_d = config.depth_m / grid.rows;
  if (cell_w < config.min_bs_spacing_m || cell_d < config.min_bs_spacing_m)
    throw ConfigError("scenario.area_m", "area too small for a " + std::to_string(grid.cols) + "x" +
                                             std::to_string(grid.rows) + " base-station grid");
  std::vector<BaseStation> out;
  out.reserve(static_cast<std::size_t>(config.n_bs));
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      BaseStation bs;
      bs.id = static_cast<int>(out.size());
      bs.position = {(c + 0.5) * cell_w, (r + 0.5) * cell_d, config.bs_height_m};
      bs.num_antennas = config.radio.bs_antennas;
      out.push_back(bs);
    }
  }
  return out;
}

std::vector<UeNode> place_legitimate_users(const ScenarioConfig& config) {
  std::vector<UeNode> out;
  out.reserve(static_cast<std::size_t>(std::max(config.n_lu, 0)));
  for (int i = 0; i < config.n_lu; ++i) {
    Rng rng(derive_seed(config.master_seed, Stream::kLegitimate, {static_cast<std::uint64_t>(i)}));
    UeNode node;
    node.id = i;
    node.role = Role::kLegitimate;
    node.role_index = i;
    node.position.x = rng.uniform(0.0, config.width_m);
    node.position.y = rng.uniform(0.0, config.depth_m);
    node.position.z = config.ue_height_m;
    node.tx_power_dbm = config.lu_power_dbm;
    out.push_back(node);
  }
  return out;
}

std::size_t nearest_base_station(const Position3D& p, std::span<const BaseStation> stations) {
  if (stations.empty()) throw Error("nearest_base_station: no base stations");
  std::size_t best = 0;
  double best_d = euclidean_distance(p, stations[0].position);
  for (std::size_t i = 1; i < stations.size(); ++i) {
    const double d = euclidean_distance(p, stations[i].position);
    if (d < best_d || (d == best_d && stations[i].id < stations[best].id)) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

EavesdropperPlacement place_eavesdropper(const UeNode& target, std::span<const BaseStation> stations,
                                         double alpha, double ue_height_m) {
  if (stations.empty()) throw Error("place_eavesdropper: no base stations");
  if (target.role != Role::kLegitimate) throw Error("place_eavesdropper: target must be legitimate");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("place_eavesdropper: alpha outside [0, 1]");
  const BaseStation& bs = stations[nearest_base_station(target.position, stations)];
  const Position3D& u = target.position;
  const Position3D& b = bs.position;
  EavesdropperPlacement out;
  out.unclamped = {alpha * u.x + (1.0 - alpha) * b.x, alpha * u.y + (1.0 - alpha) * b.y,
                   alpha * u.z + (1.0 - alpha) * b.z};
  out.position = out.unclamped;
  out.position.z = ue_height_m;
  out.bs_id = bs.id;
  return out;
}

double assign_eavesdropper_power(double lu_power_dbm, double gamma) {
  if (!(gamma > 1.0)) throw ConfigError("scenario.gamma_range", "eavesdropper gamma must be > 1");
  return gamma * lu_power_dbm;
}

Topology build_topology(const ScenarioConfig& config) {
  validate(config);
  Topology topo;
  topo.base_stations = place_base_stations(config);
  topo.nodes = place_legitimate_users(config);
  topo.nodes.reserve(static_cast<std::size_t>(config.n_ue()));
  for (int j = 0; j < config.n_e; ++j) {
    Rng rng(derive_seed(config.master_seed, Stream::kEavesdropper, {static_cast<std::uint64_t>(j)}));
    const auto target = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(config.n_lu)));
    const double alpha = rng.uniform(config.alpha_range.lo, config.alpha_range.hi);
    // (lo, hi]
    const double gamma =
        config.gamma_range.hi - (config.gamma_range.hi - config.gamma_range.lo) * rng.uniform();
    const auto placement =
        place_eavesdropper(topo.nodes[target], topo.base_stations, alpha, config.ue_height_m);
    UeNode node;
    node.id = config.n_lu + j;
    node.role = Role::kEavesdropper;
    node.role_index = j;
    node.target_id = topo.nodes[target].id;
    node.position = placement.position;
    node.tx_power_dbm = assign_eavesdropper_power(config.lu_power_dbm, gamma);
    topo.nodes.push_back(node);
  }
  topo.links.reserve(topo.nodes.size() * topo.base_stations.size());
  for (const auto& node : topo.nodes)
    for (const auto& bs : topo.base_stations) topo.links.push_back({node.id, bs.id});
  return topo;
}

namespace {

double round_to(double v, double quantum) { return std::round(v / quantum) * quantum; }

nlohmann::json position_json(const Position3D& p) {
  return {round_to(p.x, 1e-6), round_to(p.y, 1e-6), round_to(p.z, 1e-6)};
}

}  // namespace

nlohmann::json topology_to_json(const Topology& topology) {
  nlohmann::json bs = nlohmann::json::array();
  for (const auto& b : topology.base_stations)
    bs.push_back({{"id", b.id}, {"position", position_json(b.position)}, {"antennas", b.num_antennas}});
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : topology.nodes) {
    nodes.push_back({{"id", n.id},
                     {"role", to_string(n.role)},
                     {"position", position_json(n.position)},
                     {"tx_power_dbm", round_to(n.tx_power_dbm, 1e-3)}});
    if (n.target_id >= 0) nodes.back()["target_id"] = n.target_id;
  }
  return {{"base_stations", bs}, {"nodes", nodes}, {"num_links", topology.links.size()}};
}

}  // namespace pls
