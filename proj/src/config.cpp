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

#include "pls/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "pls/checksum.hpp"
#include "pls/error.hpp"

namespace pls {

using nlohmann::json;

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

bool finite_range(const Range& r) { return std::isfinite(r.lo) && std::isfinite(r.hi); }

template <class T>
void read_opt(const json& obj, const char* key, const std::string& prefix, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(prefix + key, "has the wrong type");
  }
}

template <class T>
void read_req(const json& obj, const char* key, const std::string& prefix, T& out) {
  if (!obj.contains(key)) throw ConfigError(prefix + key, "required field is missing");
  read_opt(obj, key, prefix, out);
}

void read_range(const json& obj, const char* key, const std::string& prefix, Range& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
    throw ConfigError(prefix + key, "expected [lo, hi]");
  out = {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw ConfigError(prefix + key, "unknown field");
  }
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.n_bs >= 1, "scenario.n_bs", "must be >= 1");
  require(c.n_lu >= 0, "scenario.n_lu", "must be >= 0");
  require(c.n_e >= 0, "scenario.n_e", "must be >= 0");
  require(c.n_ue() >= 1, "scenario.n_lu", "n_lu + n_e must be >= 1");
  require(c.n_e == 0 || c.n_lu >= 1, "scenario.n_lu", "eavesdroppers need at least one legitimate target");
  require(std::isfinite(c.width_m) && c.width_m > 0, "scenario.area_m", "width must be > 0");
  require(std::isfinite(c.depth_m) && c.depth_m > 0, "scenario.area_m", "depth must be > 0");
  require(std::isfinite(c.bs_height_m) && c.bs_height_m >= 0, "scenario.bs_height_m", "must be >= 0");
  require(std::isfinite(c.ue_height_m) && c.ue_height_m >= 0, "scenario.ue_height_m", "must be >= 0");
  require(finite_range(c.alpha_range) && c.alpha_range.lo > 0 && c.alpha_range.hi < 1 &&
              c.alpha_range.lo <= c.alpha_range.hi,
          "scenario.alpha_range", "must satisfy 0 < lo <= hi < 1");
  require(finite_range(c.gamma_range) && c.gamma_range.lo >= 1 && c.gamma_range.lo <= c.gamma_range.hi,
          "scenario.gamma_range", "must satisfy 1 <= lo <= hi");
  require(c.n_e == 0 || c.gamma_range.lo > 1, "scenario.gamma_range",
          "lo must be > 1 when eavesdroppers are present");
  require(c.n_e == 0 || c.gamma_range.hi > c.gamma_range.lo, "scenario.gamma_range",
          "hi must be > lo when eavesdroppers are present");
  require(std::isfinite(c.lu_power_dbm) && c.lu_power_dbm > 0, "scenario.lu_power_dbm",
          "must be > 0 dBm (eavesdropper power scales it multiplicatively)");
  require(std::isfinite(c.bs_power_dbm), "scenario.bs_power_dbm", "must be finite");
  require(std::isfinite(c.min_bs_spacing_m) && c.min_bs_spacing_m > 0, "scenario.min_bs_spacing_m",
          "must be > 0");

  const RadioConfig& r = c.radio;
  require(r.carrier_hz > 0, "radio.carrier_hz", "must be > 0");
  require(r.scs_hz > 0, "radio.scs_hz", "must be > 0");
  require(r.bandwidth_hz > 0, "radio.bandwidth_hz", "must be > 0");
  require(r.num_rbs >= 1, "radio.num_rbs", "must be >= 1");
  require(r.subcarriers_per_rb >= 1, "radio.subcarriers_per_rb", "must be >= 1");
  require(r.channel_symbols >= 1, "radio.channel_symbols", "must be >= 1");
  require(r.srs_symbols >= 1 && r.srs_symbols <= r.channel_symbols, "radio.srs_symbols",
          "must be in [1, channel_symbols]");
  require(r.bs_antennas >= 1, "radio.bs_antennas", "must be >= 1");
  require(r.ue_antennas == 1, "radio.ue_antennas", "only single-antenna UEs are modelled");
  require(std::isfinite(r.noise_figure_db), "radio.noise_figure_db", "must be finite");
  require(r.num_paths >= 0, "radio.num_paths", "must be >= 0");
  require(std::isfinite(r.rician_k_db), "radio.rician_k_db", "must be finite");
  require(r.lu_speed_kmh >= 0, "radio.lu_speed_kmh", "must be >= 0");
  require(r.clutter_distance_m > 0, "radio.clutter_distance_m", "must be > 0");
  require(r.shadowing_los_db >= 0, "radio.shadowing_los_db", "must be >= 0");
  require(r.shadowing_nlos_db >= 0, "radio.shadowing_nlos_db", "must be >= 0");
  require(r.delay_spread_ns >= 0, "radio.delay_spread_ns", "must be >= 0");
  require(!r.interference_dbm || std::isfinite(*r.interference_dbm), "radio.interference_dbm",
          "must be finite");
}

ScenarioConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  reject_unknown(doc, {"scenario", "radio"}, "");
  if (!doc.contains("scenario")) throw ConfigError("scenario", "required section is missing");
  const json& s = doc.at("scenario");
  if (!s.is_object()) throw ConfigError("scenario", "must be an object");
  reject_unknown(s,
                 {"n_bs", "n_lu", "n_e", "area_m", "bs_height_m", "ue_height_m", "alpha_range",
                  "gamma_range", "lu_power_dbm", "bs_power_dbm", "min_bs_spacing_m", "master_seed"},
                 "scenario.");
  ScenarioConfig c;
  const std::string sp = "scenario.";
  read_req(s, "n_bs", sp, c.n_bs);
  read_req(s, "n_lu", sp, c.n_lu);
  read_req(s, "n_e", sp, c.n_e);
  read_req(s, "master_seed", sp, c.master_seed);
  Range area{c.width_m, c.depth_m};
  read_range(s, "area_m", sp, area);
  c.width_m = area.lo;
  c.depth_m = area.hi;
  read_opt(s, "bs_height_m", sp, c.bs_height_m);
  read_opt(s, "ue_height_m", sp, c.ue_height_m);
  read_range(s, "alpha_range", sp, c.alpha_range);
  read_range(s, "gamma_range", sp, c.gamma_range);
  read_opt(s, "lu_power_dbm", sp, c.lu_power_dbm);
  read_opt(s, "bs_power_dbm", sp, c.bs_power_dbm);
  read_opt(s, "min_bs_spacing_m", sp, c.min_bs_spacing_m);

  if (auto it = doc.find("radio"); it != doc.end()) {
    const json& r = *it;
    if (!r.is_object()) throw ConfigError("radio", "must be an object");
    reject_unknown(r,
                   {"carrier_hz", "scs_hz", "bandwidth_hz", "num_rbs", "subcarriers_per_rb",
                    "channel_symbols", "srs_symbols", "bs_antennas", "ue_antennas",
                    "noise_figure_db", "num_paths", "rician_k_db", "lu_speed_kmh",
                    "clutter_distance_m", "shadowing_los_db", "shadowing_nlos_db",
                    "delay_spread_ns", "interference_dbm"},
                   "radio.");
    const std::string rp = "radio.";
    RadioConfig& rc = c.radio;
    read_opt(r, "carrier_hz", rp, rc.carrier_hz);
    read_opt(r, "scs_hz", rp, rc.scs_hz);
    read_opt(r, "bandwidth_hz", rp, rc.bandwidth_hz);
    read_opt(r, "num_rbs", rp, rc.num_rbs);
    read_opt(r, "subcarriers_per_rb", rp, rc.subcarriers_per_rb);
    read_opt(r, "channel_symbols", rp, rc.channel_symbols);
    read_opt(r, "srs_symbols", rp, rc.srs_symbols);
    read_opt(r, "bs_antennas", rp, rc.bs_antennas);
    read_opt(r, "ue_antennas", rp, rc.ue_antennas);
    read_opt(r, "noise_figure_db", rp, rc.noise_figure_db);
    read_opt(r, "num_paths", rp, rc.num_paths);
    read_opt(r, "rician_k_db", rp, rc.rician_k_db);
    read_opt(r, "lu_speed_kmh", rp, rc.lu_speed_kmh);
    read_opt(r, "clutter_distance_m", rp, rc.clutter_distance_m);
    read_opt(r, "shadowing_los_db", rp, rc.shadowing_los_db);
    read_opt(r, "shadowing_nlos_db", rp, rc.shadowing_nlos_db);
    read_opt(r, "delay_spread_ns", rp, rc.delay_spread_ns);
    if (auto jt = r.find("interference_dbm"); jt != r.end() && !jt->is_null()) {
      double v = 0;
      read_opt(r, "interference_dbm", rp, v);
      rc.interference_dbm = v;
    }
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

json to_json(const RadioConfig& r) {
  json j = {{"carrier_hz", r.carrier_hz},
            {"scs_hz", r.scs_hz},
            {"bandwidth_hz", r.bandwidth_hz},
            {"num_rbs", r.num_rbs},
            {"subcarriers_per_rb", r.subcarriers_per_rb},
            {"channel_symbols", r.channel_symbols},
            {"srs_symbols", r.srs_symbols},
            {"bs_antennas", r.bs_antennas},
            {"ue_antennas", r.ue_antennas},
            {"noise_figure_db", r.noise_figure_db},
            {"num_paths", r.num_paths},
            {"rician_k_db", r.rician_k_db},
            {"lu_speed_kmh", r.lu_speed_kmh},
            {"clutter_distance_m", r.clutter_distance_m},
            {"shadowing_los_db", r.shadowing_los_db},
            {"shadowing_nlos_db", r.shadowing_nlos_db},
            {"delay_spread_ns", r.delay_spread_ns},
            {"interference_dbm", nullptr}};
  if (r.interference_dbm) j["interference_dbm"] = *r.interference_dbm;
  return j;
}

json to_json(const ScenarioConfig& c) {
  return {{"scenario",
           {{"n_bs", c.n_bs},
            {"n_lu", c.n_lu},
            {"n_e", c.n_e},
            {"area_m", {c.width_m, c.depth_m}},
            {"bs_height_m", c.bs_height_m},
            {"ue_height_m", c.ue_height_m},
            {"alpha_range", {c.alpha_range.lo, c.alpha_range.hi}},
            {"gamma_range", {c.gamma_range.lo, c.gamma_range.hi}},
            {"lu_power_dbm", c.lu_power_dbm},
            {"bs_power_dbm", c.bs_power_dbm},
            {"min_bs_spacing_m", c.min_bs_spacing_m},
            {"master_seed", c.master_seed}}},
          {"radio", to_json(c.radio)}};
}

std::string config_hash(const ScenarioConfig& config) { return hex32(crc32(to_json(config).dump())); }
std::string radio_hash(const RadioConfig& radio) { return hex32(crc32(to_json(radio).dump())); }

}  // namespace pls
