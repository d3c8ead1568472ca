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

// Frequency-domain uplink channel model for SRS-based CSI acquisition.
//
// Large scale: simplified indoor-factory path loss (LOS / NLOS), LOS
// probability exp(-d / d_clutter), log-normal shadowing.
// Small scale: num_paths discrete paths with exponential delay profile,
// per-path Doppler applied as a per-symbol phase rotation, and a
// half-wavelength ULA steering vector across the BS ports. The first path is
// a Rician LOS component when the link is LOS.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "pls/config.hpp"
#include "pls/rng.hpp"
#include "pls/scenario.hpp"

namespace pls {

using cf32 = std::complex<float>;

// Dense [subcarrier][symbol][port] tensor, row-major.
class ComplexTensor {
 public:
  ComplexTensor() = default;
  ComplexTensor(int subcarriers, int symbols, int ports)
      : subcarriers_(subcarriers), symbols_(symbols), ports_(ports),
        data_(static_cast<std::size_t>(subcarriers) * symbols * ports) {}

  int subcarriers() const noexcept { return subcarriers_; }
  int symbols() const noexcept { return symbols_; }
  int ports() const noexcept { return ports_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool same_shape(const ComplexTensor& o) const noexcept {
    return subcarriers_ == o.subcarriers_ && symbols_ == o.symbols_ && ports_ == o.ports_;
  }

  cf32& at(int k, int s, int a) { return data_[offset(k, s) + static_cast<std::size_t>(a)]; }
  const cf32& at(int k, int s, int a) const { return data_[offset(k, s) + static_cast<std::size_t>(a)]; }
  // The `ports` entries of resource element (k, s).
  cf32* ports_at(int k, int s) { return data_.data() + offset(k, s); }
  const cf32* ports_at(int k, int s) const { return data_.data() + offset(k, s); }

  std::span<cf32> data() noexcept { return data_; }
  std::span<const cf32> data() const noexcept { return data_; }
  bool operator==(const ComplexTensor&) const = default;

 private:
  std::size_t offset(int k, int s) const noexcept {
    return (static_cast<std::size_t>(k) * symbols_ + static_cast<std::size_t>(s)) * ports_;
  }
  int subcarriers_ = 0;
  int symbols_ = 0;
  int ports_ = 0;
  std::vector<cf32> data_;
};

// [subcarrier][symbol] grid of pilot symbols.
struct PilotGrid {
  int subcarriers = 0;
  int symbols = 0;
  std::vector<cf32> values;
  cf32 at(int k, int s) const { return values[static_cast<std::size_t>(k) * symbols + s]; }
  cf32& at(int k, int s) { return values[static_cast<std::size_t>(k) * symbols + s]; }
};

struct LargeScale {
  double distance_m = 0.0;
  bool los = false;
  double path_loss_db = 0.0;
  double shadowing_db = 0.0;
  // -(path loss + shadowing)
  double gain_db() const noexcept { return -(path_loss_db + shadowing_db); }
};

struct ChannelRealization {
  Link link;
  ComplexTensor h;
  double mean_gain_db = 0.0;  // configured large-scale gain of the link
};

struct ReceivedGrid {
  Link link;
  ComplexTensor y;
  double snr_db = 0.0;           // realized; +inf when noise is disabled
  double noise_power_mw = 0.0;   // N0 per resource element
};

struct CsiEstimate {
  Link link;
  ComplexTensor h_hat;
  std::optional<double> nmse;  // only when ground truth was supplied
};

struct TransmitOptions {
  bool add_noise = true;
};

// LOS: 31.84 + 21.5 log10(d) + 19 log10(f_GHz)
// NLOS: max(LOS, 33 + 25.5 log10(d) + 20 log10(f_GHz))
double path_loss_db(double distance_m, double carrier_hz, bool los);

double los_probability(double distance_m, double clutter_distance_m) noexcept;

LargeScale draw_large_scale(double distance_m, const RadioConfig& radio, Rng& rng);

// Seeded from (master_seed, node role/index, bs id); identical for every
// caller that asks about the same link.
LargeScale link_large_scale(const UeNode& node, const BaseStation& bs, const ScenarioConfig& config);

// [node id][bs id] for every link of the topology.
std::vector<std::vector<LargeScale>> large_scale_table(const Topology& topology,
                                                       const ScenarioConfig& config);

// Strongest base station by large-scale gain; ties go to the lowest id.
int serving_bs(std::span<const LargeScale> per_bs);

std::uint64_t node_stream_key(const UeNode& node) noexcept;

ChannelRealization generate_channel(const Link& link, const Topology& topology, const RadioConfig& radio,
                                    const LargeScale& large_scale, Rng& rng);

// Zadoff-Chu sequence over the active subcarriers (largest prime length not
// above the subcarrier count, cyclically extended), root 1 + ue_id mod (N-1).
// Identical on every SRS symbol.
PilotGrid srs_sequence(const RadioConfig& radio, int ue_id);

double noise_power_per_re_mw(const RadioConfig& radio) noexcept;

ReceivedGrid transmit_srs(const ChannelRealization& channel, const PilotGrid& srs, double tx_power_dbm,
                          const RadioConfig& radio, Rng& rng, TransmitOptions options = {});

// Least-squares per resource element: h_hat = y / (sqrt(P) x).
CsiEstimate estimate_csi(const ReceivedGrid& rx, const PilotGrid& srs, double tx_power_dbm,
                         const ComplexTensor* truth = nullptr);

// tx - PL - shadowing + 10 log10(bs_antennas) against the thermal floor over
// the full bandwidth (plus optional aggregate interference).
double link_sinr_db(double tx_power_dbm, const LargeScale& large_scale, const RadioConfig& radio);
double link_sinr_db(const Link& link, const Topology& topology, const ScenarioConfig& config);

// Shannon spectral efficiency log2(1 + SINR).
double capacity_bps_hz(double sinr_db) noexcept;

// Debug dump: "CSIT", u32 rank (3), u32 dims, then float32 LE re/im pairs.
void write_channel_tensor(const std::filesystem::path& path, const ComplexTensor& tensor);
ComplexTensor read_channel_tensor(const std::filesystem::path& path);

}  // namespace pls
