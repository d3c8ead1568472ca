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

#include "pls/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "binio.hpp"
#include "pls/error.hpp"
#include "pls/simd/kernels.hpp"

namespace pls {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kThermalDbmPerHz = -174.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

cf32 polar_f(double magnitude, double phase) {
  return {static_cast<float>(magnitude * std::cos(phase)), static_cast<float>(magnitude * std::sin(phase))};
}

struct Path {
  double delay_s = 0.0;
  double doppler_hz = 0.0;
  double array_cos = 0.0;  // cosine of the angle to the array axis
  std::complex<double> gain;
};

}  // namespace

double path_loss_db(double distance_m, double carrier_hz, bool los) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m))
    throw Error("path_loss_db: distance must be > 0");
  const double f_ghz = carrier_hz / 1e9;
  const double pl_los = 31.84 + 21.5 * std::log10(distance_m) + 19.0 * std::log10(f_ghz);
  if (los) return pl_los;
  const double pl_nlos = 33.0 + 25.5 * std::log10(distance_m) + 20.0 * std::log10(f_ghz);
  return std::max(pl_los, pl_nlos);
}

double los_probability(double distance_m, double clutter_distance_m) noexcept {
  return std::exp(-distance_m / clutter_distance_m);
}

LargeScale draw_large_scale(double distance_m, const RadioConfig& radio, Rng& rng) {
  LargeScale out;
  out.distance_m = distance_m;
  out.los = rng.uniform() < los_probability(distance_m, radio.clutter_distance_m);
  const double sigma = out.los ? radio.shadowing_los_db : radio.shadowing_nlos_db;
  out.shadowing_db = sigma * rng.normal();
  out.path_loss_db = path_loss_db(distance_m, radio.carrier_hz, out.los);
  return out;
}

std::uint64_t node_stream_key(const UeNode& node) noexcept {
  return (static_cast<std::uint64_t>(node.role) << 32) | static_cast<std::uint32_t>(node.role_index);
}

LargeScale link_large_scale(const UeNode& node, const BaseStation& bs, const ScenarioConfig& config) {
  Rng rng(derive_seed(config.master_seed, Stream::kLargeScale,
                      {node_stream_key(node), static_cast<std::uint64_t>(bs.id)}));
  return draw_large_scale(euclidean_distance(node.position, bs.position), config.radio, rng);
}

std::vector<std::vector<LargeScale>> large_scale_table(const Topology& topology,
                                                       const ScenarioConfig& config) {
  std::vector<std::vector<LargeScale>> table(topology.nodes.size());
  for (const auto& node : topology.nodes) {
    auto& row = table[static_cast<std::size_t>(node.id)];
    row.reserve(topology.base_stations.size());
    for (const auto& bs : topology.base_stations) row.push_back(link_large_scale(node, bs, config));
  }
  return table;
}

int serving_bs(std::span<const LargeScale> per_bs) {
  if (per_bs.empty()) throw Error("serving_bs: no base stations");
  int best = 0;
  for (std::size_t b = 1; b < per_bs.size(); ++b)
    if (per_bs[b].gain_db() > per_bs[static_cast<std::size_t>(best)].gain_db()) best = static_cast<int>(b);
  return best;
}

ChannelRealization generate_channel(const Link& link, const Topology& topology, const RadioConfig& radio,
                                    const LargeScale& large_scale, Rng& rng) {
  const UeNode& ue = topology.node(link.ue_id);
  const BaseStation& bs = topology.base_station(link.bs_id);
  const int K = radio.active_subcarriers();
  const int S = radio.srs_symbols;
  const int A = radio.bs_antennas;

  ChannelRealization out;
  out.link = link;
  out.mean_gain_db = large_scale.gain_db();
  out.h = ComplexTensor(K, S, A);
  const int P = radio.num_paths;
  if (P == 0) return out;

  // Path delays: LOS at the geometric delay, the rest exponentially spread.
  std::vector<double> excess(static_cast<std::size_t>(P), 0.0);
  const double spread_s = radio.delay_spread_ns * 1e-9;
  for (int p = 1; p < P; ++p) excess[p] = -spread_s * std::log(1.0 - rng.uniform());
  std::sort(excess.begin(), excess.end());

  std::vector<double> power(static_cast<std::size_t>(P));
  for (int p = 0; p < P; ++p) power[p] = spread_s > 0 ? std::exp(-excess[p] / spread_s) : 1.0;
  const bool rician = large_scale.los;
  const double k_lin = db_to_lin(radio.rician_k_db);
  {
    const std::size_t first_scattered = rician ? 1 : 0;
    double total = 0.0;
    for (std::size_t p = first_scattered; p < power.size(); ++p) total += power[p];
    const double scattered_share = rician ? (P > 1 ? 1.0 / (k_lin + 1.0) : 0.0) : 1.0;
    for (std::size_t p = first_scattered; p < power.size(); ++p)
      power[p] = total > 0 ? power[p] / total * scattered_share : 0.0;
    if (rician) power[0] = P > 1 ? k_lin / (k_lin + 1.0) : 1.0;
  }

  const double amplitude = std::sqrt(db_to_lin(large_scale.gain_db()));
  const double geometric_delay = large_scale.distance_m / kSpeedOfLight;
  const double max_doppler = radio.lu_speed_kmh / 3.6 * radio.carrier_hz / kSpeedOfLight;
  const double dx = ue.position.x - bs.position.x;
  const double dy = ue.position.y - bs.position.y;
  const double horizontal = std::hypot(dx, dy);
  const double los_cos = horizontal > 0 ? dx / horizontal : 0.0;

  std::vector<Path> paths(static_cast<std::size_t>(P));
  for (int p = 0; p < P; ++p) {
    Path& path = paths[p];
    path.delay_s = geometric_delay + excess[p];
    path.doppler_hz = max_doppler * std::cos(kTwoPi * rng.uniform());
    if (p == 0 && rician) {
      path.array_cos = los_cos;
      const double phase = -kTwoPi * std::fmod(radio.carrier_hz * geometric_delay, 1.0);
      path.gain = std::polar(amplitude * std::sqrt(power[p]), phase);
    } else {
      path.array_cos = std::cos(kTwoPi * rng.uniform());
      const double re = rng.normal(), im = rng.normal();
      path.gain = amplitude * std::sqrt(power[p] / 2.0) * std::complex<double>(re, im);
    }
  }

  // One OFDM symbol of the configured numerology (slot of channel_symbols).
  const double symbol_s = (1e-3 * 15e3 / radio.scs_hz) / radio.channel_symbols;
  const double center = 0.5 * (K - 1);
  const auto& kern = simd::kernels();
  std::vector<cf32> steering(static_cast<std::size_t>(A));
  std::vector<std::complex<double>> freq(static_cast<std::size_t>(K));
  std::vector<std::complex<double>> time(static_cast<std::size_t>(S));
  for (const Path& path : paths) {
    for (int a = 0; a < A; ++a) steering[a] = polar_f(1.0, std::numbers::pi * a * path.array_cos);
    for (int k = 0; k < K; ++k)
      freq[k] = std::polar(1.0, -kTwoPi * std::fmod((k - center) * radio.scs_hz * path.delay_s, 1.0));
    for (int s = 0; s < S; ++s) time[s] = std::polar(1.0, kTwoPi * std::fmod(path.doppler_hz * s * symbol_s, 1.0));
    for (int k = 0; k < K; ++k) {
      const std::complex<double> gk = path.gain * freq[k];
      for (int s = 0; s < S; ++s) {
        const std::complex<double> c = gk * time[s];
        kern.caxpy(cf32(static_cast<float>(c.real()), static_cast<float>(c.imag())), steering.data(),
                   out.h.ports_at(k, s), static_cast<std::size_t>(A));
      }
    }
  }
  return out;
}

PilotGrid srs_sequence(const RadioConfig& radio, int ue_id) {
  const int K = radio.active_subcarriers();
  int n_zc = K;
  while (n_zc > 2 && !is_prime(n_zc)) --n_zc;
  const std::int64_t nz = n_zc;
  const std::int64_t roots = std::max<std::int64_t>(nz - 1, 1);
  const std::int64_t root = 1 + (static_cast<std::int64_t>(ue_id) % roots + roots) % roots;
  PilotGrid grid;
  grid.subcarriers = K;
  grid.symbols = radio.srs_symbols;
  grid.values.resize(static_cast<std::size_t>(K) * radio.srs_symbols);
  for (int k = 0; k < K; ++k) {
    const std::int64_t m = k % nz;
    // exp(-j pi u m (m+1) / N), exponent reduced modulo 2N in integers.
    const std::int64_t e = (root * ((m * (m + 1)) % (2 * nz))) % (2 * nz);
    const cf32 x = polar_f(1.0, -std::numbers::pi * static_cast<double>(e) / static_cast<double>(nz));
    for (int s = 0; s < radio.srs_symbols; ++s) grid.at(k, s) = x;
  }
  return grid;
}

double noise_power_per_re_mw(const RadioConfig& radio) noexcept {
  return db_to_lin(kThermalDbmPerHz + 10.0 * std::log10(radio.scs_hz) + radio.noise_figure_db);
}

ReceivedGrid transmit_srs(const ChannelRealization& channel, const PilotGrid& srs, double tx_power_dbm,
                          const RadioConfig& radio, Rng& rng, TransmitOptions options) {
  const ComplexTensor& h = channel.h;
  if (srs.subcarriers != h.subcarriers() || srs.symbols != h.symbols() ||
      srs.values.size() != static_cast<std::size_t>(srs.subcarriers) * srs.symbols)
    throw Error("transmit_srs: SRS grid shape does not match the channel tensor");
  const auto& kern = simd::kernels();
  const float amp = static_cast<float>(std::sqrt(db_to_lin(tx_power_dbm)));
  const std::size_t A = static_cast<std::size_t>(h.ports());

  ReceivedGrid rx;
  rx.link = channel.link;
  rx.noise_power_mw = noise_power_per_re_mw(radio);
  rx.y = ComplexTensor(h.subcarriers(), h.symbols(), h.ports());

  double signal = 0.0, noise = 0.0;
  std::vector<cf32> w(A);
  const double sigma = std::sqrt(rx.noise_power_mw / 2.0);
  for (int k = 0; k < h.subcarriers(); ++k) {
    for (int s = 0; s < h.symbols(); ++s) {
      const cf32 a = amp * srs.at(k, s);
      cf32* y = rx.y.ports_at(k, s);
      kern.cscale(a, h.ports_at(k, s), y, A);
      signal += kern.energy(y, A);
      if (options.add_noise) {
        for (auto& v : w) {
          const double re = rng.normal(), im = rng.normal();
          v = {static_cast<float>(sigma * re), static_cast<float>(sigma * im)};
        }
        noise += kern.energy(w.data(), A);
        kern.cscale_add(a, h.ports_at(k, s), w.data(), y, A);
      }
    }
  }
  rx.snr_db = options.add_noise && noise > 0 ? 10.0 * std::log10(signal / noise)
                                             : std::numeric_limits<double>::infinity();
  return rx;
}

CsiEstimate estimate_csi(const ReceivedGrid& rx, const PilotGrid& srs, double tx_power_dbm,
                         const ComplexTensor* truth) {
  const ComplexTensor& y = rx.y;
  if (srs.subcarriers != y.subcarriers() || srs.symbols != y.symbols())
    throw Error("estimate_csi: SRS grid shape does not match the received grid");
  for (const cf32& x : srs.values)
    if (x == cf32(0.0f, 0.0f)) throw Error("estimate_csi: SRS contains a zero element");
  if (truth != nullptr && !truth->same_shape(y))
    throw Error("estimate_csi: ground-truth tensor shape mismatch");

  const auto& kern = simd::kernels();
  const double amp = std::sqrt(db_to_lin(tx_power_dbm));
  const std::size_t A = static_cast<std::size_t>(y.ports());
  CsiEstimate est;
  est.link = rx.link;
  est.h_hat = ComplexTensor(y.subcarriers(), y.symbols(), y.ports());
  for (int k = 0; k < y.subcarriers(); ++k) {
    for (int s = 0; s < y.symbols(); ++s) {
      const std::complex<double> x = srs.at(k, s);
      const std::complex<double> inv = 1.0 / (amp * x);
      kern.cscale(cf32(static_cast<float>(inv.real()), static_cast<float>(inv.imag())), y.ports_at(k, s),
                  est.h_hat.ports_at(k, s), A);
    }
  }
  if (truth != nullptr) {
    const double err = kern.diff_energy(est.h_hat.data().data(), truth->data().data(), truth->size());
    const double ref = kern.energy(truth->data().data(), truth->size());
    est.nmse = ref > 0 ? err / ref : (err > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  }
  return est;
}

double link_sinr_db(double tx_power_dbm, const LargeScale& large_scale, const RadioConfig& radio) {
  const double received = tx_power_dbm + large_scale.gain_db() + 10.0 * std::log10(radio.bs_antennas);
  const double noise_dbm = kThermalDbmPerHz + 10.0 * std::log10(radio.bandwidth_hz) + radio.noise_figure_db;
  if (!radio.interference_dbm) return received - noise_dbm;
  return received - 10.0 * std::log10(db_to_lin(noise_dbm) + db_to_lin(*radio.interference_dbm));
}

double link_sinr_db(const Link& link, const Topology& topology, const ScenarioConfig& config) {
  const UeNode& node = topology.node(link.ue_id);
  const BaseStation& bs = topology.base_station(link.bs_id);
  return link_sinr_db(node.tx_power_dbm, link_large_scale(node, bs, config), config.radio);
}

double capacity_bps_hz(double sinr_db) noexcept {
  if (std::isinf(sinr_db) && sinr_db < 0) return 0.0;
  return std::log2(1.0 + std::pow(10.0, sinr_db / 10.0));
}

void write_channel_tensor(const std::filesystem::path& path, const ComplexTensor& tensor) {
  binio::Writer w;
  w.bytes("CSIT");
  w.u32(3);
  w.u32(static_cast<std::uint32_t>(tensor.subcarriers()));
  w.u32(static_cast<std::uint32_t>(tensor.symbols()));
  w.u32(static_cast<std::uint32_t>(tensor.ports()));
  for (const cf32& v : tensor.data()) {
    w.f32(v.real());
    w.f32(v.imag());
  }
  binio::write_file(path, w.buffer());
}

ComplexTensor read_channel_tensor(const std::filesystem::path& path) {
  const auto bytes = binio::read_file(path);
  binio::Reader r(bytes);
  if (r.bytes(4, "magic") != "CSIT") throw FormatError("magic", "expected CSIT");
  if (r.u32("rank") != 3) throw FormatError("rank", "expected 3");
  const auto k = r.u32("dims[0]"), s = r.u32("dims[1]"), a = r.u32("dims[2]");
  if (std::uint64_t{k} * s * a * 8 != r.remaining()) throw FormatError("data", "size does not match dims");
  ComplexTensor t(static_cast<int>(k), static_cast<int>(s), static_cast<int>(a));
  for (auto& v : t.data()) {
    const float re = r.f32("data");
    v = {re, r.f32("data")};
  }
  return t;
}

}  // namespace pls
