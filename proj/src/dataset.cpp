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

#include "pls/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pls/error.hpp"
#include "pls/parallel.hpp"
#include "pls/rng.hpp"
#include "pls/simd/kernels.hpp"

namespace pls {

namespace {

constexpr const char* kToolVersion = "plsbench 1.0.0";

// out (m_rows x m_cols) = Wr (m_rows x n_rows) * in (n_rows x n_cols) * Wc^T
std::vector<double> resample_plane(const std::vector<double>& in, int n_rows, int n_cols) {
  const auto wr = area_resample_weights(n_rows, kImageSize);
  const auto wc = area_resample_weights(n_cols, kImageSize);
  std::vector<double> tmp(static_cast<std::size_t>(kImageSize) * n_cols, 0.0);
  for (int i = 0; i < kImageSize; ++i)
    for (int r = 0; r < n_rows; ++r) {
      const double w = wr[static_cast<std::size_t>(i) * n_rows + r];
      if (w == 0.0) continue;
      for (int c = 0; c < n_cols; ++c)
        tmp[static_cast<std::size_t>(i) * n_cols + c] += w * in[static_cast<std::size_t>(r) * n_cols + c];
    }
  std::vector<double> out(static_cast<std::size_t>(kImageSize) * kImageSize, 0.0);
  for (int i = 0; i < kImageSize; ++i)
    for (int j = 0; j < kImageSize; ++j) {
      double acc = 0.0;
      for (int c = 0; c < n_cols; ++c)
        acc += wc[static_cast<std::size_t>(j) * n_cols + c] * tmp[static_cast<std::size_t>(i) * n_cols + c];
      out[static_cast<std::size_t>(i) * kImageSize + j] = acc;
    }
  return out;
}

// Relative spread below this is treated as a constant plane (resampling
// weights introduce rounding-level differences between equal inputs).
constexpr double kConstantPlaneTolerance = 1e-9;

void normalize_into(const std::vector<double>& plane, int index, CsiImage& image) {
  const auto [lo_it, hi_it] = std::minmax_element(plane.begin(), plane.end());
  const double lo = *lo_it, hi = *hi_it;
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const bool constant = !(hi - lo > kConstantPlaneTolerance * scale);
  for (int r = 0; r < kImageSize; ++r)
    for (int c = 0; c < kImageSize; ++c) {
      const double v = plane[static_cast<std::size_t>(r) * kImageSize + c];
      image.at(r, c, index) = constant ? 0.0f : static_cast<float>(std::clamp((v - lo) / (hi - lo), 0.0, 1.0));
    }
}

float unit_clamp(double v) { return static_cast<float>(std::clamp(v, 0.0, 1.0)); }

}  // namespace

std::vector<double> area_resample_weights(int n_in, int m_out) {
  if (n_in < 1 || m_out < 1) throw Error("area_resample_weights: sizes must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(m_out) * n_in, 0.0);
  const double step = static_cast<double>(n_in) / m_out;
  for (int i = 0; i < m_out; ++i) {
    const double lo = i * step, hi = (i + 1) * step;
    const int first = static_cast<int>(std::floor(lo));
    const int last = std::min(n_in - 1, static_cast<int>(std::ceil(hi)) - 1);
    for (int j = first; j <= last; ++j) {
      const double overlap = std::min(hi, j + 1.0) - std::max(lo, static_cast<double>(j));
      if (overlap > 0) w[static_cast<std::size_t>(i) * n_in + j] = overlap / step;
    }
  }
  return w;
}

CsiImage build_csi_image(std::span<const CsiEstimate> estimates, std::size_t serving_index) {
  if (estimates.empty()) throw Error("build_csi_image: no estimates");
  if (serving_index >= estimates.size()) throw Error("build_csi_image: serving index out of range");
  for (const auto& e : estimates)
    if (!e.h_hat.same_shape(estimates.front().h_hat))
      throw Error("build_csi_image: estimates disagree in shape");
  const ComplexTensor& h = estimates[serving_index].h_hat;
  const int K = h.subcarriers(), S = h.symbols();
  if (K < 1 || S < 1 || h.ports() < 1) throw Error("build_csi_image: empty estimate");

  const auto& kern = simd::kernels();
  const std::size_t n = static_cast<std::size_t>(K) * S;
  std::vector<double> magnitude(n), phase(n), spread(n);
  for (int k = 0; k < K; ++k)
    for (int s = 0; s < S; ++s) {
      const auto st = kern.port_stats(h.ports_at(k, s), static_cast<std::size_t>(h.ports()));
      const std::size_t i = static_cast<std::size_t>(k) * S + s;
      magnitude[i] = st.mean_abs;
      phase[i] = (std::arg(std::complex<double>(st.mean)) + std::numbers::pi) / (2.0 * std::numbers::pi);
      spread[i] = st.std_abs;
    }
  CsiImage image;
  normalize_into(resample_plane(magnitude, K, S), 0, image);
  normalize_into(resample_plane(phase, K, S), 1, image);
  normalize_into(resample_plane(spread, K, S), 2, image);
  return image;
}

std::uint8_t label_of(const UeNode& node) noexcept { return node.role == Role::kEavesdropper ? 1 : 0; }

Normalization normalization_for(const ScenarioConfig& config) {
  Normalization n;
  n.width_m = config.width_m;
  n.depth_m = config.depth_m;
  n.power_min_dbm = config.lu_power_dbm;
  n.power_max_dbm = config.gamma_range.hi * config.lu_power_dbm;
  if (!(n.power_max_dbm > n.power_min_dbm)) n.power_max_dbm = n.power_min_dbm + 1.0;
  return n;
}

std::array<float, kSideFeatures> side_features(const UeNode& node, const Normalization& norm) {
  return {unit_clamp(node.position.x / norm.width_m), unit_clamp(node.position.y / norm.depth_m),
          unit_clamp((node.tx_power_dbm - norm.power_min_dbm) / (norm.power_max_dbm - norm.power_min_dbm))};
}

ChannelRealization serving_channel(const UeNode& node, const Topology& topology, const ScenarioConfig& config,
                                   std::span<const LargeScale> large_scale_row) {
  const int bs = serving_bs(large_scale_row);
  Rng small_scale(derive_seed(config.master_seed, Stream::kSmallScale,
                              {node_stream_key(node), static_cast<std::uint64_t>(bs)}));
  return generate_channel(Link{node.id, bs}, topology, config.radio, large_scale_row[static_cast<std::size_t>(bs)],
                          small_scale);
}

CsiSample simulate_sample(const UeNode& node, const Topology& topology, const ScenarioConfig& config,
                          std::span<const LargeScale> large_scale_row, const Normalization& norm) {
  const auto channel = serving_channel(node, topology, config, large_scale_row);
  Rng noise(derive_seed(config.master_seed, Stream::kNoise,
                        {node_stream_key(node), static_cast<std::uint64_t>(channel.link.bs_id)}));
  const auto srs = srs_sequence(config.radio, node.id);
  const auto rx = transmit_srs(channel, srs, node.tx_power_dbm, config.radio, noise);
  const auto estimate = estimate_csi(rx, srs, node.tx_power_dbm);

  CsiSample sample;
  sample.ue_id = node.id;
  sample.image = build_csi_image(std::span(&estimate, 1), 0);
  sample.side = side_features(node, norm);
  sample.label = label_of(node);
  return sample;
}

std::vector<CsiSample> simulate_samples(const Topology& topology, const ScenarioConfig& config) {
  const auto table = large_scale_table(topology, config);
  const Normalization norm = normalization_for(config);
  std::vector<CsiSample> samples(topology.nodes.size());
  parallel_for(topology.nodes.size(), [&](std::size_t i) {
    const UeNode& node = topology.nodes[i];
    samples[i] = simulate_sample(node, topology, config, table[static_cast<std::size_t>(node.id)], norm);
  });
  return samples;
}

Dataset generate_dataset(const ScenarioConfig& config) {
  const Topology topology = build_topology(config);
  Dataset ds;
  ds.samples = simulate_samples(topology, config);
  DatasetManifest& m = ds.manifest;
  m.scenario_hash = config_hash(config);
  m.radio_hash = radio_hash(config.radio);
  m.master_seed = config.master_seed;
  m.normalization = normalization_for(config);
  m.document = {
      {"schema", "pls.dataset.manifest"},
      {"schema_version", 1},
      {"created_by", kToolVersion},
      {"scenario_hash", m.scenario_hash},
      {"radio_hash", m.radio_hash},
      {"master_seed", m.master_seed},
      {"image",
       {{"height", kImageSize},
        {"width", kImageSize},
        {"planes", kImagePlanes},
        {"layout", "row,col,plane"},
        {"plane_semantics", {"mean_abs_over_ports", "phase_of_port_mean", "std_abs_over_ports"}}}},
      {"side_features", {"x_norm", "y_norm", "power_norm"}},
      {"labels", {{"0", "legitimate"}, {"1", "eavesdropper"}}},
      {"normalization",
       {{"width_m", m.normalization.width_m},
        {"depth_m", m.normalization.depth_m},
        {"power_min_dbm", m.normalization.power_min_dbm},
        {"power_max_dbm", m.normalization.power_max_dbm}}},
      {"counts",
       {{"samples", ds.samples.size()},
        {"legitimate", topology.count(Role::kLegitimate)},
        {"eavesdropper", topology.count(Role::kEavesdropper)}}},
      {"config", to_json(config)}};
  return ds;
}

SplitIndex split_labels(std::span<const std::uint8_t> labels, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split.ratio", "must be in (0, 1)");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 1) throw Error("split: label outside {0, 1}");
    by_class[labels[i]].push_back(i);
  }
  Rng rng(derive_seed(seed, Stream::kSplit));
  SplitIndex split;
  split.ratio = ratio;
  for (int c = 0; c < 2; ++c) {
    auto& members = by_class[static_cast<std::size_t>(c)];
    if (members.size() < 2)
      throw Error("split: class " + std::to_string(c) + " has fewer than 2 samples");
    rng.shuffle(std::span(members));
    auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(members.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
    split.train.insert(split.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

SplitIndex split_dataset(const Dataset& ds, double ratio, std::uint64_t seed) {
  std::vector<std::uint8_t> labels;
  labels.reserve(ds.samples.size());
  for (const auto& s : ds.samples) labels.push_back(s.label);
  return split_labels(labels, ratio, seed);
}

}  // namespace pls
