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

#include "pls/features.hpp"

#include <algorithm>
#include <cmath>

#include "pls/checksum.hpp"

namespace pls {

std::vector<float> extract_features(const CsiSample& sample) {
  std::vector<float> out;
  out.reserve(kFeatureCount);
  constexpr int kPixels = kImageSize * kImageSize;
  for (int p = 0; p < kImagePlanes; ++p) {
    double sum = 0.0, lo = 1e300, hi = -1e300;
    for (int r = 0; r < kImageSize; ++r)
      for (int c = 0; c < kImageSize; ++c) {
        const double v = sample.image.at(r, c, p);
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    const double mean = sum / kPixels;
    double dev = 0.0;
    for (int r = 0; r < kImageSize; ++r)
      for (int c = 0; c < kImageSize; ++c) {
        const double d = sample.image.at(r, c, p) - mean;
        dev += d * d;
      }
    out.push_back(static_cast<float>(mean));
    out.push_back(static_cast<float>(std::sqrt(dev / kPixels)));
    out.push_back(static_cast<float>(lo));
    out.push_back(static_cast<float>(hi));
  }
  constexpr int kCell = kImageSize / kPoolGrid;
  for (int p = 0; p < kImagePlanes; ++p)
    for (int gr = 0; gr < kPoolGrid; ++gr)
      for (int gc = 0; gc < kPoolGrid; ++gc) {
        double sum = 0.0;
        for (int r = gr * kCell; r < (gr + 1) * kCell; ++r)
          for (int c = gc * kCell; c < (gc + 1) * kCell; ++c) sum += sample.image.at(r, c, p);
        out.push_back(static_cast<float>(sum / (kCell * kCell)));
      }
  for (float v : sample.side) out.push_back(v);
  return out;
}

FeatureMatrix feature_matrix(std::span<const CsiSample> samples, std::span<const std::size_t> positions) {
  std::vector<std::size_t> all;
  if (positions.empty()) {
    all.resize(samples.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    positions = all;
  }
  FeatureMatrix m;
  m.rows = positions.size();
  m.cols = kFeatureCount;
  m.values.reserve(m.rows * m.cols);
  m.labels.reserve(m.rows);
  for (std::size_t pos : positions) {
    const auto f = extract_features(samples[pos]);
    m.values.insert(m.values.end(), f.begin(), f.end());
    m.labels.push_back(samples[pos].label);
  }
  return m;
}

std::uint64_t feature_config_hash() {
  return crc32("pls.features.v1;stats=mean,std,min,max;pool=8x8;side=x,y,power;planes=3;image=64");
}

}  // namespace pls
