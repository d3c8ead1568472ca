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

// Fixed-length feature vectors for the forest: per-plane summary statistics,
// an 8x8 average-pooled grid per plane, and the three side features.

#include <cstdint>
#include <span>
#include <vector>

#include "pls/dataset.hpp"

namespace pls {

inline constexpr int kPoolGrid = 8;
inline constexpr int kStatsPerPlane = 4;  // mean, std, min, max
inline constexpr int kFeatureCount =
    kImagePlanes * kStatsPerPlane + kImagePlanes * kPoolGrid * kPoolGrid + kSideFeatures;
static_assert(kFeatureCount == 207);

// Row-major samples x features with one label per row.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> values;
  std::vector<std::uint8_t> labels;

  float at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::span<const float> row(std::size_t r) const { return std::span(values).subspan(r * cols, cols); }
};

std::vector<float> extract_features(const CsiSample& sample);

// Rows for the given sample positions (all samples when `positions` is empty).
FeatureMatrix feature_matrix(std::span<const CsiSample> samples, std::span<const std::size_t> positions = {});

// Identifies the extraction layout; stored in model files.
std::uint64_t feature_config_hash();

}  // namespace pls
