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

#include <doctest.h>

#include <cmath>

#include "pls/features.hpp"

using namespace pls;

TEST_CASE("feature layout: 12 plane statistics, 192 pooled cells, 3 side features") {
  CsiSample s;
  for (int r = 0; r < kImageSize; ++r)
    for (int c = 0; c < kImageSize; ++c) {
      s.image.at(r, c, 0) = 0.25f;
      s.image.at(r, c, 1) = c < 32 ? 0.0f : 1.0f;
      s.image.at(r, c, 2) = static_cast<float>(r) / 63.0f;
    }
  s.side = {0.1f, 0.2f, 0.3f};
  const auto f = extract_features(s);
  REQUIRE(f.size() == 207);
  // Plane 0: constant.
  CHECK(f[0] == doctest::Approx(0.25));
  CHECK(f[1] == doctest::Approx(0.0));
  CHECK(f[2] == doctest::Approx(0.25));
  CHECK(f[3] == doctest::Approx(0.25));
  // Plane 1: half zeros, half ones.
  CHECK(f[4] == doctest::Approx(0.5));
  CHECK(f[5] == doctest::Approx(0.5));
  CHECK(f[6] == 0.0f);
  CHECK(f[7] == 1.0f);
  // Pooled grid of plane 1, row 0: first four cells 0, last four 1.
  for (int gc = 0; gc < 8; ++gc) CHECK(f[12 + 64 + gc] == (gc < 4 ? 0.0f : 1.0f));
  // Pooled grid of plane 2, column 0: increasing with the row.
  for (int gr = 1; gr < 8; ++gr) CHECK(f[12 + 128 + gr * 8] > f[12 + 128 + (gr - 1) * 8]);
  CHECK(f[204] == 0.1f);
  CHECK(f[205] == 0.2f);
  CHECK(f[206] == 0.3f);
}

TEST_CASE("feature matrix rows follow the requested positions") {
  std::vector<CsiSample> samples(3);
  for (int i = 0; i < 3; ++i) {
    samples[i].side = {static_cast<float>(i), 0.0f, 0.0f};
    samples[i].label = static_cast<std::uint8_t>(i % 2);
  }
  const std::vector<std::size_t> pos{2, 0};
  const auto m = feature_matrix(samples, pos);
  CHECK(m.rows == 2);
  CHECK(m.cols == 207);
  CHECK(m.at(0, 204) == 2.0f);
  CHECK(m.at(1, 204) == 0.0f);
  CHECK(m.labels == std::vector<std::uint8_t>{0, 0});
  CHECK(feature_matrix(samples).rows == 3);
  CHECK(feature_config_hash() == feature_config_hash());
}
