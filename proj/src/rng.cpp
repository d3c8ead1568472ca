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

#include "pls/rng.hpp"

#include <cmath>

namespace pls {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

constexpr int kZigLayers = 128;
constexpr double kZigR = 3.442619855899;
constexpr double kZigV = 9.91256303526217e-3;

struct Ziggurat {
  double x[kZigLayers + 1];
  double ratio[kZigLayers];
};

const Ziggurat& ziggurat() {
  static const Ziggurat table = [] {
    Ziggurat z{};
    double f = std::exp(-0.5 * kZigR * kZigR);
    z.x[0] = kZigV / f;  // bottom layer includes the tail area
    z.x[1] = kZigR;
    z.x[kZigLayers] = 0.0;
    for (int i = 2; i < kZigLayers; ++i) {
      z.x[i] = std::sqrt(-2.0 * std::log(kZigV / z.x[i - 1] + f));
      f = std::exp(-0.5 * z.x[i] * z.x[i]);
    }
    for (int i = 0; i < kZigLayers; ++i) z.ratio[i] = z.x[i + 1] / z.x[i];
    return z;
  }();
  return table;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, Stream tag,
                          std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  state = h ^ static_cast<std::uint64_t>(tag);
  h = splitmix64(state);
  for (std::uint64_t key : keys) {
    state = h ^ key;
    h = splitmix64(state);
  }
  return h;
}

Rng::Rng(std::uint64_t seed) noexcept {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::open_uniform() noexcept {
  return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::normal() noexcept {
  const auto& z = ziggurat();
  for (;;) {
    const std::uint64_t bits = next();
    const int i = static_cast<int>(bits & 0x7F);
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-52 - 1.0;  // [-1, 1)
    if (std::fabs(u) < z.ratio[i]) return u * z.x[i];
    if (i == 0) {
      // Tail beyond R, Marsaglia's exponential rejection.
      double x, y;
      do {
        x = std::log(open_uniform()) / kZigR;
        y = std::log(open_uniform());
      } while (-2.0 * y < x * x);
      return u < 0 ? x - kZigR : kZigR - x;
    }
    const double x = u * z.x[i];
    const double f0 = std::exp(-0.5 * (z.x[i] * z.x[i] - x * x));
    const double f1 = std::exp(-0.5 * (z.x[i + 1] * z.x[i + 1] - x * x));
    if (f1 + (f0 - f1) * uniform() < 1.0) return x;
  }
}

}  // namespace pls
