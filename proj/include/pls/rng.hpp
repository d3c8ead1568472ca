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

#include <cstdint>
#include <initializer_list>
#include <span>

namespace pls {

// Stream tags used to derive independent per-entity seeds from the master seed.
// Values are part of the reproducibility contract; never renumber.
enum class Stream : std::uint64_t {
  kLegitimate = 1,
  kEavesdropper = 2,
  kLargeScale = 3,
  kSmallScale = 4,
  kNoise = 5,
  kSplit = 6,
  kFold = 7,
  kTree = 8,
  kSweep = 9,
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Hashes (master, tag, keys...) through a splitmix64 chain. The result depends
// only on its inputs, so entities can be generated in any order or in parallel.
std::uint64_t derive_seed(std::uint64_t master, Stream tag,
                          std::initializer_list<std::uint64_t> keys = {}) noexcept;

// xoshiro256** generator with portable uniform/normal sampling. The standard
// <random> distributions are implementation-defined, which would make
// datasets differ between standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept;
  // [0, 1) with 53 random bits.
  double uniform() noexcept;
  // [lo, hi)
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  // Unbiased integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;
  // Standard normal via a 128-layer ziggurat (Doornik's ZIGNOR variant); one
  // 64-bit draw per variate on the fast path.
  double normal() noexcept;
  double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  // (0, 1): never returns 0, for logarithms.
  double open_uniform() noexcept;

  std::uint64_t s_[4];
};

}  // namespace pls
