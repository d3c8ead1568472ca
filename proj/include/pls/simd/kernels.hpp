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

// Data-parallel complex kernels behind the channel and CSI code paths.
//
// Every kernel has a scalar reference implementation; wider variants are
// compiled in separate translation units and selected once at runtime from
// CPU feature flags. All variants must agree with the scalar reference to
// within float rounding (see tests/test_kernels.cpp).

#include <complex>
#include <cstddef>
#include <string_view>

namespace pls::simd {

using cf32 = std::complex<float>;

struct PortStats {
  float mean_abs = 0.0f;  // mean of |x|
  float std_abs = 0.0f;   // population standard deviation of |x|
  cf32 mean{};            // coherent mean of x
};

struct KernelTable {
  std::string_view name;
  // y[i] += a * x[i]
  void (*caxpy)(cf32 a, const cf32* x, cf32* y, std::size_t n);
  // y[i] = a * x[i]
  void (*cscale)(cf32 a, const cf32* x, cf32* y, std::size_t n);
  // y[i] = a * x[i] + w[i]
  void (*cscale_add)(cf32 a, const cf32* x, const cf32* w, cf32* y, std::size_t n);
  // sum |x[i]|^2
  double (*energy)(const cf32* x, std::size_t n);
  // sum |x[i] - y[i]|^2
  double (*diff_energy)(const cf32* x, const cf32* y, std::size_t n);
  PortStats (*port_stats)(const cf32* x, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
// nullptr when the variant was not compiled in or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels() noexcept;

// The table used by the library. Chosen once: the widest supported variant,
// unless PLS_SIMD=scalar is set in the environment.
const KernelTable& kernels() noexcept;

}  // namespace pls::simd
