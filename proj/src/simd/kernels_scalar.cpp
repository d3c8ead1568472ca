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

#include <cmath>

#include "pls/simd/kernels.hpp"

namespace pls::simd {

namespace {

void caxpy_scalar(cf32 a, const cf32* x, cf32* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float re = a.real() * x[i].real() - a.imag() * x[i].imag();
    const float im = a.real() * x[i].imag() + a.imag() * x[i].real();
    y[i] = {y[i].real() + re, y[i].imag() + im};
  }
}

void cscale_scalar(cf32 a, const cf32* x, cf32* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = {a.real() * x[i].real() - a.imag() * x[i].imag(),
            a.real() * x[i].imag() + a.imag() * x[i].real()};
  }
}

void cscale_add_scalar(cf32 a, const cf32* x, const cf32* w, cf32* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = {a.real() * x[i].real() - a.imag() * x[i].imag() + w[i].real(),
            a.real() * x[i].imag() + a.imag() * x[i].real() + w[i].imag()};
  }
}

double energy_scalar(const cf32* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

double diff_energy_scalar(const cf32* x, const cf32* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = double(x[i].real()) - y[i].real();
    const double im = double(x[i].imag()) - y[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

PortStats port_stats_scalar(const cf32* x, std::size_t n) {
  PortStats out;
  if (n == 0) return out;
  float sum_abs = 0.0f, sum_re = 0.0f, sum_im = 0.0f;
  for (std::size_t i = 0; i < n; ++i) {
    sum_abs += std::sqrt(x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    sum_re += x[i].real();
    sum_im += x[i].imag();
  }
  const float inv = 1.0f / static_cast<float>(n);
  out.mean_abs = sum_abs * inv;
  out.mean = {sum_re * inv, sum_im * inv};
  float dev = 0.0f;
  for (std::size_t i = 0; i < n; ++i) {
    const float d =
        std::sqrt(x[i].real() * x[i].real() + x[i].imag() * x[i].imag()) - out.mean_abs;
    dev += d * d;
  }
  out.std_abs = std::sqrt(dev * inv);
  return out;
}

constexpr KernelTable kScalar{
    "scalar",      caxpy_scalar,       cscale_scalar,    cscale_add_scalar,
    energy_scalar, diff_energy_scalar, port_stats_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace pls::simd
