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

// Compiled with -mavx2 -mfma. Only reached after the dispatcher has confirmed
// both features on the running CPU.

#include <immintrin.h>

#include <cmath>

#include "variants.hpp"

namespace pls::simd::detail {

namespace {

// Four interleaved complex floats per register: [r0 i0 r1 i1 r2 i2 r3 i3].
inline __m256 load4(const cf32* p) { return _mm256_loadu_ps(reinterpret_cast<const float*>(p)); }
inline void store4(cf32* p, __m256 v) { _mm256_storeu_ps(reinterpret_cast<float*>(p), v); }

// a * x for a broadcast complex a.
inline __m256 cmul_bcast(__m256 are, __m256 aim, __m256 x) {
  const __m256 xswap = _mm256_permute_ps(x, 0xB1);  // [i0 r0 i1 r1 ...]
  return _mm256_fmaddsub_ps(x, are, _mm256_mul_ps(xswap, aim));
}

// |x|^2 duplicated into both lanes of each complex pair.
inline __m256 norm_dup(__m256 x) {
  const __m256 sq = _mm256_mul_ps(x, x);
  return _mm256_add_ps(sq, _mm256_permute_ps(sq, 0xB1));
}

inline float hsum(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  const __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  lo = _mm_hadd_ps(lo, lo);
  lo = _mm_hadd_ps(lo, lo);
  return _mm_cvtss_f32(lo);
}

inline double hsum_pd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void caxpy_avx2(cf32 a, const cf32* x, cf32* y, std::size_t n) {
  const __m256 are = _mm256_set1_ps(a.real());
  const __m256 aim = _mm256_set1_ps(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(y + i, _mm256_add_ps(load4(y + i), cmul_bcast(are, aim, load4(x + i))));
  for (; i < n; ++i) {
    y[i] = {y[i].real() + (a.real() * x[i].real() - a.imag() * x[i].imag()),
            y[i].imag() + (a.real() * x[i].imag() + a.imag() * x[i].real())};
  }
}

void cscale_avx2(cf32 a, const cf32* x, cf32* y, std::size_t n) {
  const __m256 are = _mm256_set1_ps(a.real());
  const __m256 aim = _mm256_set1_ps(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(y + i, cmul_bcast(are, aim, load4(x + i)));
  for (; i < n; ++i) {
    y[i] = {a.real() * x[i].real() - a.imag() * x[i].imag(),
            a.real() * x[i].imag() + a.imag() * x[i].real()};
  }
}

void cscale_add_avx2(cf32 a, const cf32* x, const cf32* w, cf32* y, std::size_t n) {
  const __m256 are = _mm256_set1_ps(a.real());
  const __m256 aim = _mm256_set1_ps(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(y + i, _mm256_add_ps(cmul_bcast(are, aim, load4(x + i)), load4(w + i)));
  for (; i < n; ++i) {
    y[i] = {a.real() * x[i].real() - a.imag() * x[i].imag() + w[i].real(),
            a.real() * x[i].imag() + a.imag() * x[i].real() + w[i].imag()};
  }
}

double energy_avx2(const cf32* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_cvtps_pd(_mm_loadu_ps(reinterpret_cast<const float*>(x + i)));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum_pd(acc);
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    total += re * re + im * im;
  }
  return total;
}

double diff_energy_avx2(const cf32* x, const cf32* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_cvtps_pd(_mm_loadu_ps(reinterpret_cast<const float*>(x + i)));
    const __m256d b = _mm256_cvtps_pd(_mm_loadu_ps(reinterpret_cast<const float*>(y + i)));
    const __m256d d = _mm256_sub_pd(a, b);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double total = hsum_pd(acc);
  for (; i < n; ++i) {
    const double re = double(x[i].real()) - y[i].real();
    const double im = double(x[i].imag()) - y[i].imag();
    total += re * re + im * im;
  }
  return total;
}

PortStats port_stats_avx2(const cf32* x, std::size_t n) {
  PortStats out;
  if (n == 0) return out;
  __m256 abs_acc = _mm256_setzero_ps();
  __m256 sum_acc = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256 v = load4(x + i);
    abs_acc = _mm256_add_ps(abs_acc, _mm256_sqrt_ps(norm_dup(v)));
    sum_acc = _mm256_add_ps(sum_acc, v);
  }
  // Each magnitude was accumulated twice (once per lane of its pair).
  float sum_abs = 0.5f * hsum(abs_acc);
  alignas(32) float lanes[8];
  _mm256_store_ps(lanes, sum_acc);
  float sum_re = lanes[0] + lanes[2] + lanes[4] + lanes[6];
  float sum_im = lanes[1] + lanes[3] + lanes[5] + lanes[7];
  const std::size_t tail = i;
  for (; i < n; ++i) {
    sum_abs += std::sqrt(x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    sum_re += x[i].real();
    sum_im += x[i].imag();
  }
  const float inv = 1.0f / static_cast<float>(n);
  out.mean_abs = sum_abs * inv;
  out.mean = {sum_re * inv, sum_im * inv};

  const __m256 mean = _mm256_set1_ps(out.mean_abs);
  __m256 dev_acc = _mm256_setzero_ps();
  for (i = 0; i < tail; i += 4) {
    const __m256 d = _mm256_sub_ps(_mm256_sqrt_ps(norm_dup(load4(x + i))), mean);
    dev_acc = _mm256_fmadd_ps(d, d, dev_acc);
  }
  float dev = 0.5f * hsum(dev_acc);
  for (i = tail; i < n; ++i) {
    const float d =
        std::sqrt(x[i].real() * x[i].real() + x[i].imag() * x[i].imag()) - out.mean_abs;
    dev += d * d;
  }
  out.std_abs = std::sqrt(dev * inv);
  return out;
}

constexpr KernelTable kAvx2{
    "avx2",      caxpy_avx2,       cscale_avx2,    cscale_add_avx2,
    energy_avx2, diff_energy_avx2, port_stats_avx2};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace pls::simd::detail
