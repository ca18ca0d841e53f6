// Copyright 2026 The netcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma. Only reachable through the dispatch table after
// a CPU feature check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace netcm::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

// Two complex numbers per 256-bit register: [r0, i0, r1, i1].
void cdotu(std::size_t n, const double* a, const double* b, double* out) {
  __m256d acc_re = _mm256_setzero_pd();  // [ar*br, ai*br, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [ai*bi, ar*bi, ...]
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * k);
    const __m256d vb = _mm256_loadu_pd(b + 2 * k);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    acc_re = _mm256_fmadd_pd(va, b_re, acc_re);
    acc_im = _mm256_fmadd_pd(a_sw, b_im, acc_im);
  }
  alignas(32) double r[4], i[4];
  _mm256_store_pd(r, acc_re);
  _mm256_store_pd(i, acc_im);
  double re = (r[0] + r[2]) - (i[0] + i[2]);
  double im = (r[1] + r[3]) + (i[1] + i[3]);
  for (; k < n; ++k) {
    const double ar = a[2 * k], ai = a[2 * k + 1];
    const double br = b[2 * k], bi = b[2 * k + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  out[0] = re;
  out[1] = im;
}

void caxpy(std::size_t n, const double* alpha, const double* x, double* y) {
  const __m256d ar = _mm256_set1_pd(alpha[0]);
  const __m256d ai = _mm256_set1_pd(alpha[1]);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d vx = _mm256_loadu_pd(x + 2 * k);
    const __m256d vy = _mm256_loadu_pd(y + 2 * k);
    const __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0x5));  // [ai*xi, ai*xr]
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, vx, t);
    _mm256_storeu_pd(y + 2 * k, _mm256_add_pd(vy, prod));
  }
  for (; k < n; ++k) {
    const double xr = x[2 * k], xi = x[2 * k + 1];
    y[2 * k] += alpha[0] * xr - alpha[1] * xi;
    y[2 * k + 1] += alpha[0] * xi + alpha[1] * xr;
  }
}

double ddot(std::size_t n, const double* a, const double* b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void daxpy(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k)));
  for (; k < n; ++k) y[k] += alpha * x[k];
}

}  // namespace netcm::kernels::avx2
