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

#include "kernels_impl.hpp"

namespace netcm::kernels::scalar {

void cdotu(std::size_t n, const double* a, const double* b, double* out) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[2 * k], ai = a[2 * k + 1];
    const double br = b[2 * k], bi = b[2 * k + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  out[0] = re;
  out[1] = im;
}

void caxpy(std::size_t n, const double* alpha, const double* x, double* y) {
  const double ar = alpha[0], ai = alpha[1];
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[2 * k], xi = x[2 * k + 1];
    y[2 * k] += ar * xr - ai * xi;
    y[2 * k + 1] += ar * xi + ai * xr;
  }
}

double ddot(std::size_t n, const double* a, const double* b) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void daxpy(std::size_t n, double alpha, const double* x, double* y) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

}  // namespace netcm::kernels::scalar
