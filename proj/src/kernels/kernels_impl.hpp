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

// Private declarations of the per-ISA kernel sets. Deliberately free of
// library headers: the AVX2 translation unit is compiled with -mavx2 and must
// not instantiate inline code that could be shared with baseline units.

#pragma once

#include <cstddef>

namespace netcm::kernels {

namespace scalar {
void cdotu(std::size_t n, const double* a, const double* b, double* out);
void caxpy(std::size_t n, const double* alpha, const double* x, double* y);
double ddot(std::size_t n, const double* a, const double* b);
void daxpy(std::size_t n, double alpha, const double* x, double* y);
}  // namespace scalar

#if defined(NETCM_HAVE_AVX2)
namespace avx2 {
void cdotu(std::size_t n, const double* a, const double* b, double* out);
void caxpy(std::size_t n, const double* alpha, const double* x, double* y);
double ddot(std::size_t n, const double* a, const double* b);
void daxpy(std::size_t n, double alpha, const double* x, double* y);
}  // namespace avx2
#endif

}  // namespace netcm::kernels
