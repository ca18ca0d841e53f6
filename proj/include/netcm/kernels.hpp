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

// Data-parallel inner loops shared by the dense linear algebra. Every kernel
// has a scalar reference implementation; wider variants are selected at
// runtime from CPU features and must agree with the reference to rounding.
//
// Complex operands are passed as interleaved (re, im) double arrays, which is
// the guaranteed layout of std::complex<double>.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "netcm/matrix.hpp"

namespace netcm::kernels {

struct KernelTable {
  const char* name;
  // out[0] + i out[1] = sum_k a_k * b_k   (no conjugation), n complex entries
  void (*cdotu)(std::size_t n, const double* a, const double* b, double* out);
  // y += alpha * x, n complex entries, alpha interleaved (re, im)
  void (*caxpy)(std::size_t n, const double* alpha, const double* x, double* y);
  double (*ddot)(std::size_t n, const double* a, const double* b);
  void (*daxpy)(std::size_t n, double alpha, const double* x, double* y);
};

const KernelTable& scalar_table();

/// AVX2+FMA table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

/// Table used by the library. Chosen once: the widest supported variant,
/// unless NETCM_SIMD=scalar (or =avx2) forces a choice.
const KernelTable& active();

cplx dotu(std::span<const cplx> a, std::span<const cplx> b);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace netcm::kernels
