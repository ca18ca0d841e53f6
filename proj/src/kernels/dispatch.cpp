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

#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "netcm/kernels.hpp"

namespace netcm::kernels {

namespace {

const KernelTable kScalar{"scalar", &scalar::cdotu, &scalar::caxpy, &scalar::ddot, &scalar::daxpy};

#if defined(NETCM_HAVE_AVX2)
const KernelTable kAvx2{"avx2", &avx2::cdotu, &avx2::caxpy, &avx2::ddot, &avx2::daxpy};

bool cpu_has_avx2_fma() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select_table() {
  const char* forced = std::getenv("NETCM_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") return kScalar;
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError("kernel operands differ in length");
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(NETCM_HAVE_AVX2)
  static const bool ok = cpu_has_avx2_fma();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&kScalar};
  if (const KernelTable* t = avx2_table()) out.push_back(t);
  return out;
}

const KernelTable& active() {
  static const KernelTable& table = select_table();
  return table;
}

cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
  check_sizes(a.size(), b.size());
  double out[2];
  active().cdotu(a.size(), reinterpret_cast<const double*>(a.data()),
                 reinterpret_cast<const double*>(b.data()), out);
  return {out[0], out[1]};
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  check_sizes(x.size(), y.size());
  const double al[2] = {alpha.real(), alpha.imag()};
  active().caxpy(x.size(), al, reinterpret_cast<const double*>(x.data()),
                 reinterpret_cast<double*>(y.data()));
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
  return active().ddot(a.size(), a.data(), b.data());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
  active().daxpy(x.size(), alpha, x.data(), y.data());
}

}  // namespace netcm::kernels
