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

#pragma once

#include <string>
#include <vector>

#include "netcm/matrix.hpp"

namespace netcm {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);

/// a^dagger * m * a.
RealMatrix congruence(const RealMatrix& m, const RealMatrix& a);
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);  // u m u^dagger

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);

/// tr(a * b) without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Block-wise Kronecker product: block (i,j) of the result is A_ij (x) B_ij.
/// Row/column layouts of both operands must have the same block counts.
RealMatrix khatri_rao(const RealMatrix& a, const BlockLayout& a_rows, const BlockLayout& a_cols,
                      const RealMatrix& b, const BlockLayout& b_rows, const BlockLayout& b_cols);
ComplexMatrix khatri_rao(const ComplexMatrix& a, const BlockLayout& a_rows,
                         const BlockLayout& a_cols, const ComplexMatrix& b,
                         const BlockLayout& b_rows, const BlockLayout& b_cols);

/// Reduced operator on `keep` (layout order preserved). Unknown labels throw.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            const std::vector<std::string>& keep);

/// The same operator expressed with tensor factors in `new_order`.
ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const SubsystemLayout& layout,
                                 const std::vector<std::string>& new_order);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};
struct SymmetricEigen {
  std::vector<double> values;  // ascending
  RealMatrix vectors;
};

/// Spectral routines symmetrize their input after checking it is Hermitian
/// within kHermitianTol; NotHermitianError otherwise.
std::vector<double> eigvals_hermitian(const ComplexMatrix& m);
std::vector<double> eigvals_symmetric(const RealMatrix& m);
HermitianEigen eigh(const ComplexMatrix& m);
SymmetricEigen eigh(const RealMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);
double min_eigenvalue(const RealMatrix& m);

std::vector<double> singular_values(const ComplexMatrix& m);
std::vector<double> singular_values(const RealMatrix& m);
double trace_norm(const ComplexMatrix& m);
double trace_norm(const RealMatrix& m);
double spectral_norm(const RealMatrix& m);

bool is_psd(const ComplexMatrix& m, double tol);
bool is_psd(const RealMatrix& m, double tol);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to zero.
ComplexMatrix psd_project(const ComplexMatrix& m);
RealMatrix psd_project(const RealMatrix& m);

}  // namespace netcm
