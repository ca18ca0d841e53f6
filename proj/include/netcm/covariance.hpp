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

// Covariance matrices of local observables.
//
// Entry (m, n) is Re<O_m O_n> - <O_m><O_n>, i.e. the symmetrized second
// moment. For observables on different nodes the operators commute and this
// is the plain covariance.

#pragma once

#include <string>
#include <vector>

#include "netcm/block_cm.hpp"
#include "netcm/observables.hpp"
#include "netcm/states.hpp"

namespace netcm {

/// Blocks follow the observable set's node grouping. Only node and pair
/// marginals of rho are formed.
BlockCovarianceMatrix covariance_matrix(const ObservableSet& obs, const DensityOperator& rho);

/// Dense reference: every entry from global operators. Slow; used as an oracle.
RealMatrix covariance_matrix_dense(const ObservableSet& obs, const DensityOperator& rho);

/// Block (x, y) of gamma; block(x, x) is the node's marginal CM.
RealMatrix block(const BlockCovarianceMatrix& gamma, const std::string& x, const std::string& y);

/// Closed form for a product state rho_1 (x) rho_2 (x) ... and product
/// observables O^1_a (x) O^2_b (x) ... (first factor outermost):
///   Gamma = Re[kron_k(|a_k><a_k| + K_k) - kron_k |a_k><a_k|]
/// with K_k the unsymmetrized factor CMs (see operator_cm_complex). Using the
/// symmetrized factor CMs instead would drop the Im K_1 (x) Im K_2 terms that
/// non-commuting factor observables produce. One block labeled `node`.
BlockCovarianceMatrix product_state_cm(const std::vector<std::vector<ComplexMatrix>>& factor_obs,
                                       const std::vector<DensityOperator>& marginals,
                                       const std::string& node = "product");

/// <O_i> for global operators O_i.
std::vector<double> mean_vector(const std::vector<ComplexMatrix>& obs, const DensityOperator& rho);
/// <O_i> for a local observable set.
std::vector<double> mean_vector(const ObservableSet& obs, const DensityOperator& rho);

/// CM of plain operators on one space (symmetrized).
RealMatrix operator_cm(const std::vector<ComplexMatrix>& obs, const ComplexMatrix& rho);
/// Unsymmetrized tr(rho O_m O_n) - <O_m><O_n>; Hermitian, real part = operator_cm.
ComplexMatrix operator_cm_complex(const std::vector<ComplexMatrix>& obs, const ComplexMatrix& rho);

}  // namespace netcm
