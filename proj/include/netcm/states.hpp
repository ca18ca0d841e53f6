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

// Density operators, named states and network state assembly.
//
// Library-wide convention: triangle states use the node-major factor order
// A1 A2 B1 B2 C1 C2. Source a sits on B2 C1, b on C2 A1, c on A2 B1.

#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "netcm/matrix.hpp"
#include "netcm/topology.hpp"

namespace netcm {

/// Operator violating a density-operator or channel invariant.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hermitian, unit-trace, PSD operator with an explicit factor layout.
/// Invariants are checked on construction.
class DensityOperator {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-9;

  DensityOperator(ComplexMatrix matrix, SubsystemLayout layout);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return matrix_.rows(); }

  DensityOperator marginal(const std::vector<std::string>& keep) const;
  DensityOperator marginal_of_node(const std::string& node) const;
  DensityOperator reordered(const std::vector<std::string>& new_order) const;
  /// Same matrix, different factorization (dims product must match).
  DensityOperator relabeled(SubsystemLayout layout) const;

  /// tr(rho * op) for a global operator.
  cplx expectation(const ComplexMatrix& op) const;

 private:
  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

/// Kraus representation; sum K^dagger K = I within 1e-9.
class KrausChannel {
 public:
  static constexpr double kCompletenessTol = 1e-9;

  explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops);
  static KrausChannel identity(std::size_t dim);
  static KrausChannel unitary(const ComplexMatrix& u);
  /// rho -> tr(rho) I/d, via the d^2 operators E_ij / sqrt(d).
  static KrausChannel fully_depolarizing(std::size_t dim);

  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }
  std::size_t input_dim() const { return ops_.front().cols(); }
  std::size_t output_dim() const { return ops_.front().rows(); }

 private:
  std::vector<ComplexMatrix> ops_;
};

/// "A", "B", ... for up to 26 parties, otherwise "1", "2", ...
std::vector<std::string> default_party_labels(std::size_t parties);

ComplexMatrix projector(const std::vector<cplx>& amplitudes);

/// GHZ projector. `levels` picks the two level strings |i..i> + |j..j>;
/// std::nullopt gives the full superposition 1/sqrt(d) sum_k |k..k>.
DensityOperator ghz_state(std::size_t parties, std::size_t local_dim,
                          std::optional<std::pair<std::size_t, std::size_t>> levels = std::pair<std::size_t, std::size_t>{0, 1});
DensityOperator w_state();
/// Three-ququart Dicke state, excitation 1 <= k <= 9.
DensityOperator dicke_state(int excitation);
/// Four-qubit linear cluster state.
DensityOperator cluster4_state();
/// 1/sqrt(d) sum_k |kk>, layout (d, d) labeled A, B.
DensityOperator bell_pair(std::size_t local_dim);

/// v * rho + (1 - v) * I / dim. Visibility and noise weight p are the same parameter.
DensityOperator mix_white_noise(const DensityOperator& rho, double v);

/// Triangle assembly: tensor rho_b (x) rho_c (x) rho_a in source order
/// (C2 A1 A2 B1 B2 C1), then permute to A1 A2 B1 B2 C1 C2.
DensityOperator btn_assemble(const DensityOperator& rho_a, const DensityOperator& rho_b,
                             const DensityOperator& rho_c);

/// Basic-network assembly for any topology: sources are tensored in declared
/// order, then permuted node-major. Node x holds one factor per source that
/// reaches it, ordered by source declaration; factor label "<node>.<source>".
/// Source i's factors follow topology.sources()[i].nodes.
DensityOperator network_assemble(const NetworkTopology& topology,
                                 const std::vector<DensityOperator>& sources);

/// Conjugate every node by its unitary; nodes not in the map are untouched.
DensityOperator apply_local_unitaries(const DensityOperator& rho,
                                      const std::map<std::string, ComplexMatrix>& unitaries);

/// Apply a channel per node. A node whose channel changes dimension becomes a
/// single factor labeled with the node name.
DensityOperator apply_local_channels(const DensityOperator& rho,
                                     const std::map<std::string, KrausChannel>& channels);

DensityOperator convex_mix(const std::vector<DensityOperator>& states,
                           const std::vector<double>& weights);

// Random instances for property tests.
ComplexMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng);
DensityOperator random_state(const SubsystemLayout& layout, std::mt19937_64& rng);
ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);
ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng);
KrausChannel random_channel(std::size_t input_dim, std::size_t output_dim, std::size_t kraus_count,
                            std::mt19937_64& rng);

}  // namespace netcm
