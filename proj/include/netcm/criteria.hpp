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


// Network-compatibility criteria on covariance matrices.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "netcm/block_cm.hpp"
#include "netcm/covariance.hpp"
#include "netcm/observables.hpp"
#include "netcm/states.hpp"
#include "netcm/topology.hpp"

namespace netcm {

/// Verdict record. pass <=> margin >= -tolerance, margin = lhs - rhs.
struct CriterionReport {
  std::string criterion;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool pass = false;
  double tolerance = 0;
  std::map<std::string, double> details;
  std::vector<std::string> notes;
};

CriterionReport make_report(std::string criterion, double lhs, double rhs, double tolerance);

/// Scale-aware PSD tolerance used by every PSD verdict: 1e-8 (1 + ||m||_2).
double psd_tolerance(const RealMatrix& m);

/// Which factor of a node plays the role of X1 and which X2.
struct NodeSplit {
  std::string node;
  std::string first;
  std::string second;
};
using Wiring = std::vector<NodeSplit>;

/// Each node's two factors in layout order. Throws unless every node has
/// exactly two factors.
Wiring default_wiring(const SubsystemLayout& layout);
/// All 2^N assignments obtained by swapping the factors of some nodes.
std::vector<Wiring> all_wirings(const SubsystemLayout& layout);

/// Re-factor every single-factor node of dimension d1*d2 into factors
/// "<node>1" (dim d1) and "<node>2" (dim d2), first factor most significant.
DensityOperator split_nodes(const DensityOperator& rho, std::size_t d1, std::size_t d2);

/// Triangle decomposition Gamma = T_a + T_b + T_c + R, all padded to the full
/// CM on nodes A, B, C with the full product basis (A1 outermost in A, ...).
struct BtnDecomposition {
  RealMatrix t_a;
  RealMatrix t_b;
  RealMatrix t_c;
  RealMatrix r;
  BlockLayout layout;
  std::vector<std::string> node_labels;
  ObservableSet observables;

  RealMatrix sum() const;
};

/// Sources: a on (B2, C1), b on (C2, A1), c on (A2, B1), factor order as given.
/// T_s is the CM of the reduced observables on source s; R = diag(R_A, R_B, R_C)
/// with R_X = Re(K(rho^{X1}) (x) K(rho^{X2})), K the unsymmetrized factor CMs
/// (whose real parts are the factor CMs). If `obs` is given it must be the
/// full product basis of the assembled layout.
BtnDecomposition btn_decompose(const DensityOperator& rho_a, const DensityOperator& rho_b,
                               const DensityOperator& rho_c, const ObservableSet* obs = nullptr);

struct Prop2Result {
  RealMatrix residual;  // Gamma(rho) - RHS(rho)
  double max_abs = 0;
};

/// Gamma(rho) minus the triangle right-hand side built from rho's own
/// marginals, using all three sources (A2B1, B2C1, C2A1). The first three
/// nodes of the wiring take the roles of A, B, C.
Prop2Result prop2_residual(const DensityOperator& rho, const Wiring& wiring);
CriterionReport prop2_report(const DensityOperator& rho, const Wiring& wiring, double tol = 1e-9);

/// Full-basis CM minus diag_X Re(K(rho^{X1}) (x) K(rho^{X2})), nodes in wiring order.
RealMatrix xi_matrix(const DensityOperator& rho, const Wiring& wiring);
/// lhs = min eigenvalue of Xi, rhs = 0, tolerance psd_tolerance(Xi).
CriterionReport xi_psd_report(const DensityOperator& rho, const Wiring& wiring);

/// tr(Gamma) >= 2 sum_{x<y} ||gamma_xy||_tr. The topology must be NCDS and
/// cover exactly gamma's nodes; it is used only for that guard.
CriterionReport trace_norm_criterion(const BlockCovarianceMatrix& gamma, const NetworkTopology& topology,
                                     double tol = 1e-9);
/// Same with the all-pairs bipartite topology on gamma's nodes.
CriterionReport trace_norm_criterion(const BlockCovarianceMatrix& gamma, double tol = 1e-9);

enum class BlockKind { kZero, kFixed, kFree };

/// Per-source block pattern: free diagonal blocks on the source's nodes,
/// fixed (= gamma_xy) off-diagonal blocks inside the source, zero elsewhere.
struct SourceMask {
  std::string source;
  std::vector<std::string> members;
  std::vector<std::vector<BlockKind>> kinds;  // node x node, topology node order
};
std::vector<SourceMask> block_pattern(const NetworkTopology& topology);

using StateFamily = std::function<DensityOperator(double)>;
using CriterionFn = std::function<CriterionReport(const DensityOperator&)>;

/// Bisection for the pass/fail boundary of criterion(family(v)) on [0, 1],
/// to absolute accuracy tol. std::domain_error if the verdict is the same at
/// both ends.
double visibility_threshold(const StateFamily& family, const CriterionFn& criterion, double tol = 1e-7);

struct FidelityBoundOptions {
  int restarts = 20;
  int ascent_steps = 400;
  double tol = 1e-6;
  std::uint64_t seed = 7;
};

struct FidelityBoundResult {
  double bound = 0;
  // weights of |GHZ->, |001>, |010>, |011>, |100>, |101>, |110> in rho~ at the bound
  std::vector<double> maximizer;
  double margin_at_bound = 0;  // recomputed through covariance_matrix + trace_norm_criterion
  int bisection_steps = 0;
  bool converged = false;
  std::vector<std::string> notes;
};

/// rho = F |GHZ><GHZ| + (1 - F) rho~ with <GHZ|rho~|GHZ> = 0, rho~ a mixture of
/// |GHZ-> and the six computational states outside {000, 111}. Largest F for
/// which some rho~ satisfies the trace-norm criterion with pauli-z.
FidelityBoundResult ghz_fidelity_bound(const FidelityBoundOptions& options = {});

/// Trace-norm margin of the family member, from its sigma_z statistics.
double ghz_family_margin(double fidelity, const std::vector<double>& weights);
DensityOperator ghz_family_state(double fidelity, const std::vector<double>& weights);

}  // namespace netcm
