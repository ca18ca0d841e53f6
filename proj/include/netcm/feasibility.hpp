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

#include <cstddef>
#include <string>
#include <vector>

#include "netcm/block_cm.hpp"
#include "netcm/criteria.hpp"
#include "netcm/topology.hpp"

namespace netcm {

/// Carried verbatim by every report that states infeasible-evidence.
inline constexpr const char* kInfeasibleEvidenceCaveat =
    "infeasible-evidence is not a certificate of infeasibility: the residual plateau of the "
    "projection method is numerical evidence only; a dual certificate would require an SDP "
    "solver, which is out of scope";

/// Does gamma split into one PSD term per source, each supported on that
/// source's nodes, with off-diagonal blocks fixed by gamma (or zero) and the
/// per-node diagonal blocks summing to gamma's? With `slack` the diagonal sum
/// only has to stay below gamma's in the PSD order.
struct FeasibilityProblem {
  FeasibilityProblem(BlockCovarianceMatrix gamma, NetworkTopology topology, bool slack = false);

  BlockCovarianceMatrix gamma;
  NetworkTopology topology;
  std::vector<SourceMask> masks;
  bool slack = false;
  // gamma block index of each topology node
  std::vector<std::size_t> block_of_node;
};

enum class FeasibilityStatus { kFeasible, kInfeasibleEvidence, kInconclusive };
std::string to_string(FeasibilityStatus s);

struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::kInconclusive;
  // One full-size matrix per source (gamma's dimension, zero outside the
  // source's nodes). Filled whatever the status; meaningful when feasible.
  std::vector<RealMatrix> witness;
  double residual = 0;
  std::size_t iterations = 0;
  std::vector<double> residual_history;  // after each iteration
};

/// Dykstra projections between the PSD cones of the per-source terms and the
/// affine constraint set. Residual is the largest constraint violation of the
/// PSD iterate, including any nonzero gamma block between nodes with no
/// common source.
FeasibilityOutcome solve(const FeasibilityProblem& problem, double tol = 1e-7,
                         std::size_t max_iter = 50000);

/// Independent check of a witness: PSD within tol, off-diagonal blocks as the
/// masks demand, diagonal blocks summing to gamma (or below it with slack).
/// Throws DimensionError on shape mismatch.
bool verify_witness(const FeasibilityProblem& problem, const std::vector<RealMatrix>& witness,
                    double tol = 1e-7);

/// Orthogonal projection of full-size per-source matrices onto the affine set
/// (equality form; slack terms excluded). Exposed for testing.
std::vector<RealMatrix> project_affine(const FeasibilityProblem& problem,
                                       const std::vector<RealMatrix>& terms);

/// Writes <dir>/<stem>_<source>.ncmx per source and <dir>/<stem>.json with
/// topology, masks, status, residual and iterations. Returns written paths.
std::vector<std::string> export_witness(const FeasibilityProblem& problem,
                                        const FeasibilityOutcome& outcome, const std::string& dir,
                                        const std::string& stem = "witness");

}  // namespace netcm
