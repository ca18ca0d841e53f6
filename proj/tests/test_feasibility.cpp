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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"
#include "netcm/feasibility.hpp"
#include "netcm/linalg.hpp"
#include "netcm/ncmx.hpp"
#include "oracles.hpp"

using namespace netcm;

namespace {

DensityOperator random_pair(std::size_t d, std::mt19937_64& rng) {
  return random_state(SubsystemLayout({d, d}, {"1", "2"}), rng);
}

// BTN state measured with a few random local observables per node: a
// decomposable CM in the interior of the feasible set.
BlockCovarianceMatrix random_btn_cm(std::mt19937_64& rng, int per_node = 3) {
  const auto rho = btn_assemble(random_pair(2, rng), random_pair(2, rng), random_pair(2, rng));
  std::vector<Observable> obs;
  for (const char* n : {"A", "B", "C"})
    for (int j = 0; j < per_node; ++j) obs.emplace_back(random_hermitian(4, rng), n);
  return covariance_matrix(ObservableSet(obs), rho);
}

BlockCovarianceMatrix ghz3_z(double v) {
  const auto r = mix_white_noise(ghz_state(3, 2), v);
  return covariance_matrix(named_observable_set("pauli-z", r.layout()), r);
}

BlockCovarianceMatrix plain(const RealMatrix& m, std::size_t nodes) {
  std::vector<std::size_t> sizes(nodes, m.rows() / nodes);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < nodes; ++k) labels.push_back(std::string(1, static_cast<char>('A' + k)));
  return BlockCovarianceMatrix(m, BlockLayout(sizes), labels);
}

}  // namespace

TEST(Feasibility, RandomBtnCmsAreFeasibleWithValidWitness) {
  std::mt19937_64 rng(81);
  for (int t = 0; t < 10; ++t) {
    const FeasibilityProblem p(random_btn_cm(rng), NetworkTopology::triangle());
    const auto out = solve(p);
    EXPECT_EQ(out.status, FeasibilityStatus::kFeasible) << "residual " << out.residual;
    EXPECT_LE(out.residual, 1e-7);
    EXPECT_TRUE(verify_witness(p, out.witness));
  }
}

TEST(Feasibility, FullBasisBellNetwork) {
  const auto phi = bell_pair(2);
  const auto rho = btn_assemble(phi, phi, phi);
  const FeasibilityProblem p(covariance_matrix(full_product_set(rho.layout()), rho), NetworkTopology::triangle());
  const auto out = solve(p);
  EXPECT_EQ(out.status, FeasibilityStatus::kFeasible) << "residual " << out.residual;
  EXPECT_TRUE(verify_witness(p, out.witness));
}

TEST(Feasibility, GhzThreeIsInfeasibleEvidence) {
  for (double v : {0.6, 0.8, 1.0}) {
    const FeasibilityProblem p(ghz3_z(v), NetworkTopology::triangle());
    const auto out = solve(p);
    EXPECT_EQ(out.status, FeasibilityStatus::kInfeasibleEvidence) << v << " residual " << out.residual;
    EXPECT_GE(out.residual, 1e-6);
    EXPECT_EQ(out.iterations, 50000u);
  }
  // the displayed example matrix itself
  const RealMatrix g{{1, 0.6, 0.6}, {0.6, 1, 0.6}, {0.6, 0.6, 1}};
  EXPECT_EQ(solve(FeasibilityProblem(plain(g, 3), NetworkTopology::triangle())).status, FeasibilityStatus::kInfeasibleEvidence);
}

TEST(Feasibility, BelowThresholdGhzIsFeasible) {
  const FeasibilityProblem p(ghz3_z(0.4), NetworkTopology::triangle());
  const auto out = solve(p);
  EXPECT_EQ(out.status, FeasibilityStatus::kFeasible);
  EXPECT_TRUE(verify_witness(p, out.witness));
}

TEST(Feasibility, ZeroMatrix) {
  const FeasibilityProblem p(plain(RealMatrix(6, 6), 3), NetworkTopology::triangle());
  const auto out = solve(p);
  EXPECT_EQ(out.status, FeasibilityStatus::kFeasible);
  EXPECT_EQ(out.iterations, 0u);
  for (const auto& w : out.witness) EXPECT_EQ(w.max_abs(), 0.0);
}

namespace {
BlockCovarianceMatrix full_btn_cm(std::mt19937_64& rng) {
  const auto rho = btn_assemble(random_pair(2, rng), random_pair(2, rng), random_pair(2, rng));
  return covariance_matrix(full_product_set(rho.layout()), rho);
}
}  // namespace

TEST(Feasibility, FullBasisBtnCms) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 5; ++t) {
    const FeasibilityProblem p(full_btn_cm(rng), NetworkTopology::triangle());
    const auto out = solve(p);
    EXPECT_EQ(out.status, FeasibilityStatus::kFeasible) << "residual " << out.residual;
    EXPECT_TRUE(verify_witness(p, out.witness));
  }
}

// Out of budget: evidence if the tail stays >= 10 tol, otherwise inconclusive.
TEST(Feasibility, BudgetExhaustionFollowsTailRule) {
  std::mt19937_64 rng(82);
  const FeasibilityProblem p(full_btn_cm(rng), NetworkTopology::triangle());
  const double tol = 1e-7;
  const auto full = solve(p, tol);
  ASSERT_EQ(full.status, FeasibilityStatus::kFeasible);
  ASSERT_GT(full.iterations, 5u);

  const auto early = solve(p, tol, 2);
  EXPECT_EQ(early.iterations, 2u);
  EXPECT_EQ(early.status, FeasibilityStatus::kInfeasibleEvidence);

  const auto& h = full.residual_history;
  std::size_t k = 0;
  while (k < h.size() && h[k] >= 10 * tol) ++k;
  ASSERT_LT(k, h.size());
  ASSERT_GT(h[k], tol);  // this seed has an iterate strictly between tol and 10 tol
  const auto mid = solve(p, tol, k + 1);
  EXPECT_EQ(mid.status, FeasibilityStatus::kInconclusive);
  EXPECT_DOUBLE_EQ(mid.residual, h[k]);
}

TEST(Feasibility, Errors) {
  EXPECT_THROW(FeasibilityProblem(ghz3_z(0.5), parse_topology("A,B,C|A,B;B,A")), NotNcdsError);
  EXPECT_THROW(FeasibilityProblem(ghz3_z(0.5), parse_topology("pairwise:4")), DimensionError);
  EXPECT_THROW(FeasibilityProblem(ghz3_z(0.5), parse_topology("A,B,D|A,B;B,D")), std::invalid_argument);
  const FeasibilityProblem p(ghz3_z(0.5), NetworkTopology::triangle());
  EXPECT_THROW(verify_witness(p, {RealMatrix(3, 3)}), DimensionError);
  EXPECT_THROW(verify_witness(p, {RealMatrix(3, 3), RealMatrix(3, 3), RealMatrix(2, 2)}), DimensionError);
}

// Witness from the explicit BTN decomposition with R's diagonal blocks folded
// into source terms.
TEST(VerifyWitness, BtnDecompositionWitness) {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 5; ++t) {
    const auto ra = random_pair(2, rng), rb = random_pair(2, rng), rc = random_pair(2, rng);
    const auto d = btn_decompose(ra, rb, rc);
    const auto rho = btn_assemble(ra, rb, rc);
    const FeasibilityProblem p(covariance_matrix(full_product_set(rho.layout()), rho), NetworkTopology::triangle());
    const auto& L = d.layout;
    const auto rblock = [&](std::size_t x) {
      RealMatrix m(48, 48);
      m.assign_slice(L.offset(x), L.offset(x), block_of(d.r, L, x, x));
      return m;
    };
    // a = {B, C} takes R_B, b = {C, A} takes R_C, c = {A, B} takes R_A
    std::vector<RealMatrix> w{d.t_a + rblock(1), d.t_b + rblock(2), d.t_c + rblock(0)};
    EXPECT_TRUE(verify_witness(p, w, 1e-8));

    auto neg = w;
    const auto e = eigh(neg[0]);
    RealMatrix u(48, 1);
    for (int i = 0; i < 48; ++i) u(i, 0) = e.vectors(i, 0);
    neg[0] -= matmul(u, u.transpose()) * (e.values[0] + 1e-3);
    neg[1] += matmul(u, u.transpose()) * (e.values[0] + 1e-3);  // keep the sums intact
    EXPECT_NEAR(min_eigenvalue(neg[0]), -1e-3, 1e-9);
    EXPECT_FALSE(verify_witness(p, neg, 1e-8));

    auto off = w;
    off[2](L.offset(0) + 1, L.offset(1) + 2) += 0.01;
    off[2](L.offset(1) + 2, L.offset(0) + 1) += 0.01;
    EXPECT_FALSE(verify_witness(p, off, 1e-8));
  }
}

TEST(VerifyWitness, UncoveredPairMustVanish) {
  // single source on {A, B}: C's correlations with A have nowhere to go
  const RealMatrix g{{1, 0.2, 0.1}, {0.2, 1, 0}, {0.1, 0, 1}};
  const FeasibilityProblem p(plain(g, 3), parse_topology("A,B,C|A,B"));
  const auto out = solve(p, 1e-7, 2000);
  EXPECT_NE(out.status, FeasibilityStatus::kFeasible);
  EXPECT_NEAR(out.residual, 1.0, 1e-12);  // C's diagonal is in no source at all
  const FeasibilityProblem ps(plain(g, 3), parse_topology("A,B,C|A,B"), true);
  const auto outs = solve(ps, 1e-7, 2000);
  EXPECT_NEAR(outs.residual, 0.1, 1e-12);  // slack absorbs C, the AC block remains
}

TEST(Feasibility, SlackAgreesWithEqualityWhenEveryNodeIsCovered) {
  std::mt19937_64 rng(84);
  for (int t = 0; t < 3; ++t) {
    const auto g = random_btn_cm(rng);
    const FeasibilityProblem eq(g, NetworkTopology::triangle()), sl(g, NetworkTopology::triangle(), true);
    const auto a = solve(eq), b = solve(sl);
    EXPECT_EQ(a.status, FeasibilityStatus::kFeasible);
    EXPECT_EQ(b.status, FeasibilityStatus::kFeasible);
    EXPECT_TRUE(verify_witness(sl, b.witness));
    // fold the slack remainders back into sources: an equality witness
    auto w = b.witness;
    const auto& L = g.layout();
    const std::size_t holder[3] = {2, 0, 1};  // A in c, B in a, C in b
    for (std::size_t x = 0; x < 3; ++x) {
      RealMatrix rem = g.block(x, x);
      for (const auto& m : b.witness) rem -= block_of(m, L, x, x);
      RealMatrix full(g.dim(), g.dim());
      full.assign_slice(L.offset(x), L.offset(x), rem);
      w[holder[x]] += full;
    }
    EXPECT_TRUE(verify_witness(eq, w, 2e-7));
  }
  for (double v : {0.6, 1.0}) {
    EXPECT_EQ(solve(FeasibilityProblem(ghz3_z(v), NetworkTopology::triangle(), true)).status,
              FeasibilityStatus::kInfeasibleEvidence);
  }
}

TEST(Feasibility, AffineProjectionIsIdempotent) {
  std::mt19937_64 rng(85);
  const FeasibilityProblem p(random_btn_cm(rng), NetworkTopology::triangle());
  std::vector<RealMatrix> terms;
  std::normal_distribution<double> n;
  for (int k = 0; k < 3; ++k) {
    RealMatrix m(9, 9);
    for (auto& v : m.values()) v = n(rng);
    terms.push_back(hermitian_part(m));
  }
  const auto once = project_affine(p, terms), twice = project_affine(p, once);
  for (int k = 0; k < 3; ++k) EXPECT_LE(max_abs_diff(once[k], twice[k]), 1e-12);
  // and lands on the affine set: off-diagonal and diagonal constraints hold
  RealMatrix sum(9, 9);
  for (const auto& m : once) sum += m;
  EXPECT_LE(max_abs_diff(sum, p.gamma.matrix()), 1e-12);
  // Euclidean projection: the move is orthogonal to directions inside the set
  std::vector<RealMatrix> other = project_affine(p, {terms[1], terms[2], terms[0]});
  double inner = 0;
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 81; ++i)
      inner += (terms[k].values()[i] - once[k].values()[i]) * (other[k].values()[i] - once[k].values()[i]);
  EXPECT_LE(inner, 1e-10);
}

TEST(Feasibility, TraceNormViolationIsNeverFeasible) {
  std::vector<BlockCovarianceMatrix> corpus;
  for (double v : {0.55, 0.7, 1.0}) corpus.push_back(ghz3_z(v));
  for (double v : {0.8, 1.0}) {
    const auto w = mix_white_noise(w_state(), v);
    corpus.push_back(covariance_matrix(named_observable_set("w-set", w.layout()), w));
  }
  for (const auto& g : corpus) {
    ASSERT_FALSE(trace_norm_criterion(g).pass);
    const auto out = solve(FeasibilityProblem(g, NetworkTopology::triangle()), 1e-7, 5000);
    EXPECT_NE(out.status, FeasibilityStatus::kFeasible);
  }
}

TEST(Feasibility, SoundnessAndTraceNormConsistencyOnFeasibleCms) {
  std::mt19937_64 rng(86);
  for (int t = 0; t < 5; ++t) {
    const auto g = random_btn_cm(rng, 2);
    const FeasibilityProblem p(g, NetworkTopology::triangle());
    const auto out = solve(p);
    if (out.status == FeasibilityStatus::kFeasible) {
      EXPECT_TRUE(verify_witness(p, out.witness));
      EXPECT_TRUE(trace_norm_criterion(g).pass);
    }
  }
}

TEST(Feasibility, ResidualMonotoneAfterWarmup) {
  std::mt19937_64 rng(87);
  std::vector<FeasibilityOutcome> runs;
  for (int t = 0; t < 3; ++t) runs.push_back(solve(FeasibilityProblem(random_btn_cm(rng), NetworkTopology::triangle())));
  for (int t = 0; t < 3; ++t) runs.push_back(solve(FeasibilityProblem(full_btn_cm(rng), NetworkTopology::triangle())));
  for (double v : {0.51, 0.8}) runs.push_back(solve(FeasibilityProblem(ghz3_z(v), NetworkTopology::triangle()), 1e-7, 5000));
  const auto rho = mix_white_noise(ghz_state(4, 2), 0.5);
  runs.push_back(solve(FeasibilityProblem(covariance_matrix(named_observable_set("full-product", rho.layout()), rho),
                                          NetworkTopology::pairwise({"A", "B", "C", "D"})), 1e-7, 3000));
  for (const auto& r : runs) {
    std::size_t bad = 0;
    double worst = 0;
    for (std::size_t k = 101; k < r.residual_history.size(); ++k) {
      const double up = r.residual_history[k] - r.residual_history[k - 1];
      if (up > 1e-12) ++bad;
      worst = std::max(worst, up);
    }
    EXPECT_EQ(bad, 0u) << "largest increase " << worst << " over " << r.residual_history.size() << " iterations";
  }
}

TEST(WitnessExport, FilesAndManifest) {
  std::mt19937_64 rng(88);
  const FeasibilityProblem p(random_btn_cm(rng), NetworkTopology::triangle());
  const auto out = solve(p);
  const auto dir = std::filesystem::temp_directory_path() / "netcm_witness_test";
  std::filesystem::remove_all(dir);
  const auto files = export_witness(p, out, dir.string());
  ASSERT_EQ(files.size(), 4u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(max_abs_diff(load_ncmx(files[k]), to_complex(out.witness[k])), 0.0);
  std::ifstream in(files[3]);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["status"], "feasible");
  EXPECT_EQ(j["iterations"], out.iterations);
  EXPECT_EQ(j["masks"].size(), 3u);
  EXPECT_EQ(j["masks"][2]["blocks"][0][1], "fixed");
  EXPECT_EQ(j["topology"]["sources"][0]["nodes"][0], "B");
  EXPECT_FALSE(j.contains("caveat"));

  const FeasibilityProblem bad(ghz3_z(1.0), NetworkTopology::triangle());
  const auto ob = solve(bad, 1e-7, 1000);
  const auto f2 = export_witness(bad, ob, dir.string(), "ghz");
  std::ifstream in2(f2.back());
  const auto j2 = nlohmann::json::parse(in2);
  EXPECT_EQ(j2["status"], "infeasible-evidence");
  EXPECT_EQ(j2["caveat"], kInfeasibleEvidenceCaveat);
  std::filesystem::remove_all(dir);
}
