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

#include <cmath>
#include <random>

#include "netcm/linalg.hpp"
#include "netcm/observables.hpp"
#include "netcm/states.hpp"
#include "oracles.hpp"

using namespace netcm;

namespace {

void expect_valid(const DensityOperator& r) {
  EXPECT_LE(hermiticity_error(r.matrix()), 1e-10);
  EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-10);
  EXPECT_GE(min_eigenvalue(r.matrix()), -1e-9);
}

std::vector<cplx> basis_ket(std::size_t dim, std::vector<std::size_t> idx) {
  std::vector<cplx> v(dim);
  for (auto i : idx) v[i] = 1;
  return v;
}

DensityOperator random_pair(std::size_t d, std::mt19937_64& rng) {
  return random_state(SubsystemLayout({d, d}, {"1", "2"}), rng);
}

}  // namespace

TEST(DensityOperatorTest, RejectsInvalid) {
  const SubsystemLayout q({2}, {"A"});
  EXPECT_THROW(DensityOperator(ComplexMatrix{{1, 1}, {0, 0}}, q), InvalidStateError);
  EXPECT_THROW(DensityOperator(ComplexMatrix::identity(2), q), InvalidStateError);
  EXPECT_THROW(DensityOperator(ComplexMatrix::diagonal({1.5, -0.5}), q), InvalidStateError);
  EXPECT_THROW(DensityOperator(ComplexMatrix::identity(3) * cplx(1.0 / 3), q), DimensionError);
}

TEST(Ghz, QubitLevels01) {
  const auto g = ghz_state(3, 2);
  EXPECT_LE(max_abs_diff(g.matrix(), oracle::ket_projector(basis_ket(8, {0, 7}))), 1e-15);
  expect_valid(g);
}

TEST(Ghz, QuquartLevels03) {
  const auto g = ghz_state(3, 4, std::pair<std::size_t, std::size_t>{0, 3});
  EXPECT_LE(max_abs_diff(g.matrix(), oracle::ket_projector(basis_ket(64, {0, 63}))), 1e-15);
}

TEST(Ghz, QuquartFull) {
  const auto g = ghz_state(3, 4, std::nullopt);
  EXPECT_LE(max_abs_diff(g.matrix(), oracle::ket_projector(basis_ket(64, {0, 21, 42, 63}))), 1e-15);
  EXPECT_THROW(ghz_state(3, 2, std::pair<std::size_t, std::size_t>{0, 2}), std::invalid_argument);
}

TEST(W, Basics) {
  const auto w = w_state();
  expect_valid(w);
  EXPECT_EQ(w.matrix()(7, 7), cplx(0));
  const auto m = oracle::partial_trace(w.matrix(), {2, 2, 2}, {true, false, false});
  EXPECT_LE(max_abs_diff(m, ComplexMatrix::diagonal({2.0 / 3, 1.0 / 3})), 1e-15);
}

TEST(Dicke, Examples) {
  EXPECT_LE(max_abs_diff(dicke_state(1).matrix(), oracle::ket_projector(basis_ket(64, {1, 4, 16}))), 1e-15);
  EXPECT_LE(max_abs_diff(dicke_state(9).matrix(), oracle::ket_projector(basis_ket(64, {63}))), 1e-15);
  // k = 2: 002 020 200 011 101 110
  const auto d2 = dicke_state(2).matrix();
  EXPECT_LE(max_abs_diff(d2, oracle::ket_projector(basis_ket(64, {2, 8, 32, 5, 17, 20}))), 1e-15);
  EXPECT_NEAR(d2(2, 8).real(), 1.0 / 6, 1e-15);
  EXPECT_THROW(dicke_state(0), std::invalid_argument);
  EXPECT_THROW(dicke_state(10), std::invalid_argument);
}

TEST(Dicke, PermutationSymmetric) {
  for (int k = 1; k <= 9; ++k) {
    const auto d = dicke_state(k);
    for (const auto& order : std::vector<std::vector<std::string>>{{"B", "A", "C"}, {"A", "C", "B"}, {"C", "B", "A"}})
      EXPECT_LE(max_abs_diff(permute_subsystems(d.matrix(), d.layout(), order), d.matrix()), 1e-15);
  }
}

TEST(Cluster, Stabilizers) {
  const auto cl = cluster4_state();
  expect_valid(cl);
  const auto x = pauli_x(), z = pauli_z(), i = ComplexMatrix::identity(2);
  const auto k4 = [](const std::vector<ComplexMatrix>& f) { return kron_all(f); };
  EXPECT_NEAR(oracle::expect(cl.matrix(), k4({x, z, i, i})), 1, 1e-14);
  EXPECT_NEAR(oracle::expect(cl.matrix(), k4({i, i, z, x})), 1, 1e-14);
  EXPECT_NEAR(oracle::expect(cl.matrix(), k4({z, x, z, i})), 1, 1e-14);
  EXPECT_NEAR(oracle::expect(cl.matrix(), k4({i, z, x, z})), 1, 1e-14);
}

TEST(Bell, Examples) {
  const auto b = bell_pair(2);
  EXPECT_LE(max_abs_diff(b.marginal({"A"}).matrix(), ComplexMatrix::identity(2) * cplx(0.5)), 1e-15);
  EXPECT_NEAR(b.matrix()(0, 0).real(), 0.5, 1e-15);  // |<00|phi>|^2
  EXPECT_NEAR(bell_pair(4).matrix().trace().real(), 1, 1e-15);
}

TEST(Noise, Boundaries) {
  const auto g = ghz_state(3, 2);
  EXPECT_LE(max_abs_diff(mix_white_noise(g, 1).matrix(), g.matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(mix_white_noise(g, 0).matrix(), ComplexMatrix::identity(8) * cplx(0.125)), 1e-15);
  const auto h = mix_white_noise(g, 0.5);
  const auto zz1 = kron_all({pauli_z(), pauli_z(), ComplexMatrix::identity(2)});
  EXPECT_NEAR(oracle::expect(h.matrix(), zz1), 0.5, 1e-15);
  EXPECT_THROW(mix_white_noise(g, 1.1), std::invalid_argument);
}

TEST(Btn, BellPairs) {
  const auto phi = bell_pair(2);
  const auto r = btn_assemble(phi, phi, phi);
  EXPECT_EQ(r.layout().labels(), (std::vector<std::string>{"A1", "A2", "B1", "B2", "C1", "C2"}));
  EXPECT_NEAR(trace_of_product(r.matrix(), r.matrix()).real(), 1, 1e-12);
  EXPECT_LE(max_abs_diff(r.marginal({"A2", "B1"}).matrix(), phi.matrix()), 1e-14);
  EXPECT_LE(max_abs_diff(r.marginal({"B2", "C1"}).matrix(), phi.matrix()), 1e-14);
  EXPECT_LE(max_abs_diff(r.marginal({"A1", "C2"}).reordered({"C2", "A1"}).matrix(), phi.matrix()), 1e-14);
}

TEST(Btn, SourcesLandOnTheirWires) {
  std::mt19937_64 rng(31);
  const auto ra = random_pair(2, rng), rb = random_pair(3, rng), rc = random_pair(2, rng);
  const auto r = btn_assemble(ra, rb, rc);
  EXPECT_EQ(r.layout().dims(), (std::vector<std::size_t>{3, 2, 2, 2, 2, 3}));
  EXPECT_LE(max_abs_diff(r.marginal({"B2", "C1"}).matrix(), ra.matrix()), 1e-14);
  EXPECT_LE(max_abs_diff(r.marginal({"A2", "B1"}).matrix(), rc.matrix()), 1e-14);
  EXPECT_LE(max_abs_diff(r.marginal({"C2", "A1"}).reordered({"C2", "A1"}).matrix(),
                         rb.reordered({"1", "2"}).matrix()),
            1e-14);
}

TEST(Btn, ProductSourcesGiveProductState) {
  std::mt19937_64 rng(32);
  std::vector<ComplexMatrix> f;
  for (int k = 0; k < 6; ++k) f.push_back(random_density_matrix(2, rng));
  const SubsystemLayout two({2, 2}, {"1", "2"});
  const DensityOperator a(kron(f[0], f[1]), two), b(kron(f[2], f[3]), two), c(kron(f[4], f[5]), two);
  const auto r = btn_assemble(a, b, c);
  // node-major: A1=b2 A2=c1 B1=c2 B2=a1 C1=a2 C2=b1
  const auto want = kron_all({f[3], f[4], f[5], f[0], f[1], f[2]});
  EXPECT_LE(max_abs_diff(r.matrix(), want), 1e-14);
}

TEST(Btn, MarginalsFactorize) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 20; ++t) {
    const auto ra = random_pair(2, rng), rb = random_pair(2, rng), rc = random_pair(2, rng);
    const auto r = btn_assemble(ra, rb, rc);
    const auto a = r.marginal_of_node("A").matrix();
    EXPECT_LE(max_abs_diff(a, kron(rb.marginal({"2"}).matrix(), rc.marginal({"1"}).matrix())), 1e-12);
    const auto ab = r.marginal({"A1", "A2", "B1", "B2"}).matrix();
    const auto want = kron_all({rb.marginal({"2"}).matrix(), rc.matrix(), ra.marginal({"1"}).matrix()});
    EXPECT_LE(max_abs_diff(ab, want), 1e-12);
  }
  const auto bad = ghz_state(3, 2);
  EXPECT_THROW(btn_assemble(bad, bell_pair(2), bell_pair(2)), std::invalid_argument);
}

TEST(Network, TriangleMatchesBtnUpToLabels) {
  std::mt19937_64 rng(34);
  const auto ra = random_pair(2, rng), rb = random_pair(2, rng), rc = random_pair(2, rng);
  const auto btn = btn_assemble(ra, rb, rc);
  // triangle(): a = {B, C}, b = {C, A}, c = {A, B}
  const auto net = network_assemble(NetworkTopology::triangle(), {ra, rb, rc});
  EXPECT_EQ(net.layout().labels(), (std::vector<std::string>{"A.b", "A.c", "B.a", "B.c", "C.a", "C.b"}));
  // A.b = A1, A.c = A2, B.c = B1, B.a = B2, C.a = C1, C.b = C2
  const auto re = net.reordered({"A.b", "A.c", "B.c", "B.a", "C.a", "C.b"});
  EXPECT_LE(max_abs_diff(re.matrix(), btn.matrix()), 1e-14);
}

TEST(Network, FiveNodeExample) {
  const NetworkTopology top({"1", "2", "3", "4", "5"},
                            {{"a", {"1", "2", "3"}}, {"b", {"3", "4", "5"}}, {"c", {"1", "5"}}});
  const auto g3 = ghz_state(3, 2);
  const auto r = network_assemble(top, {g3, g3, bell_pair(2)});
  EXPECT_EQ(r.layout().node_labels(), (std::vector<std::string>{"1", "2", "3", "4", "5"}));
  EXPECT_EQ(r.layout().node_dim("1"), 4u);
  EXPECT_EQ(r.layout().node_dim("2"), 2u);
  EXPECT_LE(max_abs_diff(r.marginal({"1.c", "5.c"}).matrix(), bell_pair(2).matrix()), 1e-14);
}

TEST(Unitaries, IdentityAndSpectrum) {
  std::mt19937_64 rng(35);
  const auto phi = bell_pair(2);
  const auto r = btn_assemble(random_pair(2, rng), phi, random_pair(2, rng));
  std::map<std::string, ComplexMatrix> ids{{"A", ComplexMatrix::identity(4)}};
  EXPECT_LE(max_abs_diff(apply_local_unitaries(r, ids).matrix(), r.matrix()), 1e-14);
  std::map<std::string, ComplexMatrix> us;
  for (const auto& n : {"A", "B", "C"}) us[n] = random_unitary(4, rng);
  const auto u = apply_local_unitaries(r, us);
  const auto e1 = eigvals_hermitian(r.matrix()), e2 = eigvals_hermitian(u.matrix());
  for (std::size_t k = 0; k < e1.size(); ++k) EXPECT_NEAR(e1[k], e2[k], 1e-10);
  const auto ma = u.marginal_of_node("A").matrix();
  EXPECT_LE(max_abs_diff(ma, matmul(us["A"], matmul(r.marginal_of_node("A").matrix(), us["A"].adjoint()))), 1e-12);
  std::map<std::string, ComplexMatrix> bad{{"A", ComplexMatrix::identity(4) * cplx(2)}};
  EXPECT_THROW(apply_local_unitaries(r, bad), std::invalid_argument);
}

TEST(Channels, IdentityDepolarizingAndTrace) {
  std::mt19937_64 rng(36);
  const auto r = btn_assemble(random_pair(2, rng), random_pair(2, rng), random_pair(2, rng));
  std::map<std::string, KrausChannel> ids{{"A", KrausChannel::identity(4)}, {"B", KrausChannel::identity(4)}};
  EXPECT_LE(max_abs_diff(apply_local_channels(r, ids).matrix(), r.matrix()), 1e-14);
  std::map<std::string, KrausChannel> dep;
  for (const auto& n : {"A", "B", "C"}) dep.emplace(n, KrausChannel::fully_depolarizing(4));
  EXPECT_LE(max_abs_diff(apply_local_channels(r, dep).matrix(), ComplexMatrix::identity(64) * cplx(1.0 / 64)),
            1e-14);
  for (int t = 0; t < 10; ++t) {
    std::map<std::string, KrausChannel> ch;
    ch.emplace("A", random_channel(4, 2, 3, rng));
    ch.emplace("C", random_channel(4, 3, 2, rng));
    const auto out = apply_local_channels(r, ch);
    EXPECT_NEAR(out.matrix().trace().real(), 1, 1e-12);
    EXPECT_EQ(out.layout().node_dim("A"), 2u);
    EXPECT_EQ(out.layout().node_dim("C"), 3u);
    EXPECT_EQ(out.layout().node_dim("B"), 4u);
  }
  EXPECT_THROW(KrausChannel({ComplexMatrix::identity(2) * cplx(0.5)}), InvalidStateError);
}

TEST(Channels, UnitaryKrausMatchesUnitaries) {
  std::mt19937_64 rng(37);
  const auto r = btn_assemble(random_pair(2, rng), random_pair(2, rng), random_pair(2, rng));
  std::map<std::string, ComplexMatrix> us;
  std::map<std::string, KrausChannel> ks;
  for (const auto& n : {"A", "B", "C"}) {
    us[n] = random_unitary(4, rng);
    ks.emplace(n, KrausChannel::unitary(us[n]));
  }
  EXPECT_LE(max_abs_diff(apply_local_channels(r, ks).matrix(), apply_local_unitaries(r, us).matrix()), 1e-13);
}

TEST(Mix, Examples) {
  const SubsystemLayout q({2}, {"A"});
  const DensityOperator p0(ComplexMatrix::diagonal({1, 0}), q), p1(ComplexMatrix::diagonal({0, 1}), q);
  EXPECT_LE(max_abs_diff(convex_mix({p0}, {1}).matrix(), p0.matrix()), 0);
  EXPECT_LE(max_abs_diff(convex_mix({p0, p1}, {0.5, 0.5}).matrix(), ComplexMatrix::identity(2) * cplx(0.5)), 1e-15);
  EXPECT_THROW(convex_mix({p0, p1}, {0.6, 0.5}), std::invalid_argument);
  EXPECT_THROW(convex_mix({p0, p1}, {1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(convex_mix({p0, bell_pair(2)}, {0.5, 0.5}), DimensionError);
}

TEST(Random, ConstructorsSatisfyInvariants) {
  std::mt19937_64 rng(38);
  for (int t = 0; t < 20; ++t) {
    expect_valid(random_state(SubsystemLayout({2, 3}, {"A", "B"}), rng));
    const auto u = random_unitary(5, rng);
    EXPECT_LE(max_abs_diff(matmul(u.adjoint(), u), ComplexMatrix::identity(5)), 1e-12);
  }
}
