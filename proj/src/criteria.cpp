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


#include "netcm/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "netcm/linalg.hpp"

namespace netcm {

CriterionReport make_report(std::string criterion, double lhs, double rhs, double tolerance) {
  CriterionReport r;
  r.criterion = std::move(criterion);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = tolerance;
  r.pass = r.margin >= -tolerance;
  return r;
}

double psd_tolerance(const RealMatrix& m) { return 1e-8 * (1.0 + spectral_norm(m)); }

RealMatrix BtnDecomposition::sum() const { return t_a + t_b + t_c + r; }

Wiring default_wiring(const SubsystemLayout& layout) {
  Wiring w;
  for (const auto& node : layout.node_labels()) {
    const auto f = layout.node_factors(node);
    if (f.size() != 2)
      throw DimensionError("node " + node + " has " + std::to_string(f.size()) + " factors; a two-factor split is required");
    w.push_back({node, f[0], f[1]});
  }
  return w;
}

std::vector<Wiring> all_wirings(const SubsystemLayout& layout) {
  const Wiring base = default_wiring(layout);
  std::vector<Wiring> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << base.size()); ++mask) {
    Wiring w = base;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (mask & (std::size_t{1} << k)) std::swap(w[k].first, w[k].second);
    out.push_back(std::move(w));
  }
  return out;
}

DensityOperator split_nodes(const DensityOperator& rho, std::size_t d1, std::size_t d2) {
  const auto& lay = rho.layout();
  std::vector<std::size_t> dims;
  std::vector<std::string> labels, nodes;
  for (std::size_t k = 0; k < lay.factor_count(); ++k) {
    const auto& node = lay.factor_nodes()[k];
    if (lay.node_factors(node).size() != 1 || lay.dims()[k] != d1 * d2)
      throw DimensionError("split " + std::to_string(d1) + "x" + std::to_string(d2) + " does not fit node " + node +
                           " (dimension " + std::to_string(lay.node_dim(node)) + ")");
    dims.insert(dims.end(), {d1, d2});
    labels.insert(labels.end(), {node + "1", node + "2"});
    nodes.insert(nodes.end(), {node, node});
  }
  return rho.relabeled(SubsystemLayout(dims, labels, nodes));
}

namespace {

DensityOperator factor_marginal(const DensityOperator& s, std::size_t k) {
  return s.marginal({s.layout().labels()[k]});
}

// Re(K1 (x) K2) for full bases on two single-factor marginals.
RealMatrix kron_term(const DensityOperator& m1, const DensityOperator& m2) {
  const auto b1 = orthogonal_basis(m1.dim()).elements();
  const auto b2 = orthogonal_basis(m2.dim()).elements();
  return real_part(kron(operator_cm_complex(b1, m1.matrix()), operator_cm_complex(b2, m2.matrix())));
}

// CM of the reduced observables of one source. Source factor 0 is the second
// factor of node x, factor 1 the first factor of node y. Result is padded
// into the full layout.
RealMatrix source_term(const DensityOperator& src, std::size_t x, std::size_t y, const DensityOperator& x1,
                       const DensityOperator& y2, const BlockLayout& full, const std::vector<std::string>& names) {
  const std::size_t dx1 = x1.dim(), dx2 = src.layout().dims()[0];
  const std::size_t dy1 = src.layout().dims()[1], dy2 = y2.dim();
  const auto bx1 = orthogonal_basis(dx1), bx2 = orthogonal_basis(dx2);
  const auto by1 = orthogonal_basis(dy1), by2 = orthogonal_basis(dy2);
  std::vector<Observable> obs;
  for (std::size_t a = 0; a < bx1.size(); ++a)
    for (std::size_t b = 0; b < bx2.size(); ++b)
      obs.emplace_back(hermitian_part(reduced_operator(kron(bx1[a], bx2[b]), dx1, dx2, x1.matrix(), 2)), names[x]);
  for (std::size_t a = 0; a < by1.size(); ++a)
    for (std::size_t b = 0; b < by2.size(); ++b)
      obs.emplace_back(hermitian_part(reduced_operator(kron(by1[a], by2[b]), dy1, dy2, y2.matrix(), 1)), names[y]);
  const DensityOperator state =
      src.relabeled(SubsystemLayout(src.layout().dims(), {names[x] + "2", names[y] + "1"}, {names[x], names[y]}));
  const auto g = covariance_matrix(ObservableSet(obs), state);
  RealMatrix out(full.total(), full.total());
  out.assign_slice(full.offset(x), full.offset(x), g.block(0, 0));
  out.assign_slice(full.offset(x), full.offset(y), g.block(0, 1));
  out.assign_slice(full.offset(y), full.offset(x), g.block(1, 0));
  out.assign_slice(full.offset(y), full.offset(y), g.block(1, 1));
  return out;
}

}  // namespace

BtnDecomposition btn_decompose(const DensityOperator& rho_a, const DensityOperator& rho_b,
                               const DensityOperator& rho_c, const ObservableSet* obs) {
  for (const auto* s : {&rho_a, &rho_b, &rho_c})
    if (s->layout().factor_count() != 2) throw std::invalid_argument("btn_decompose: every source must be bipartite");
  const auto a1 = factor_marginal(rho_b, 1), a2 = factor_marginal(rho_c, 0);
  const auto b1 = factor_marginal(rho_c, 1), b2 = factor_marginal(rho_a, 0);
  const auto c1 = factor_marginal(rho_a, 1), c2 = factor_marginal(rho_b, 0);

  const SubsystemLayout lay({a1.dim(), a2.dim(), b1.dim(), b2.dim(), c1.dim(), c2.dim()},
                            {"A1", "A2", "B1", "B2", "C1", "C2"}, {"A", "A", "B", "B", "C", "C"});
  BtnDecomposition d;
  d.observables = full_product_set(lay);
  if (obs != nullptr) {
    bool same = obs->size() == d.observables.size() && obs->node_labels() == d.observables.node_labels();
    try {
      for (std::size_t k = 0; same && k < obs->size(); ++k) {
        const auto mine = node_operator(d.observables[k], lay), theirs = node_operator((*obs)[k], lay);
        same = mine.rows() == theirs.rows() && max_abs_diff(mine, theirs) <= 1e-12;
      }
    } catch (const std::out_of_range&) {
      same = false;  // support names a factor this layout lacks
    }
    if (!same) throw std::invalid_argument("btn_decompose: observables must be the full product basis of every node");
  }
  d.layout = d.observables.layout();
  d.node_labels = {"A", "B", "C"};
  // c on (A2, B1), a on (B2, C1), b on (C2, A1)
  d.t_c = source_term(rho_c, 0, 1, a1, b2, d.layout, d.node_labels);
  d.t_a = source_term(rho_a, 1, 2, b1, c2, d.layout, d.node_labels);
  d.t_b = source_term(rho_b, 2, 0, c1, a2, d.layout, d.node_labels);
  d.r = RealMatrix(d.layout.total(), d.layout.total());
  const std::pair<const DensityOperator*, const DensityOperator*> pairs[3] = {{&a1, &a2}, {&b1, &b2}, {&c1, &c2}};
  for (std::size_t x = 0; x < 3; ++x)
    d.r.assign_slice(d.layout.offset(x), d.layout.offset(x), kron_term(*pairs[x].first, *pairs[x].second));
  return d;
}

Prop2Result prop2_residual(const DensityOperator& rho, const Wiring& wiring) {
  if (wiring.size() != 3 || rho.layout().factor_count() != 6)
    throw DimensionError("prop2_residual: needs three nodes with two factors each");
  const auto& A = wiring[0];
  const auto& B = wiring[1];
  const auto& C = wiring[2];
  const auto pair = [&](const std::string& f, const std::string& s) {
    const auto m = rho.marginal({f, s}).reordered({f, s});
    return m.relabeled(SubsystemLayout(m.layout().dims(), {"1", "2"}));
  };
  const auto d = btn_decompose(pair(B.second, C.first), pair(C.second, A.first), pair(A.second, B.first));
  const std::vector<std::string> order{A.first, A.second, B.first, B.second, C.first, C.second};
  const auto re = rho.reordered(order);
  const DensityOperator canon =
      re.relabeled(SubsystemLayout(re.layout().dims(), {"A1", "A2", "B1", "B2", "C1", "C2"}, {"A", "A", "B", "B", "C", "C"}));
  const auto gamma = covariance_matrix(full_product_set(canon.layout()), canon);
  Prop2Result out;
  out.residual = gamma.matrix() - d.sum();
  out.max_abs = out.residual.max_abs();
  return out;
}

CriterionReport prop2_report(const DensityOperator& rho, const Wiring& wiring, double tol) {
  const auto res = prop2_residual(rho, wiring);
  auto r = make_report("prop2", 0.0, res.max_abs, tol);
  r.details["residual_max_abs"] = res.max_abs;
  return r;
}

RealMatrix xi_matrix(const DensityOperator& rho, const Wiring& wiring) {
  std::vector<ObservableSet> parts;
  for (const auto& s : wiring) {
    if (rho.layout().index_of(s.first) == rho.layout().index_of(s.second))
      throw DimensionError("xi_matrix: node " + s.node + " split uses one factor twice");
    const auto d1 = rho.layout().dims()[rho.layout().index_of(s.first)];
    const auto d2 = rho.layout().dims()[rho.layout().index_of(s.second)];
    if (d1 * d2 != rho.layout().node_dim(s.node))
      throw DimensionError("xi_matrix: split of node " + s.node + " does not cover the node");
    parts.push_back(product_observable_set({orthogonal_basis(d1), orthogonal_basis(d2)}, s.node, {s.first, s.second}));
  }
  const auto gamma = covariance_matrix(concat(parts), rho);
  RealMatrix xi = gamma.matrix();
  for (std::size_t x = 0; x < wiring.size(); ++x) {
    const RealMatrix k = kron_term(rho.marginal({wiring[x].first}), rho.marginal({wiring[x].second}));
    const auto off = gamma.layout().offset(x);
    xi.assign_slice(off, off, gamma.block(x, x) - k);
  }
  return hermitian_part(xi);
}

CriterionReport xi_psd_report(const DensityOperator& rho, const Wiring& wiring) {
  const RealMatrix xi = xi_matrix(rho, wiring);
  auto r = make_report("xi-psd", min_eigenvalue(xi), 0.0, psd_tolerance(xi));
  r.details["dimension"] = static_cast<double>(xi.rows());
  return r;
}

CriterionReport trace_norm_criterion(const BlockCovarianceMatrix& gamma, const NetworkTopology& topology, double tol) {
  if (!is_ncds(topology)) throw NotNcdsError("trace-norm criterion: topology " + topology.describe() + " is not NCDS");
  const std::set<std::string> a(gamma.node_labels().begin(), gamma.node_labels().end());
  const std::set<std::string> b(topology.nodes().begin(), topology.nodes().end());
  if (a != b) throw std::invalid_argument("trace-norm criterion: CM nodes do not match the topology nodes");
  const double lhs = gamma.matrix().trace();
  double rhs = 0;
  std::map<std::string, double> details;
  const auto& labels = gamma.node_labels();
  for (std::size_t x = 0; x < labels.size(); ++x)
    for (std::size_t y = x + 1; y < labels.size(); ++y) {
      const double t = trace_norm(gamma.block(x, y));
      details["trace_norm(" + labels[x] + "," + labels[y] + ")"] = t;
      rhs += 2 * t;
    }
  auto r = make_report("trace-norm", lhs, rhs, tol);
  r.details = std::move(details);
  return r;
}

CriterionReport trace_norm_criterion(const BlockCovarianceMatrix& gamma, double tol) {
  return trace_norm_criterion(gamma, NetworkTopology::pairwise(gamma.node_labels()), tol);
}

std::vector<SourceMask> block_pattern(const NetworkTopology& topology) {
  if (!is_ncds(topology)) throw NotNcdsError("block_pattern: topology " + topology.describe() + " is not NCDS");
  const auto& nodes = topology.nodes();
  std::vector<SourceMask> out;
  for (std::size_t s = 0; s < topology.sources().size(); ++s) {
    SourceMask m;
    m.source = topology.sources()[s].name;
    m.members = topology.sources()[s].nodes;
    m.kinds.assign(nodes.size(), std::vector<BlockKind>(nodes.size(), BlockKind::kZero));
    for (std::size_t x = 0; x < nodes.size(); ++x)
      for (std::size_t y = 0; y < nodes.size(); ++y)
        if (topology.source_contains(s, nodes[x]) && topology.source_contains(s, nodes[y]))
          m.kinds[x][y] = x == y ? BlockKind::kFree : BlockKind::kFixed;
    out.push_back(std::move(m));
  }
  return out;
}

double visibility_threshold(const StateFamily& family, const CriterionFn& criterion, double tol) {
  double lo = 0, hi = 1;
  const bool at_lo = criterion(family(lo)).pass;
  const bool at_hi = criterion(family(hi)).pass;
  if (at_lo == at_hi) throw std::domain_error("visibility_threshold: verdict does not change on [0, 1]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (criterion(family(mid)).pass == at_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Index s = 4a + 2b + c of the computational state |abc>, family slot k.
constexpr int kFamilyStates[7] = {-1, 1, 2, 3, 4, 5, 6};

std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0, theta = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    css += u[k];
    const double t = (css - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0) theta = t;
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
  return v;
}

}  // namespace

double ghz_family_margin(double fidelity, const std::vector<double>& w) {
  if (w.size() != 7) throw DimensionError("ghz_family_margin: need 7 weights");
  double p[8] = {};
  p[0] = p[7] = 0.5 * (fidelity + (1 - fidelity) * w[0]);
  for (int k = 1; k < 7; ++k) p[kFamilyStates[k]] = (1 - fidelity) * w[k];
  double m[3] = {}, zz[3][3] = {};
  for (int s = 0; s < 8; ++s) {
    const double z[3] = {(s & 4) ? -1.0 : 1.0, (s & 2) ? -1.0 : 1.0, (s & 1) ? -1.0 : 1.0};
    for (int i = 0; i < 3; ++i) {
      m[i] += p[s] * z[i];
      for (int j = 0; j < 3; ++j) zz[i][j] += p[s] * z[i] * z[j];
    }
  }
  double margin = 0;
  for (int i = 0; i < 3; ++i) {
    margin += 1 - m[i] * m[i];
    for (int j = i + 1; j < 3; ++j) margin -= 2 * std::abs(zz[i][j] - m[i] * m[j]);
  }
  return margin;
}

DensityOperator ghz_family_state(double fidelity, const std::vector<double>& w) {
  if (w.size() != 7) throw DimensionError("ghz_family_state: need 7 weights");
  std::vector<cplx> plus(8), minus(8);
  plus[0] = plus[7] = minus[0] = 1;
  minus[7] = -1;
  ComplexMatrix m = projector(plus) * cplx(fidelity) + projector(minus) * cplx((1 - fidelity) * w[0]);
  for (int k = 1; k < 7; ++k) m(kFamilyStates[k], kFamilyStates[k]) += (1 - fidelity) * w[k];
  return {m, SubsystemLayout({2, 2, 2}, {"A", "B", "C"})};
}

FidelityBoundResult ghz_fidelity_bound(const FidelityBoundOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<std::vector<double>> starts;
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> x(7);
    for (auto& v : x) v = expo(rng);
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    for (auto& v : x) v /= s;
    starts.push_back(x);
  }

  // Best margin over the family at fixed F; also how many restarts reach it.
  struct Best {
    double value;
    std::vector<double> x;
    int agreeing;
  };
  const auto maximize = [&](double f) {
    Best best{-1e300, {}, 0};
    std::vector<double> finals;
    for (const auto& x0 : starts) {
      std::vector<double> x = x0;
      double fx = ghz_family_margin(f, x);
      double eta = 0.1;
      for (int step = 0; step < opt.ascent_steps && eta > 1e-12; ++step) {
        std::vector<double> g(7);
        const double h = 1e-7;
        for (int k = 0; k < 7; ++k) {
          auto xp = x, xm = x;
          xp[k] += h;
          xm[k] -= h;
          g[k] = (ghz_family_margin(f, xp) - ghz_family_margin(f, xm)) / (2 * h);
        }
        std::vector<double> y(7);
        for (int k = 0; k < 7; ++k) y[k] = x[k] + eta * g[k];
        y = project_simplex(y);
        const double fy = ghz_family_margin(f, y);
        if (fy > fx) {
          x = y;
          fx = fy;
          eta *= 1.5;
        } else {
          eta *= 0.5;
        }
      }
      finals.push_back(fx);
      if (fx > best.value) best = {fx, x, 0};
    }
    for (double v : finals)
      if (std::abs(v - best.value) <= 1e-6) ++best.agreeing;
    return best;
  };

  FidelityBoundResult res;
  double lo = 0, hi = 1;
  Best at_lo = maximize(lo);
  if (at_lo.value < 0) {
    res.notes.push_back("criterion violated already at F = 0");
    return res;
  }
  if (maximize(hi).value >= 0) {
    res.bound = 1;
    res.notes.push_back("criterion satisfiable at F = 1");
    return res;
  }
  while (hi - lo > opt.tol) {
    const double mid = 0.5 * (lo + hi);
    Best b = maximize(mid);
    ++res.bisection_steps;
    if (b.value >= 0) {
      lo = mid;
      at_lo = std::move(b);
    } else {
      hi = mid;
    }
  }
  res.bound = lo;
  res.maximizer = at_lo.x;
  res.converged = at_lo.agreeing >= 2;
  if (!res.converged)
    res.notes.push_back("optimizer non-convergence: only one restart reached the best margin at the bound");
  const auto rho = ghz_family_state(lo, at_lo.x);
  res.margin_at_bound = trace_norm_criterion(covariance_matrix(named_observable_set("pauli-z", rho.layout()), rho)).margin;
  return res;
}

}  // namespace netcm
