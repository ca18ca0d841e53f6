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

#include "netcm/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "netcm/linalg.hpp"
#include "netcm/ncmx.hpp"

namespace netcm {

namespace {

// One optimisation variable: a compact symmetric matrix over its members'
// blocks (topology node indices). Slack terms have a single member.
struct Term {
  std::vector<std::size_t> members;
  std::vector<std::size_t> offsets;  // compact offset of each member, plus total
};

struct Setup {
  std::vector<Term> terms;  // sources first, then slack terms
  std::size_t source_count = 0;
  std::vector<std::size_t> cover;  // number of terms holding each node
  std::vector<RealMatrix> gamma_blocks;  // row-major node x node
  double constant_violation = 0;  // gamma mass no variable can absorb
  std::size_t n = 0;
  const RealMatrix& g(std::size_t x, std::size_t y) const { return gamma_blocks[x * n + y]; }
};

Setup make_setup(const FeasibilityProblem& p) {
  Setup s;
  const auto& nodes = p.topology.nodes();
  s.n = nodes.size();
  const auto& lay = p.gamma.layout();
  const auto bsize = [&](std::size_t x) { return lay.size(p.block_of_node[x]); };
  for (std::size_t x = 0; x < s.n; ++x)
    for (std::size_t y = 0; y < s.n; ++y) s.gamma_blocks.push_back(p.gamma.block(p.block_of_node[x], p.block_of_node[y]));

  const auto add = [&](std::vector<std::size_t> members) {
    Term t;
    t.members = std::move(members);
    std::size_t off = 0;
    for (auto m : t.members) {
      t.offsets.push_back(off);
      off += bsize(m);
    }
    t.offsets.push_back(off);
    s.terms.push_back(std::move(t));
  };
  for (const auto& src : p.topology.sources()) {
    std::vector<std::size_t> m;
    for (const auto& name : src.nodes) m.push_back(p.topology.node_index(name));
    std::sort(m.begin(), m.end());
    add(std::move(m));
  }
  s.source_count = s.terms.size();
  if (p.slack)
    for (std::size_t x = 0; x < s.n; ++x) add({x});

  s.cover.assign(s.n, 0);
  std::vector<std::vector<bool>> shared(s.n, std::vector<bool>(s.n, false));
  for (const auto& t : s.terms) {
    for (auto a : t.members) {
      ++s.cover[a];
      for (auto b : t.members) shared[a][b] = true;
    }
  }
  for (std::size_t x = 0; x < s.n; ++x)
    for (std::size_t y = 0; y < s.n; ++y)
      if (!shared[x][y]) s.constant_violation = std::max(s.constant_violation, s.g(x, y).max_abs());
  return s;
}

RealMatrix sub(const RealMatrix& m, const Term& t, std::size_t i, std::size_t j) {
  return m.slice(t.offsets[i], t.offsets[j], t.offsets[i + 1] - t.offsets[i], t.offsets[j + 1] - t.offsets[j]);
}

// Exact Euclidean projection onto the affine constraints.
void affine_in_place(const Setup& s, std::vector<RealMatrix>& x) {
  for (std::size_t k = 0; k < s.source_count; ++k) {
    const auto& t = s.terms[k];
    for (std::size_t i = 0; i < t.members.size(); ++i)
      for (std::size_t j = 0; j < t.members.size(); ++j)
        if (i != j) x[k].assign_slice(t.offsets[i], t.offsets[j], s.g(t.members[i], t.members[j]));
  }
  for (std::size_t node = 0; node < s.n; ++node) {
    if (s.cover[node] == 0) continue;
    RealMatrix corr = s.g(node, node);
    for (std::size_t k = 0; k < s.terms.size(); ++k) {
      const auto& t = s.terms[k];
      for (std::size_t i = 0; i < t.members.size(); ++i)
        if (t.members[i] == node) corr -= sub(x[k], t, i, i);
    }
    corr *= 1.0 / static_cast<double>(s.cover[node]);
    for (std::size_t k = 0; k < s.terms.size(); ++k) {
      const auto& t = s.terms[k];
      for (std::size_t i = 0; i < t.members.size(); ++i)
        if (t.members[i] == node) x[k].assign_slice(t.offsets[i], t.offsets[i], sub(x[k], t, i, i) + corr);
    }
  }
}

double violation(const Setup& s, const std::vector<RealMatrix>& x) {
  double r = s.constant_violation;
  for (std::size_t k = 0; k < s.source_count; ++k) {
    const auto& t = s.terms[k];
    for (std::size_t i = 0; i < t.members.size(); ++i)
      for (std::size_t j = 0; j < t.members.size(); ++j)
        if (i != j) r = std::max(r, max_abs_diff(sub(x[k], t, i, j), s.g(t.members[i], t.members[j])));
  }
  for (std::size_t node = 0; node < s.n; ++node) {
    RealMatrix d = s.g(node, node);
    for (std::size_t k = 0; k < s.terms.size(); ++k) {
      const auto& t = s.terms[k];
      for (std::size_t i = 0; i < t.members.size(); ++i)
        if (t.members[i] == node) d -= sub(x[k], t, i, i);
    }
    r = std::max(r, d.max_abs());
  }
  return r;
}

RealMatrix expand(const FeasibilityProblem& p, const Term& t, const RealMatrix& c) {
  const auto& lay = p.gamma.layout();
  RealMatrix full(p.gamma.dim(), p.gamma.dim());
  for (std::size_t i = 0; i < t.members.size(); ++i)
    for (std::size_t j = 0; j < t.members.size(); ++j)
      full.assign_slice(lay.offset(p.block_of_node[t.members[i]]), lay.offset(p.block_of_node[t.members[j]]),
                        sub(c, t, i, j));
  return full;
}

RealMatrix compact(const FeasibilityProblem& p, const Term& t, const RealMatrix& full) {
  const auto& lay = p.gamma.layout();
  RealMatrix c(t.offsets.back(), t.offsets.back());
  for (std::size_t i = 0; i < t.members.size(); ++i)
    for (std::size_t j = 0; j < t.members.size(); ++j) {
      const std::size_t bx = p.block_of_node[t.members[i]], by = p.block_of_node[t.members[j]];
      c.assign_slice(t.offsets[i], t.offsets[j], full.slice(lay.offset(bx), lay.offset(by), lay.size(bx), lay.size(by)));
    }
  return c;
}

const char* kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::kZero: return "zero";
    case BlockKind::kFixed: return "fixed";
    case BlockKind::kFree: return "free";
  }
  return "?";
}

}  // namespace

FeasibilityProblem::FeasibilityProblem(BlockCovarianceMatrix g, NetworkTopology t, bool s)
    : gamma(std::move(g)), topology(std::move(t)), masks(block_pattern(topology)), slack(s) {
  const auto& nodes = topology.nodes();
  if (nodes.size() != gamma.node_labels().size())
    throw DimensionError("feasibility: CM has " + std::to_string(gamma.node_labels().size()) +
                         " nodes, topology has " + std::to_string(nodes.size()));
  for (const auto& n : nodes) {
    try {
      block_of_node.push_back(gamma.node_index(n));
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("feasibility: topology node '" + n + "' has no block in the CM");
    }
  }
}

std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::kFeasible: return "feasible";
    case FeasibilityStatus::kInfeasibleEvidence: return "infeasible-evidence";
    case FeasibilityStatus::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

FeasibilityOutcome solve(const FeasibilityProblem& problem, double tol, std::size_t max_iter) {
  if (!(tol > 0)) throw std::invalid_argument("solve: tol must be positive");
  const Setup s = make_setup(problem);
  const double share = 1.0 / static_cast<double>(s.terms.size());

  std::vector<RealMatrix> x;
  for (const auto& t : s.terms) {
    RealMatrix c(t.offsets.back(), t.offsets.back());
    for (std::size_t i = 0; i < t.members.size(); ++i)
      for (std::size_t j = 0; j < t.members.size(); ++j)
        c.assign_slice(t.offsets[i], t.offsets[j], s.g(t.members[i], t.members[j]) * share);
    x.push_back(psd_project(c));
  }
  std::vector<RealMatrix> p, q;
  for (const auto& m : x) {
    p.emplace_back(m.rows(), m.cols());
    q.emplace_back(m.rows(), m.cols());
  }

  FeasibilityOutcome out;
  double r = violation(s, x);
  std::size_t it = 0;
  while (r > tol && it < max_iter) {
    std::vector<RealMatrix> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + p[k];
    affine_in_place(s, y);
    for (std::size_t k = 0; k < x.size(); ++k) {
      p[k] = x[k] + p[k] - y[k];
      const RealMatrix z = y[k] + q[k];
      x[k] = psd_project(hermitian_part(z));
      q[k] = z - x[k];
    }
    r = violation(s, x);
    out.residual_history.push_back(r);
    ++it;
  }
  out.residual = r;
  out.iterations = it;
  for (std::size_t k = 0; k < s.source_count; ++k) out.witness.push_back(expand(problem, s.terms[k], x[k]));

  if (r <= tol) {
    out.status = FeasibilityStatus::kFeasible;
  } else {
    const auto& h = out.residual_history;
    const std::size_t tail = std::max<std::size_t>(1, h.size() / 10);
    const bool plateau = !h.empty() && std::all_of(h.end() - static_cast<std::ptrdiff_t>(std::min(tail, h.size())), h.end(),
                                                   [&](double v) { return v >= 10 * tol; });
    out.status = plateau ? FeasibilityStatus::kInfeasibleEvidence : FeasibilityStatus::kInconclusive;
  }
  return out;
}

std::vector<RealMatrix> project_affine(const FeasibilityProblem& problem, const std::vector<RealMatrix>& terms) {
  FeasibilityProblem eq(problem.gamma, problem.topology, false);
  const Setup s = make_setup(eq);
  if (terms.size() != s.source_count) throw DimensionError("project_affine: one matrix per source expected");
  std::vector<RealMatrix> c;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k].rows() != eq.gamma.dim() || terms[k].cols() != eq.gamma.dim())
      throw DimensionError("project_affine: term shape does not match the CM");
    c.push_back(compact(eq, s.terms[k], terms[k]));
  }
  affine_in_place(s, c);
  std::vector<RealMatrix> out;
  for (std::size_t k = 0; k < c.size(); ++k) out.push_back(expand(eq, s.terms[k], c[k]));
  return out;
}

bool verify_witness(const FeasibilityProblem& problem, const std::vector<RealMatrix>& witness, double tol) {
  const auto& srcs = problem.topology.sources();
  const std::size_t dim = problem.gamma.dim();
  if (witness.size() != srcs.size())
    throw DimensionError("verify_witness: expected " + std::to_string(srcs.size()) + " matrices, got " +
                         std::to_string(witness.size()));
  for (const auto& w : witness)
    if (w.rows() != dim || w.cols() != dim) throw DimensionError("verify_witness: witness shape does not match the CM");

  const auto& lay = problem.gamma.layout();
  const auto& nodes = problem.topology.nodes();
  const std::size_t n = nodes.size();
  const auto blk = [&](const RealMatrix& m, std::size_t x, std::size_t y) {
    return block_of(m, lay, problem.block_of_node[x], problem.block_of_node[y]);
  };

  for (std::size_t k = 0; k < witness.size(); ++k) {
    const auto& w = witness[k];
    if (!w.all_finite() || hermiticity_error(w) > tol) return false;
    if (min_eigenvalue(hermitian_part(w)) < -tol) return false;
    const auto& kinds = problem.masks[k].kinds;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const RealMatrix b = blk(w, x, y);
        if (kinds[x][y] == BlockKind::kZero && b.max_abs() > tol) return false;
        if (kinds[x][y] == BlockKind::kFixed && max_abs_diff(b, problem.gamma.block(problem.block_of_node[x], problem.block_of_node[y])) > tol)
          return false;
      }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      RealMatrix d = problem.gamma.block(problem.block_of_node[x], problem.block_of_node[y]);
      for (const auto& w : witness) d -= blk(w, x, y);
      if (x != y || !problem.slack) {
        if (d.max_abs() > tol) return false;
      } else if (min_eigenvalue(hermitian_part(d)) < -tol) {
        return false;
      }
    }
  return true;
}

std::vector<std::string> export_witness(const FeasibilityProblem& problem, const FeasibilityOutcome& outcome,
                                        const std::string& dir, const std::string& stem) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("export_witness: cannot create " + dir + ": " + ec.message());

  const auto& srcs = problem.topology.sources();
  if (outcome.witness.size() != srcs.size()) throw DimensionError("export_witness: witness count does not match sources");
  std::vector<std::string> paths;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < srcs.size(); ++k) {
    const fs::path f = fs::path(dir) / (stem + "_" + srcs[k].name + ".ncmx");
    save_ncmx(f, to_complex(outcome.witness[k]));
    paths.push_back(f.string());
    files.push_back({{"source", srcs[k].name}, {"file", f.filename().string()}});
  }

  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["kind"] = "feasibility-witness";
  nlohmann::ordered_json topo;
  topo["nodes"] = problem.topology.nodes();
  topo["sources"] = nlohmann::ordered_json::array();
  for (const auto& s : srcs) topo["sources"].push_back({{"name", s.name}, {"nodes", s.nodes}});
  j["topology"] = topo;
  j["block_sizes"] = problem.gamma.layout().block_sizes();
  j["masks"] = nlohmann::ordered_json::array();
  for (const auto& m : problem.masks) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : m.kinds) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (auto k : r) row.push_back(kind_name(k));
      rows.push_back(row);
    }
    j["masks"].push_back({{"source", m.source}, {"members", m.members}, {"blocks", rows}});
  }
  j["slack"] = problem.slack;
  j["status"] = to_string(outcome.status);
  j["residual"] = outcome.residual;
  j["iterations"] = outcome.iterations;
  if (outcome.status == FeasibilityStatus::kInfeasibleEvidence) j["caveat"] = kInfeasibleEvidenceCaveat;
  j["files"] = files;
  const fs::path manifest = fs::path(dir) / (stem + ".json");
  write_file_atomic(manifest, j.dump(2) + "\n");
  paths.push_back(manifest.string());
  return paths;
}

}  // namespace netcm
