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

#include "netcm/cli.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "netcm/covariance.hpp"
#include "netcm/criteria.hpp"
#include "netcm/feasibility.hpp"
#include "netcm/linalg.hpp"
#include "netcm/ncmx.hpp"
#include "netcm/report.hpp"
#include "netcm/spec.hpp"

namespace netcm::cli {

namespace {

const std::vector<std::string> kObservableSets{"pauli-z", "w-set", "full-product", "cluster-set"};
const std::vector<std::string> kCriteria{"trace-norm", "xi-psd", "prop2"};

struct StateOpts {
  std::string family;
  std::size_t parties = 3;
  std::size_t dim = 2;
  std::string levels;
  std::size_t k = 0;
  double visibility = 1.0;
  CLI::Option* visibility_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  std::string spec;
  std::string state_file;
  std::string dims;
  std::string split;
};

struct CriterionOpts {
  std::string criterion = "trace-norm";
  std::string observables;
  std::string topology;
  double tol = 0;
  CLI::Option* tol_opt = nullptr;
  bool wiring_search = false;
};

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + p.string());
  return s.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(what + ": invalid JSON: " + e.what());
  }
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size() || v == 0)
      throw SpecError("dims: expected comma-separated positive integers, got '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw SpecError("dims: empty list");
  return out;
}

Json levels_json(const std::string& text) {
  if (text.empty()) return Json::array({0, 1});
  if (text == "all") return "all";
  const auto v = [&] {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t x = 0;
      const auto r = std::from_chars(item.data(), item.data() + item.size(), x);
      if (r.ec != std::errc() || r.ptr != item.data() + item.size()) throw SpecError("levels: expected i,j or all");
      out.push_back(x);
    }
    return out;
  }();
  if (v.size() != 2) throw SpecError("levels: expected i,j or all");
  return Json::array({v[0], v[1]});
}

// Spec from flags; returns the spec and the directory relative paths resolve against.
std::pair<Json, std::filesystem::path> state_spec_from(const StateOpts& o) {
  Json spec;
  std::filesystem::path base = std::filesystem::current_path();
  if (!o.spec.empty()) {
    if (o.spec[0] == '@') {
      const std::filesystem::path p(o.spec.substr(1));
      spec = parse_json(read_text(p), "state spec " + p.string());
      base = std::filesystem::absolute(p).parent_path();
    } else {
      spec = parse_json(o.spec, "state spec");
    }
    if (o.visibility_opt->count() && spec.is_object()) spec["visibility"] = o.visibility;
  } else if (!o.state_file.empty()) {
    if (!o.family.empty() && o.family != "file") throw SpecError("--state-file conflicts with --state " + o.family);
    if (o.dims.empty()) throw SpecError("--state-file needs --dims");
    Json dims = Json::array();
    for (auto d : parse_dims(o.dims)) dims.push_back(d);
    spec = {{"family", "file"}, {"params", {{"path", o.state_file}, {"dims", dims}}}, {"visibility", o.visibility}};
  } else {
    if (o.family.empty()) throw SpecError("no state given: use --state, --state-spec or --state-file");
    Json params = Json::object();
    if (o.family == "ghz") {
      params = {{"parties", o.parties}, {"dim", o.dim}, {"levels", levels_json(o.levels)}};
    } else if (o.family == "dicke") {
      if (!o.k_opt->count()) throw SpecError("dicke needs --k");
      params = {{"k", o.k}};
    } else if (o.family == "bell") {
      params = {{"dim", o.dim}};
    } else if (o.family == "btn") {
      const Json src = {{"family", "bell"}, {"params", {{"dim", o.dim}}}};
      params = {{"sources", {{"a", src}, {"b", src}, {"c", src}}}};
    } else if (o.family == "file") {
      throw SpecError("--state file needs --state-file and --dims");
    }
    spec = {{"family", o.family}, {"params", params}, {"visibility", o.visibility}};
  }
  return {normalize_state_spec(spec), base};
}

DensityOperator build(const Json& spec, const std::filesystem::path& base, const std::string& split) {
  DensityOperator rho = build_state(spec, base);
  if (!split.empty()) {
    const auto [d1, d2] = parse_split(split);
    for (const auto& n : rho.layout().node_labels())
      if (rho.layout().node_factors(n).size() == 1 && rho.layout().node_dim(n) != d1 * d2)
        throw SpecError("split " + split + " does not match node " + n + " of dimension " +
                        std::to_string(rho.layout().node_dim(n)));
    rho = split_nodes(rho, d1, d2);
  }
  return rho;
}

std::string wiring_text(const Wiring& w) {
  std::string s = "wiring";
  for (const auto& n : w) s += " " + n.node + "=(" + n.first + "," + n.second + ")";
  return s;
}

struct Evaluation {
  CriterionReport report;
  ReportContext ctx;
};

std::string observable_name(const CriterionOpts& c) {
  const std::string n = c.observables.empty() ? "full-product" : c.observables;
  if (std::find(kObservableSets.begin(), kObservableSets.end(), n) == kObservableSets.end())
    throw SpecError("unknown observable set '" + n + "'");
  return n;
}

NetworkTopology topology_for(const std::string& text, const std::vector<std::string>& nodes) {
  if (text.empty()) return NetworkTopology::pairwise(nodes);
  return parse_topology_spec(text);
}

Evaluation evaluate(const DensityOperator& rho, const CriterionOpts& c, const Json& state_spec) {
  Evaluation ev;
  ev.ctx.state_spec = state_spec;
  if (c.criterion == "trace-norm") {
    const std::string obs = observable_name(c);
    const auto topo = topology_for(c.topology, rho.layout().node_labels());
    const auto gamma = covariance_matrix(named_observable_set(obs, rho.layout()), rho);
    ev.report = c.tol_opt->count() ? trace_norm_criterion(gamma, topo, c.tol) : trace_norm_criterion(gamma, topo);
    ev.ctx.observables_spec = obs;
    ev.ctx.topology = topo.describe();
    return ev;
  }
  if (std::find(kCriteria.begin(), kCriteria.end(), c.criterion) == kCriteria.end())
    throw SpecError("unknown criterion '" + c.criterion + "'");
  if (!c.observables.empty() && c.observables != "full-product")
    throw SpecError(c.criterion + " always uses the full product basis of every factor");
  for (const auto& n : rho.layout().node_labels())
    if (rho.layout().node_factors(n).size() != 2)
      throw SpecError(c.criterion + " needs exactly two factors per node (node " + n + "); use --split");
  if (c.criterion == "prop2" && rho.layout().node_labels().size() != 3)
    throw SpecError("prop2 needs a three-node state");

  const auto wirings = c.wiring_search ? all_wirings(rho.layout()) : std::vector<Wiring>{default_wiring(rho.layout())};
  bool first = true;
  for (const auto& w : wirings) {
    CriterionReport r = c.criterion == "xi-psd" ? xi_psd_report(rho, w) : (c.tol_opt->count() ? prop2_report(rho, w, c.tol) : prop2_report(rho, w));
    if (c.criterion == "xi-psd" && c.tol_opt->count()) {
      auto keep = r;
      r = make_report(keep.criterion, keep.lhs, keep.rhs, c.tol);
      r.details = keep.details;
      r.notes = keep.notes;
    }
    r.notes.push_back(wiring_text(w));
    if (first || r.margin > ev.report.margin) ev.report = r;
    first = false;
  }
  ev.report.details["wirings_tested"] = static_cast<double>(wirings.size());
  ev.ctx.observables_spec = "full-product";
  ev.ctx.topology = c.criterion == "prop2" ? Json(NetworkTopology::triangle().describe()) : Json(nullptr);
  return ev;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
  } else {
    write_file_atomic(path, text);
  }
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    double v = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size()) throw SpecError("grid: expected start:stop:step");
    parts.push_back(v);
  }
  if (parts.size() != 3 || !(parts[2] > 0) || !(parts[0] <= parts[1]) || parts[0] < 0 || parts[1] > 1)
    throw SpecError("grid: expected start:stop:step with 0 <= start <= stop <= 1 and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  if (n > 1000000) throw SpecError("grid: too many points");
  std::vector<double> g(n);
  // rounded so 0:1:0.01 yields 0.07, not 0.07000000000000001
  for (std::size_t i = 0; i < n; ++i)
    g[i] = std::min(parts[1], std::round((parts[0] + static_cast<double>(i) * parts[2]) * 1e12) / 1e12);
  return g;
}

// Runs f(i) for i in [0, n) on up to `threads` workers; first exception rethrown.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F f) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const unsigned t = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < t; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

void add_state_options(CLI::App* sc, StateOpts& s) {
  sc->add_option("--state", s.family, "state family: ghz|w|dicke|cluster4|bell|btn|file");
  sc->add_option("--parties", s.parties, "GHZ parties")->check(CLI::Range(2, 12));
  sc->add_option("--dim", s.dim, "local dimension (ghz, bell, btn sources)")->check(CLI::Range(2, 16));
  sc->add_option("--levels", s.levels, "GHZ levels i,j or 'all'");
  s.k_opt = sc->add_option("--k", s.k, "Dicke excitation number");
  s.visibility_opt = sc->add_option("--visibility", s.visibility, "white-noise visibility v")->check(CLI::Range(0.0, 1.0));
  sc->add_option("--state-spec", s.spec, "state spec JSON text, or @file");
  sc->add_option("--state-file", s.state_file, "NCMX density matrix");
  sc->add_option("--dims", s.dims, "node dimensions for --state-file, e.g. 4,4,4");
  sc->add_option("--split", s.split, "re-factor single-factor nodes, e.g. 2x2");
}

void add_criterion_options(CLI::App* sc, CriterionOpts& c) {
  sc->add_option("--criterion", c.criterion, "trace-norm|xi-psd|prop2");
  sc->add_option("--observables", c.observables, "pauli-z|w-set|full-product|cluster-set");
  sc->add_option("--topology", c.topology, "triangle, pairwise:N, or nodes|src;src (default: all pairs)");
  c.tol_opt = sc->add_option("--tol", c.tol, "verdict tolerance (criterion default if unset)");
  sc->add_flag("--wiring-search", c.wiring_search, "try every factor assignment per node, keep the best");
}

}  // namespace

unsigned thread_budget() {
  const char* env = std::getenv("NETCM_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  unsigned v = 0;
  const std::string s(env);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v == 0)
    throw SpecError("NETCM_THREADS must be a positive integer, got '" + s + "'");
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"netcm: covariance-matrix tests for quantum network states"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  StateOpts st;
  CriterionOpts cr;
  std::string output, export_cm_path, grid, format = "csv", output_dir, cm_file, witness_dir, validate_file;
  bool refine = false, slack = false, strict = false;
  double refine_tol = 1e-7, feas_tol = 1e-7;
  std::size_t max_iter = 50000;
  FidelityBoundOptions fb;

  auto* check = app.add_subcommand("check", "evaluate one criterion on one state");
  add_state_options(check, st);
  add_criterion_options(check, cr);
  check->add_option("--output", output, "write the JSON report here (atomic)");
  check->add_option("--export-cm", export_cm_path, "also write the CM (NCMX + .json sidecar)");

  auto* scan = app.add_subcommand("scan", "evaluate a criterion over a visibility grid");
  add_state_options(scan, st);
  add_criterion_options(scan, cr);
  scan->add_option("--grid", grid, "start:stop:step")->required();
  scan->add_flag("--refine", refine, "bisect the first verdict flip");
  scan->add_option("--refine-tol", refine_tol, "bisection width")->check(CLI::PositiveNumber);
  scan->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--output", output, "write the table here (atomic)");

  auto* decompose = app.add_subcommand("decompose", "triangle block decomposition of a btn state");
  add_state_options(decompose, st);
  decompose->add_option("--output-dir", output_dir, "write T_a, T_b, T_c, R and the CM as NCMX");
  decompose->add_option("--output", output, "write the JSON report here (atomic)");

  auto* feas = app.add_subcommand("feasibility", "search for a per-source PSD block decomposition");
  add_state_options(feas, st);
  feas->add_option("--observables", cr.observables, "observable set for the CM (default full-product)");
  feas->add_option("--topology", cr.topology, "network topology (default: all pairs)");
  feas->add_option("--cm-file", cm_file, "use this CM (NCMX + .json sidecar) instead of a state");
  feas->add_option("--tol", feas_tol, "constraint tolerance")->check(CLI::PositiveNumber);
  feas->add_option("--max-iter", max_iter, "iteration budget")->check(CLI::PositiveNumber);
  feas->add_flag("--slack", slack, "allow the source diagonal blocks to sum below the CM's");
  feas->add_option("--witness-dir", witness_dir, "export the witness (NCMX per source + manifest)");
  feas->add_option("--output", output, "write the JSON report here (atomic)");

  auto* fid = app.add_subcommand("fidelity-bound", "largest GHZ fidelity the trace-norm test cannot exclude");
  fid->add_option("--restarts", fb.restarts, "random restarts")->check(CLI::Range(1, 10000));
  fid->add_option("--steps", fb.ascent_steps, "ascent steps per restart")->check(CLI::Range(1, 1000000));
  fid->add_option("--tol", fb.tol, "bisection tolerance on F")->check(CLI::PositiveNumber);
  fid->add_option("--seed", fb.seed, "RNG seed");
  fid->add_option("--output", output, "write the JSON report here (atomic)");

  auto* schema = app.add_subcommand("schema", "print the report JSON schema");
  auto* validate = app.add_subcommand("validate", "check a report against the schema");
  validate->add_option("file", validate_file, "report JSON")->required();
  validate->add_flag("--strict", strict, "reject unknown fields");

  std::vector<const char*> argv{"netcm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSatisfied;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSatisfied;
  } catch (const CLI::ParseError& e) {
    err << "netcm: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (schema->parsed()) {
      emit(report_schema(), "", out);
      return kExitSatisfied;
    }
    if (validate->parsed()) {
      const Json j = parse_json(read_text(validate_file), validate_file);
      const auto errs = validate_report(j, strict);
      for (const auto& e : errs) err << validate_file << ": " << e << "\n";
      return errs.empty() ? kExitSatisfied : kExitViolated;
    }
    if (fid->parsed()) {
      const auto r = ghz_fidelity_bound(fb);
      emit(dump_report(to_json(r, fb)), output, out);
      return r.converged ? kExitSatisfied : kExitInconclusive;
    }
    if (check->parsed()) {
      const auto [spec, base] = state_spec_from(st);
      const auto rho = build(spec, base, st.split);
      const auto ev = evaluate(rho, cr, spec);
      if (!export_cm_path.empty()) {
        const std::string obs = observable_name(cr);
        export_cm(covariance_matrix(named_observable_set(obs, rho.layout()), rho), export_cm_path, obs, spec);
      }
      emit(dump_report(to_json(ev.report, ev.ctx)), output, out);
      return ev.report.pass ? kExitSatisfied : kExitViolated;
    }
    if (scan->parsed()) {
      auto [spec, base] = state_spec_from(st);
      const auto g = parse_grid(grid);
      const auto at = [&, spec = spec, base = base](double v) {
        Json s = spec;
        s["visibility"] = v;
        return evaluate(build(s, base, st.split), cr, s);
      };
      at(g.front());  // surface spec errors before spawning workers
      std::vector<Evaluation> res(g.size());
      parallel_for(g.size(), thread_budget(), [&](std::size_t i) { res[i] = at(g[i]); });

      std::optional<double> threshold;
      if (refine) {
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
          if (res[i].report.pass == res[i + 1].report.pass) continue;
          double lo = g[i], hi = g[i + 1];
          const bool lo_pass = res[i].report.pass;
          while (hi - lo > refine_tol) {
            const double mid = 0.5 * (lo + hi);
            (at(mid).report.pass == lo_pass ? lo : hi) = mid;
          }
          threshold = 0.5 * (lo + hi);
          break;
        }
      }
      bool all_pass = true;
      for (const auto& r : res) all_pass = all_pass && r.report.pass;
      std::string text;
      if (format == "csv") {
        text = "visibility,lhs,rhs,margin,pass\n";
        for (std::size_t i = 0; i < g.size(); ++i) {
          const auto& r = res[i].report;
          text += fmt(g[i]) + "," + fmt(r.lhs) + "," + fmt(r.rhs) + "," + fmt(r.margin) + "," + (r.pass ? "1" : "0") + "\n";
        }
        if (refine) text += "# threshold=" + (threshold ? fmt(*threshold) : std::string("none")) + "\n";
      } else {
        Json j;
        j["schema_version"] = kReportSchemaVersion;
        j["kind"] = "scan";
        j["criterion"] = res.front().report.criterion;
        j["grid"] = g;
        j["threshold"] = threshold ? Json(*threshold) : Json(nullptr);
        j["reports"] = Json::array();
        for (const auto& r : res) j["reports"].push_back(to_json(r.report, r.ctx));
        text = dump_report(j);
      }
      emit(text, output, out);
      return all_pass ? kExitSatisfied : kExitViolated;
    }
    if (decompose->parsed()) {
      const auto [spec, base] = state_spec_from(st);
      if (spec["family"] != "btn") throw SpecError("decompose needs a btn state");
      const auto src = build_btn_sources(spec, base);
      const auto d = btn_decompose(src[0], src[1], src[2]);
      const auto rho = btn_assemble(src[0], src[1], src[2]);
      const auto gamma = covariance_matrix(d.observables, rho);
      const double resid = max_abs_diff(d.sum(), gamma.matrix());
      Json eig = Json::object();
      bool psd = true;
      const std::pair<const char*, const RealMatrix*> parts[] = {{"t_a", &d.t_a}, {"t_b", &d.t_b}, {"t_c", &d.t_c}, {"r", &d.r}};
      for (const auto& [name, m] : parts) {
        const double e = min_eigenvalue(*m);
        eig[name] = e;
        psd = psd && e >= -psd_tolerance(*m);
      }
      std::vector<std::string> files;
      if (!output_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(output_dir, ec);
        if (ec) throw IoError("cannot create " + output_dir + ": " + ec.message());
        for (const auto& [name, m] : parts) {
          const auto p = std::filesystem::path(output_dir) / (std::string(name) + ".ncmx");
          save_ncmx(p, to_complex(*m));
          files.push_back(p.string());
        }
        const auto gp = std::filesystem::path(output_dir) / "gamma.ncmx";
        export_cm(gamma, gp, "full-product", spec);
        files.push_back(gp.string());
        files.push_back(gp.string() + ".json");
      }
      const double tol = 1e-9;
      Json j;
      j["schema_version"] = kReportSchemaVersion;
      j["kind"] = "btn-decomposition";
      j["state_spec"] = spec;
      j["sum_residual"] = resid;
      j["min_eigenvalues"] = eig;
      j["pass"] = resid <= tol && psd;
      j["tolerance"] = tol;
      j["node_labels"] = d.node_labels;
      j["block_sizes"] = d.layout.block_sizes();
      j["files"] = files;
      emit(dump_report(j), output, out);
      return j["pass"].get<bool>() ? kExitSatisfied : kExitViolated;
    }
    if (feas->parsed()) {
      ReportContext ctx;
      const auto gamma = [&]() -> BlockCovarianceMatrix {
        if (!cm_file.empty()) {
          ctx.state_spec = nullptr;
          ctx.observables_spec = nullptr;
          return import_cm(cm_file);
        }
        const auto [spec, base] = state_spec_from(st);
        const auto rho = build(spec, base, st.split);
        const std::string obs = observable_name(cr);
        ctx.state_spec = spec;
        ctx.observables_spec = obs;
        return covariance_matrix(named_observable_set(obs, rho.layout()), rho);
      }();
      const auto topo = topology_for(cr.topology, gamma.node_labels());
      ctx.topology = topo.describe();
      const FeasibilityProblem problem(gamma, topo, slack);
      const auto outcome = solve(problem, feas_tol, max_iter);
      std::vector<std::string> files;
      if (!witness_dir.empty()) files = export_witness(problem, outcome, witness_dir);
      emit(dump_report(to_json(problem, outcome, ctx, feas_tol, max_iter, files)), output, out);
      switch (outcome.status) {
        case FeasibilityStatus::kFeasible: return kExitSatisfied;
        case FeasibilityStatus::kInfeasibleEvidence:
          err << "netcm: " << kInfeasibleEvidenceCaveat << "\n";
          return kExitViolated;
        case FeasibilityStatus::kInconclusive: return kExitInconclusive;
      }
    }
    err << "netcm: no command\n";
    return kExitUsage;
  } catch (const SpecError& e) {
    err << "netcm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotNcdsError& e) {
    err << "netcm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "netcm: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    err << "netcm: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "netcm: " << e.what() << "\n";
    return kExitData;
  } catch (const std::domain_error& e) {
    err << "netcm: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "netcm: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace netcm::cli
