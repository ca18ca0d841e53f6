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

#include "netcm/report.hpp"

#include <fstream>
#include <sstream>

#include "netcm/ncmx.hpp"

namespace netcm {

namespace {

Json number_schema() { return {{"type", "number"}}; }
Json string_schema() { return {{"type", "string"}}; }
Json nullable(const char* type) { return {{"type", Json::array({type, "null"})}}; }

Json object_schema(const std::vector<std::pair<std::string, Json>>& props, const std::vector<std::string>& required) {
  Json p = Json::object();
  for (const auto& [k, v] : props) p[k] = v;
  return {{"type", "object"}, {"properties", p}, {"required", required}, {"additionalProperties", false}};
}

Json build_schema() {
  const Json version = {{"const", kReportSchemaVersion}};
  const Json context_spec = {{"type", Json::array({"object", "string", "null"})}};
  Json defs;
  defs["criterion_report"] = object_schema(
      {{"schema_version", version},
       {"kind", {{"const", "criterion-report"}}},
       {"criterion", string_schema()},
       {"lhs", number_schema()},
       {"rhs", number_schema()},
       {"margin", number_schema()},
       {"pass", {{"type", "boolean"}}},
       {"tolerance", number_schema()},
       {"state_spec", context_spec},
       {"observables_spec", context_spec},
       {"topology", nullable("string")},
       {"details", {{"type", "object"}, {"additionalProperties", number_schema()}}},
       {"notes", {{"type", "array"}, {"items", string_schema()}}}},
      {"schema_version", "kind", "criterion", "lhs", "rhs", "margin", "pass", "tolerance", "state_spec",
       "observables_spec", "topology"});
  defs["feasibility_outcome"] = object_schema(
      {{"schema_version", version},
       {"kind", {{"const", "feasibility-outcome"}}},
       {"status", {{"enum", {"feasible", "infeasible-evidence", "inconclusive"}}}},
       {"residual", number_schema()},
       {"iterations", {{"type", "integer"}}},
       {"tolerance", number_schema()},
       {"max_iter", {{"type", "integer"}}},
       {"slack", {{"type", "boolean"}}},
       {"caveat", nullable("string")},
       {"state_spec", context_spec},
       {"observables_spec", context_spec},
       {"topology", nullable("string")},
       {"block_sizes", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
       {"witness_files", {{"type", "array"}, {"items", string_schema()}}}},
      {"schema_version", "kind", "status", "residual", "iterations", "tolerance", "max_iter", "slack", "caveat",
       "state_spec", "observables_spec", "topology"});
  defs["fidelity_bound"] = object_schema(
      {{"schema_version", version},
       {"kind", {{"const", "fidelity-bound"}}},
       {"criterion", string_schema()},
       {"bound", number_schema()},
       {"maximizer", {{"type", "array"}, {"items", number_schema()}}},
       {"maximizer_basis", {{"type", "array"}, {"items", string_schema()}}},
       {"margin_at_bound", number_schema()},
       {"bisection_steps", {{"type", "integer"}}},
       {"converged", {{"type", "boolean"}}},
       {"restarts", {{"type", "integer"}}},
       {"seed", {{"type", "integer"}}},
       {"tolerance", number_schema()},
       {"notes", {{"type", "array"}, {"items", string_schema()}}}},
      {"schema_version", "kind", "bound", "maximizer", "margin_at_bound", "converged"});
  defs["btn_decomposition"] = object_schema(
      {{"schema_version", version},
       {"kind", {{"const", "btn-decomposition"}}},
       {"state_spec", context_spec},
       {"sum_residual", number_schema()},
       {"min_eigenvalues", {{"type", "object"}, {"additionalProperties", number_schema()}}},
       {"pass", {{"type", "boolean"}}},
       {"tolerance", number_schema()},
       {"node_labels", {{"type", "array"}, {"items", string_schema()}}},
       {"block_sizes", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
       {"files", {{"type", "array"}, {"items", string_schema()}}}},
      {"schema_version", "kind", "state_spec", "sum_residual", "min_eigenvalues", "pass", "tolerance"});
  defs["scan"] = object_schema(
      {{"schema_version", version},
       {"kind", {{"const", "scan"}}},
       {"criterion", string_schema()},
       {"grid", {{"type", "array"}, {"items", number_schema()}}},
       {"threshold", nullable("number")},
       {"reports", {{"type", "array"}, {"items", {{"$ref", "#/$defs/criterion_report"}}}}}},
      {"schema_version", "kind", "criterion", "grid", "threshold", "reports"});
  defs["covariance_matrix"] = object_schema(
      {{"schema_version", version},
       {"kind", {{"const", "covariance-matrix"}}},
       {"file", string_schema()},
       {"dim", {{"type", "integer"}}},
       {"block_sizes", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
       {"node_labels", {{"type", "array"}, {"items", string_schema()}}},
       {"observables_spec", context_spec},
       {"state_spec", context_spec}},
      {"schema_version", "kind", "file", "dim", "block_sizes", "node_labels"});
  defs["feasibility_witness"] = object_schema(
      {{"schema_version", version},
       {"kind", {{"const", "feasibility-witness"}}},
       {"topology", {{"type", "object"}}},
       {"block_sizes", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
       {"masks", {{"type", "array"}, {"items", {{"type", "object"}}}}},
       {"slack", {{"type", "boolean"}}},
       {"status", {{"enum", {"feasible", "infeasible-evidence", "inconclusive"}}}},
       {"residual", number_schema()},
       {"iterations", {{"type", "integer"}}},
       {"caveat", string_schema()},
       {"files", {{"type", "array"}, {"items", {{"type", "object"}}}}}},
      {"schema_version", "kind", "topology", "masks", "status", "residual", "iterations", "files"});

  Json one_of = Json::array();
  for (const auto& [k, v] : defs.items()) one_of.push_back({{"$ref", "#/$defs/" + k}});
  return {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
          {"$id", "netcm-report"},
          {"version", kReportSchemaVersion},
          {"oneOf", one_of},
          {"$defs", defs}};
}

const Json& schema() {
  static const Json s = build_schema();
  return s;
}

bool type_matches(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "null") return v.is_null();
  return false;
}

void check(const Json& v, const Json& s, bool strict, const std::string& at, std::vector<std::string>& errs) {
  if (s.contains("$ref")) {
    const std::string ref = s["$ref"];
    check(v, schema()["$defs"][ref.substr(ref.rfind('/') + 1)], strict, at, errs);
    return;
  }
  if (s.contains("oneOf")) {
    int hits = 0;
    std::vector<std::string> best;
    for (const auto& alt : s["oneOf"]) {
      std::vector<std::string> e;
      check(v, alt, strict, at, e);
      if (e.empty()) ++hits;
      else if (best.empty() || e.size() < best.size()) best = e;
    }
    if (hits == 1) return;
    if (hits == 0) {
      // report against the alternative selected by "kind" when possible
      if (v.is_object() && v.contains("kind") && v["kind"].is_string()) {
        std::string k = v["kind"];
        std::replace(k.begin(), k.end(), '-', '_');
        if (schema()["$defs"].contains(k)) {
          check(v, schema()["$defs"][k], strict, at, errs);
          return;
        }
        errs.push_back(at + ": unknown report kind '" + v["kind"].get<std::string>() + "'");
        return;
      }
      errs.insert(errs.end(), best.begin(), best.end());
    } else {
      errs.push_back(at + ": matches more than one report kind");
    }
    return;
  }
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || type_matches(v, t);
    } else {
      ok = type_matches(v, s["type"]);
    }
    if (!ok) {
      errs.push_back(at + ": expected type " + s["type"].dump());
      return;
    }
  }
  if (s.contains("const") && v != s["const"]) errs.push_back(at + ": expected " + s["const"].dump());
  if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end())
    errs.push_back(at + ": value " + v.dump() + " not in " + s["enum"].dump());
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& r : s["required"])
        if (!v.contains(r.get<std::string>())) errs.push_back(at + ": missing field '" + r.get<std::string>() + "'");
    const Json props = s.value("properties", Json::object());
    for (const auto& [k, val] : v.items()) {
      if (props.contains(k)) {
        check(val, props[k], strict, at + "." + k, errs);
      } else if (s.contains("additionalProperties")) {
        const auto& ap = s["additionalProperties"];
        if (ap.is_object()) check(val, ap, strict, at + "." + k, errs);
        else if (ap == false && strict) errs.push_back(at + ": unknown field '" + k + "'");
      }
    }
  }
  if (v.is_array() && s.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], strict, at + "[" + std::to_string(i) + "]", errs);
}

Json or_null(const Json& j) { return j.is_discarded() ? Json(nullptr) : j; }

}  // namespace

Json to_json(const CriterionReport& r, const ReportContext& ctx) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "criterion-report";
  j["criterion"] = r.criterion;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["pass"] = r.pass;
  j["tolerance"] = r.tolerance;
  j["state_spec"] = or_null(ctx.state_spec);
  j["observables_spec"] = or_null(ctx.observables_spec);
  j["topology"] = or_null(ctx.topology);
  Json d = Json::object();
  for (const auto& [k, v] : r.details) d[k] = v;
  j["details"] = d;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const FeasibilityProblem& p, const FeasibilityOutcome& o, const ReportContext& ctx, double tol,
             std::size_t max_iter, const std::vector<std::string>& witness_files) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "feasibility-outcome";
  j["status"] = to_string(o.status);
  j["residual"] = o.residual;
  j["iterations"] = o.iterations;
  j["tolerance"] = tol;
  j["max_iter"] = max_iter;
  j["slack"] = p.slack;
  j["caveat"] = o.status == FeasibilityStatus::kInfeasibleEvidence ? Json(kInfeasibleEvidenceCaveat) : Json(nullptr);
  j["state_spec"] = or_null(ctx.state_spec);
  j["observables_spec"] = or_null(ctx.observables_spec);
  j["topology"] = or_null(ctx.topology);
  j["block_sizes"] = p.gamma.layout().block_sizes();
  j["witness_files"] = witness_files;
  return j;
}

Json to_json(const FidelityBoundResult& r, const FidelityBoundOptions& opts) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "fidelity-bound";
  j["criterion"] = "trace-norm";
  j["bound"] = r.bound;
  j["maximizer"] = r.maximizer;
  j["maximizer_basis"] = {"GHZ-", "001", "010", "011", "100", "101", "110"};
  j["margin_at_bound"] = r.margin_at_bound;
  j["bisection_steps"] = r.bisection_steps;
  j["converged"] = r.converged;
  j["restarts"] = opts.restarts;
  j["seed"] = opts.seed;
  j["tolerance"] = opts.tol;
  j["notes"] = r.notes;
  return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

std::string report_schema() { return schema().dump(2) + "\n"; }

std::vector<std::string> validate_report(const Json& report, bool strict) {
  std::vector<std::string> errs;
  check(report, schema(), strict, "$", errs);
  return errs;
}

void export_cm(const BlockCovarianceMatrix& gamma, const std::filesystem::path& path, const Json& observables_spec,
               const Json& state_spec) {
  save_ncmx(path, to_complex(gamma.matrix()));
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "covariance-matrix";
  j["file"] = path.filename().string();
  j["dim"] = gamma.dim();
  j["block_sizes"] = gamma.layout().block_sizes();
  j["node_labels"] = gamma.node_labels();
  j["observables_spec"] = or_null(observables_spec);
  j["state_spec"] = or_null(state_spec);
  write_file_atomic(path.string() + ".json", dump_report(j));
}

BlockCovarianceMatrix import_cm(const std::filesystem::path& path) {
  const ComplexMatrix m = load_ncmx(path);
  const std::string side = path.string() + ".json";
  std::ifstream in(side);
  if (!in) throw IoError("cannot open CM sidecar " + side);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SpecError("CM sidecar " + side + ": " + e.what());
  }
  const auto errs = validate_report(j, false);
  if (!errs.empty() || j.value("kind", "") != "covariance-matrix")
    throw SpecError("CM sidecar " + side + " is not a covariance-matrix record" + (errs.empty() ? "" : ": " + errs.front()));
  if (imag_part(m).max_abs() > 0) throw FormatError("CM file " + path.string() + " has nonzero imaginary parts");
  return BlockCovarianceMatrix(real_part(m), BlockLayout(j["block_sizes"].get<std::vector<std::size_t>>()),
                               j["node_labels"].get<std::vector<std::string>>());
}

}  // namespace netcm
