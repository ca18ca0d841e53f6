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

#include "netcm/spec.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "netcm/criteria.hpp"
#include "netcm/ncmx.hpp"

namespace netcm {

namespace {

const std::set<std::string> kFamilies{"ghz", "w", "dicke", "cluster4", "bell", "btn", "file"};

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw SpecError(where + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw SpecError(where + ": unknown key '" + k + "'");
}

std::size_t positive_int(const Json& v, const std::string& what, std::size_t min_value) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value))
    throw SpecError(what + " must be an integer >= " + std::to_string(min_value));
  return v.get<std::size_t>();
}

double unit_interval(const Json& v, const std::string& what) {
  if (!v.is_number()) throw SpecError(what + " must be a number");
  const double x = v.get<double>();
  if (!(x >= 0 && x <= 1)) throw SpecError(what + " must lie in [0, 1]");
  return x;
}

Json normalize_source(const Json& src, const std::string& name) {
  const std::string where = "btn source " + name;
  if (!src.is_object() || !src.contains("family") || !src["family"].is_string())
    throw SpecError(where + ": needs a family");
  only_keys(src, {"family", "params", "visibility"}, where);
  const std::string fam = src["family"];
  Json out;
  out["family"] = fam;
  const Json params = src.value("params", Json::object());
  if (fam == "bell") {
    only_keys(params, {"dim"}, where + " params");
    out["params"] = {{"dim", positive_int(params.value("dim", Json(2)), where + " dim", 2)}};
  } else if (fam == "random") {
    only_keys(params, {"dim", "seed"}, where + " params");
    out["params"] = {{"dim", positive_int(params.value("dim", Json(2)), where + " dim", 2)},
                     {"seed", positive_int(params.value("seed", Json(1)), where + " seed", 0)}};
  } else if (fam == "file") {
    only_keys(params, {"path", "dims"}, where + " params");
    if (!params.contains("path") || !params["path"].is_string()) throw SpecError(where + ": file needs a path");
    if (!params.contains("dims") || !params["dims"].is_array() || params["dims"].size() != 2)
      throw SpecError(where + ": file needs two dims");
    out["params"] = {{"path", params["path"]},
                     {"dims", {positive_int(params["dims"][0], where + " dims", 1), positive_int(params["dims"][1], where + " dims", 1)}}};
  } else {
    throw SpecError(where + ": family must be bell, random or file");
  }
  out["visibility"] = unit_interval(src.value("visibility", Json(1.0)), where + " visibility");
  return out;
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

DensityOperator load_state_file(const Json& params, const std::filesystem::path& base) {
  const ComplexMatrix m = load_ncmx(resolve(params["path"].get<std::string>(), base));
  const auto& dims = params["dims"];
  std::vector<std::string> nodes;
  if (params.contains("labels")) {
    for (const auto& l : params["labels"]) nodes.push_back(l.get<std::string>());
  } else {
    nodes = default_party_labels(dims.size());
  }
  std::vector<std::size_t> fdims;
  std::vector<std::string> flabels, fnodes;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].is_array()) {
      for (std::size_t k = 0; k < dims[i].size(); ++k) {
        fdims.push_back(dims[i][k].get<std::size_t>());
        flabels.push_back(nodes[i] + std::to_string(k + 1));
        fnodes.push_back(nodes[i]);
      }
    } else {
      fdims.push_back(dims[i].get<std::size_t>());
      flabels.push_back(nodes[i]);
      fnodes.push_back(nodes[i]);
    }
  }
  std::size_t total = 1;
  for (auto d : fdims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw SpecError("file state: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " but dims multiply to " + std::to_string(total));
  return DensityOperator(m, SubsystemLayout(fdims, flabels, fnodes));
}

DensityOperator build_source(const Json& s, const std::filesystem::path& base) {
  const std::string fam = s["family"];
  const auto& p = s["params"];
  const SubsystemLayout two = [&] {
    const std::size_t d = fam == "file" ? 0 : p["dim"].get<std::size_t>();
    return fam == "file" ? SubsystemLayout({p["dims"][0].get<std::size_t>(), p["dims"][1].get<std::size_t>()}, {"1", "2"})
                         : SubsystemLayout({d, d}, {"1", "2"});
  }();
  DensityOperator rho = [&]() -> DensityOperator {
    if (fam == "bell") return bell_pair(p["dim"]).relabeled(two);
    if (fam == "random") {
      std::mt19937_64 rng(p["seed"].get<std::uint64_t>());
      return random_state(two, rng);
    }
    Json fp = {{"path", p["path"]}, {"dims", {p["dims"][0], p["dims"][1]}}, {"labels", {"1", "2"}}};
    return load_state_file(fp, base);
  }();
  return mix_white_noise(rho, s["visibility"].get<double>());
}

}  // namespace

Json normalize_state_spec(const Json& spec) {
  if (!spec.is_object()) throw SpecError("state spec: expected a JSON object");
  only_keys(spec, {"family", "params", "visibility"}, "state spec");
  if (!spec.contains("family") || !spec["family"].is_string()) throw SpecError("state spec: missing family");
  const std::string fam = spec["family"];
  if (!kFamilies.count(fam)) throw SpecError("state spec: unknown family '" + fam + "'");
  const Json params = spec.value("params", Json::object());
  if (!params.is_object()) throw SpecError("state spec: params must be an object");

  Json out;
  out["family"] = fam;
  Json np = Json::object();
  if (fam == "ghz") {
    only_keys(params, {"parties", "dim", "levels"}, "ghz params");
    np["parties"] = positive_int(params.value("parties", Json(3)), "ghz parties", 2);
    np["dim"] = positive_int(params.value("dim", Json(2)), "ghz dim", 2);
    const Json lv = params.value("levels", Json::array({0, 1}));
    if (lv.is_string()) {
      if (lv != "all") throw SpecError("ghz levels: expected [i, j] or \"all\"");
      np["levels"] = "all";
    } else {
      if (!lv.is_array() || lv.size() != 2) throw SpecError("ghz levels: expected [i, j] or \"all\"");
      const auto i = positive_int(lv[0], "ghz level", 0), j = positive_int(lv[1], "ghz level", 0);
      if (i == j || i >= np["dim"].get<std::size_t>() || j >= np["dim"].get<std::size_t>())
        throw SpecError("ghz levels must be two distinct levels below dim");
      np["levels"] = {i, j};
    }
  } else if (fam == "dicke") {
    only_keys(params, {"k"}, "dicke params");
    if (!params.contains("k")) throw SpecError("dicke params: k is required");
    const auto k = positive_int(params["k"], "dicke k", 1);
    if (k > 9) throw SpecError("dicke k must be in 1..9");
    np["k"] = k;
  } else if (fam == "bell") {
    only_keys(params, {"dim"}, "bell params");
    np["dim"] = positive_int(params.value("dim", Json(2)), "bell dim", 2);
  } else if (fam == "btn") {
    only_keys(params, {"sources"}, "btn params");
    const Json srcs = params.value("sources", Json::object());
    only_keys(srcs, {"a", "b", "c"}, "btn sources");
    Json ns;
    for (const char* s : {"a", "b", "c"})
      ns[s] = normalize_source(srcs.value(s, Json{{"family", "bell"}}), s);
    np["sources"] = ns;
  } else if (fam == "file") {
    only_keys(params, {"path", "dims", "labels"}, "file params");
    if (!params.contains("path") || !params["path"].is_string()) throw SpecError("file params: path is required");
    if (!params.contains("dims") || !params["dims"].is_array() || params["dims"].empty())
      throw SpecError("file params: dims list is required");
    np["path"] = params["path"];
    Json dims = Json::array();
    for (const auto& d : params["dims"]) {
      if (d.is_array()) {
        Json f = Json::array();
        for (const auto& x : d) f.push_back(positive_int(x, "file dims", 1));
        if (f.empty()) throw SpecError("file dims: empty factor list");
        dims.push_back(f);
      } else {
        dims.push_back(positive_int(d, "file dims", 1));
      }
    }
    np["dims"] = dims;
    if (params.contains("labels")) {
      const auto& l = params["labels"];
      if (!l.is_array() || l.size() != dims.size()) throw SpecError("file labels: one label per node");
      std::set<std::string> seen;
      for (const auto& x : l)
        if (!x.is_string() || x.get<std::string>().empty() || !seen.insert(x.get<std::string>()).second)
          throw SpecError("file labels: distinct non-empty strings expected");
      np["labels"] = l;
    }
  } else {
    only_keys(params, {}, fam + " params");
  }
  out["params"] = np;
  out["visibility"] = unit_interval(spec.value("visibility", Json(1.0)), "visibility");
  return out;
}

std::vector<DensityOperator> build_btn_sources(const Json& spec, const std::filesystem::path& base_dir) {
  const Json s = normalize_state_spec(spec);
  if (s["family"] != "btn") throw SpecError("expected a btn state spec");
  if (s["visibility"].get<double>() != 1.0)
    throw SpecError("btn decomposition needs global visibility 1; put noise on the sources");
  std::vector<DensityOperator> out;
  for (const char* n : {"a", "b", "c"}) out.push_back(build_source(s["params"]["sources"][n], base_dir));
  return out;
}

DensityOperator build_state(const Json& spec, const std::filesystem::path& base_dir) {
  const Json s = normalize_state_spec(spec);
  const std::string fam = s["family"];
  const auto& p = s["params"];
  const DensityOperator pure = [&]() -> DensityOperator {
    if (fam == "ghz") {
      std::optional<std::pair<std::size_t, std::size_t>> lv;
      if (p["levels"].is_array()) lv = std::pair<std::size_t, std::size_t>{p["levels"][0], p["levels"][1]};
      return ghz_state(p["parties"], p["dim"], lv);
    }
    if (fam == "w") return w_state();
    if (fam == "dicke") return dicke_state(p["k"].get<int>());
    if (fam == "cluster4") return cluster4_state();
    if (fam == "bell") return bell_pair(p["dim"]);
    if (fam == "btn") {
      std::vector<DensityOperator> src;
      for (const char* n : {"a", "b", "c"}) src.push_back(build_source(p["sources"][n], base_dir));
      return btn_assemble(src[0], src[1], src[2]);
    }
    return load_state_file(p, base_dir);
  }();
  return mix_white_noise(pure, s["visibility"].get<double>());
}

NetworkTopology parse_topology_spec(const std::string& text) {
  try {
    return parse_topology(text);
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("topology: ") + e.what());
  }
}

std::pair<std::size_t, std::size_t> parse_split(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("no x");
    std::size_t used1 = 0, used2 = 0;
    const auto a = std::stoul(text.substr(0, x), &used1), b = std::stoul(text.substr(x + 1), &used2);
    if (used1 != x || used2 != text.size() - x - 1 || a < 2 || b < 2) throw std::invalid_argument("bad");
    return {a, b};
  } catch (const std::exception&) {
    throw SpecError("split: expected <d1>x<d2> with d1, d2 >= 2, got '" + text + "'");
  }
}

}  // namespace netcm
