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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netcm/cli.hpp"
#include "netcm/feasibility.hpp"
#include "netcm/ncmx.hpp"
#include "netcm/report.hpp"
#include "netcm/spec.hpp"

using namespace netcm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

Json json_of(const Run& r) { return Json::parse(r.out); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("netcm_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& s) const { return path_ / s; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    if (value) setenv(name, value, 1);
    else unsetenv(name);
  }
  ~EnvGuard() {
    if (old_) setenv(name_, old_->c_str(), 1);
    else unsetenv(name_);
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

}  // namespace

TEST(Cli, GhzCheckExample) {
  const auto r = run({"check", "--state", "ghz", "--parties", "3", "--dim", "2", "--visibility", "0.6", "--observables",
                      "pauli-z", "--criterion", "trace-norm", "--topology", "triangle"});
  EXPECT_EQ(r.code, 1);
  const auto j = json_of(r);
  EXPECT_NEAR(j["lhs"].get<double>(), 3.0, 1e-12);
  EXPECT_NEAR(j["rhs"].get<double>(), 3.6, 1e-12);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["topology"], "A,B,C|B,C;C,A;A,B");
  EXPECT_TRUE(validate_report(j, true).empty());
}

TEST(Cli, WScanFlipsAtThreeQuarters) {
  const auto r = run({"scan", "--state", "w", "--observables", "w-set", "--criterion", "trace-norm", "--grid", "0:1:0.01",
                      "--refine"});
  EXPECT_EQ(r.code, 1);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "visibility,lhs,rhs,margin,pass");
  double last_pass = -1, first_fail = -1;
  int rows = 0;
  double threshold = -1;
  while (std::getline(in, line)) {
    if (line.rfind("# threshold=", 0) == 0) {
      threshold = std::stod(line.substr(12));
      continue;
    }
    ++rows;
    const double v = std::stod(line.substr(0, line.find(',')));
    const bool pass = line.back() == '1';
    if (pass && first_fail < 0) last_pass = v;
    if (!pass && first_fail < 0) first_fail = v;
    if (first_fail >= 0) EXPECT_FALSE(pass) << line;
  }
  EXPECT_EQ(rows, 101);
  EXPECT_NEAR(last_pass, 0.75, 0.01);
  EXPECT_NEAR(first_fail, 0.76, 0.01);
  EXPECT_NEAR(threshold, 0.75, 1e-6);
}

TEST(Cli, XiCheckOnStateFile) {
  TempDir dir;
  const auto g = ghz_state(3, 4, std::pair<std::size_t, std::size_t>{0, 3});
  save_ncmx(dir / "m.ncmx", mix_white_noise(g, 0.1).matrix());
  save_ncmx(dir / "m0.ncmx", mix_white_noise(g, 0.0).matrix());
  const auto bad = run({"check", "--state-file", (dir / "m.ncmx").string(), "--dims", "4,4,4", "--split", "2x2", "--criterion", "xi-psd"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NEAR(json_of(bad)["lhs"].get<double>(), -0.1, 1e-9);
  const auto ok = run({"check", "--state-file", (dir / "m0.ncmx").string(), "--dims", "4,4,4", "--split", "2x2", "--criterion", "xi-psd"});
  EXPECT_EQ(ok.code, 0);
  // no wiring helps the noisy state
  const auto ws = run({"check", "--state-file", (dir / "m.ncmx").string(), "--dims", "4,4,4", "--split", "2x2", "--criterion",
                       "xi-psd", "--wiring-search"});
  EXPECT_EQ(ws.code, 1);
  EXPECT_EQ(json_of(ws)["details"]["wirings_tested"], 8.0);
}

TEST(Cli, ExitCodesMatchReports) {
  for (double v : {0.3, 0.5, 0.7}) {
    const auto r = run({"check", "--state", "ghz", "--visibility", std::to_string(v), "--observables", "pauli-z"});
    const bool pass = json_of(r)["pass"];
    EXPECT_EQ(r.code, pass ? 0 : 1);
    EXPECT_EQ(pass, v <= 0.5);
  }
}

TEST(Cli, MalformedInputsExit64) {
  const std::vector<std::vector<std::string>> cases{
      {"check", "--state", "nope"},
      {"check"},
      {"check", "--state-spec", "{not json"},
      {"check", "--state-spec", R"({"family":"ghz","extra":1})"},
      {"check", "--state-spec", R"({"family":"ghz","params":{"parties":1}})"},
      {"check", "--state-spec", R"({"family":"ghz","visibility":1.5})"},
      {"check", "--state", "dicke"},
      {"check", "--state", "ghz", "--observables", "nonsense"},
      {"check", "--state", "ghz", "--criterion", "nonsense"},
      {"check", "--state", "ghz", "--criterion", "xi-psd"},
      {"check", "--state", "ghz", "--topology", "A,B,C|A,B;B,A"},
      {"check", "--state", "ghz", "--dim", "4", "--split", "3x3", "--criterion", "xi-psd"},
      {"scan", "--state", "w", "--grid", "1:0:0.1"},
      {"scan", "--state", "w", "--grid", "0:1"},
      {"decompose", "--state", "ghz"},
      {"frobnicate"},
      {"check", "--state", "ghz", "--no-such-flag"},
  };
  for (const auto& c : cases) {
    const auto r = run(c);
    EXPECT_EQ(r.code, 64) << c.back() << ": " << r.err;
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(Cli, IoErrorsExit74) {
  TempDir dir;
  EXPECT_EQ(run({"check", "--state-file", (dir / "missing.ncmx").string(), "--dims", "2,2"}).code, 74);
  EXPECT_EQ(run({"check", "--state", "ghz", "--output", (dir / "no/such/dir/r.json").string()}).code, 74);
  EXPECT_EQ(run({"check", "--state-spec", "@" + (dir / "missing.json").string()}).code, 74);
  EXPECT_EQ(run({"feasibility", "--cm-file", (dir / "missing.ncmx").string()}).code, 74);
  EXPECT_EQ(run({"validate", (dir / "missing.json").string()}).code, 74);
}

TEST(Cli, BadDataExit65) {
  TempDir dir;
  save_ncmx(dir / "neg.ncmx", ComplexMatrix::diagonal({1.5, -0.5}));
  EXPECT_EQ(run({"check", "--state-file", (dir / "neg.ncmx").string(), "--dims", "2"}).code, 65);
  std::ofstream(dir / "junk.ncmx") << "not an ncmx file";
  EXPECT_EQ(run({"check", "--state-file", (dir / "junk.ncmx").string(), "--dims", "2"}).code, 65);
}

TEST(Cli, ThreadBudget) {
  {
    EnvGuard g("NETCM_THREADS", "3");
    EXPECT_EQ(cli::thread_budget(), 3u);
  }
  {
    EnvGuard g("NETCM_THREADS", nullptr);
    EXPECT_GE(cli::thread_budget(), 1u);
  }
  for (const char* bad : {"0", "-2", "two", "3x"}) {
    EnvGuard g("NETCM_THREADS", bad);
    EXPECT_THROW(cli::thread_budget(), SpecError);
    EXPECT_EQ(run({"scan", "--state", "w", "--observables", "w-set", "--grid", "0:1:0.5"}).code, 64);
  }
}

TEST(Cli, ScanIsDeterministicAcrossThreadCounts) {
  std::string ref;
  for (const char* t : {"1", "2", "5"}) {
    EnvGuard g("NETCM_THREADS", t);
    const auto r = run({"scan", "--state", "ghz", "--parties", "4", "--observables", "pauli-z", "--grid", "0:1:0.05", "--format", "json"});
    EXPECT_EQ(r.code, 1);
    if (ref.empty()) ref = r.out;
    EXPECT_EQ(r.out, ref);
  }
  const auto j = Json::parse(ref);
  EXPECT_TRUE(validate_report(j, true).empty());
  EXPECT_EQ(j["reports"].size(), 21u);
}

TEST(Cli, ReportsAreByteIdenticalAndAtomic) {
  TempDir dir;
  const std::vector<std::string> args{"check", "--state", "cluster4", "--observables", "cluster-set", "--output",
                                      (dir / "r.json").string()};
  EXPECT_EQ(run(args).code, 0);
  const auto first = slurp(dir / "r.json");
  EXPECT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(dir / "r.json"), first);
  for (const auto& e : fs::directory_iterator(dir.path())) EXPECT_EQ(e.path().filename(), "r.json");
  const auto j = Json::parse(first);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LE(std::abs(j["margin"].get<double>()), 1e-10);
}

TEST(Cli, SchemaVersionAndStrictMode) {
  const auto s = run({"schema"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(Json::parse(s.out)["version"], "1");

  TempDir dir;
  auto j = json_of(run({"check", "--state", "ghz"}));
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_TRUE(validate_report(j, true).empty());
  j["surprise"] = 1;
  EXPECT_TRUE(validate_report(j, false).empty());
  const auto errs = validate_report(j, true);
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_NE(errs[0].find("surprise"), std::string::npos);

  std::ofstream(dir / "x.json") << j.dump();
  EXPECT_EQ(run({"validate", (dir / "x.json").string()}).code, 0);
  EXPECT_EQ(run({"validate", "--strict", (dir / "x.json").string()}).code, 1);

  auto k = json_of(run({"check", "--state", "ghz"}));
  k.erase("lhs");
  EXPECT_FALSE(validate_report(k, false).empty());
  k = json_of(run({"check", "--state", "ghz"}));
  k["schema_version"] = "2";
  EXPECT_FALSE(validate_report(k, false).empty());
  k = json_of(run({"check", "--state", "ghz"}));
  k["pass"] = "yes";
  EXPECT_FALSE(validate_report(k, false).empty());
  k["kind"] = "mystery";
  EXPECT_FALSE(validate_report(k, false).empty());
}

TEST(Cli, FeasibilityCommand) {
  TempDir dir;
  const auto bad = run({"feasibility", "--state", "ghz", "--visibility", "0.8", "--observables", "pauli-z", "--topology",
                        "triangle", "--max-iter", "3000"});
  EXPECT_EQ(bad.code, 1);
  const auto jb = json_of(bad);
  EXPECT_EQ(jb["status"], "infeasible-evidence");
  EXPECT_EQ(jb["caveat"], kInfeasibleEvidenceCaveat);
  EXPECT_NE(bad.err.find(kInfeasibleEvidenceCaveat), std::string::npos);
  EXPECT_TRUE(validate_report(jb, true).empty());

  const auto good = run({"feasibility", "--state", "btn", "--topology", "triangle", "--witness-dir", (dir / "w").string()});
  EXPECT_EQ(good.code, 0);
  const auto jg = json_of(good);
  EXPECT_EQ(jg["status"], "feasible");
  EXPECT_TRUE(jg["caveat"].is_null());
  EXPECT_EQ(jg["witness_files"].size(), 4u);
  EXPECT_TRUE(validate_report(Json::parse(slurp(dir / "w" / "witness.json")), true).empty());
}

TEST(Cli, FeasibilityInconclusiveExit2) {
  TempDir dir;
  const auto cm = dir / "cm.ncmx";
  ASSERT_EQ(run({"check", "--state-spec",
                 R"({"family":"btn","params":{"sources":{"a":{"family":"random","params":{"seed":1}},"b":{"family":"random","params":{"seed":2}},"c":{"family":"random","params":{"seed":3}}}}})",
                 "--export-cm", cm.string()})
                .code,
            0);
  const auto gamma = import_cm(cm);
  const FeasibilityProblem p(gamma, NetworkTopology::triangle());
  const auto full = solve(p);
  ASSERT_EQ(full.status, FeasibilityStatus::kFeasible);
  std::size_t k = 0;
  while (full.residual_history[k] >= 1e-6) ++k;
  ASSERT_GT(full.residual_history[k], 1e-7);
  const auto r = run({"feasibility", "--cm-file", cm.string(), "--topology", "triangle", "--max-iter", std::to_string(k + 1)});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json_of(r)["status"], "inconclusive");
}

TEST(Cli, DecomposeCommand) {
  TempDir dir;
  const auto r = run({"decompose", "--state-spec",
                      R"({"family":"btn","params":{"sources":{"a":{"family":"random","params":{"seed":5}},"c":{"family":"bell","visibility":0.3}}}})",
                      "--output-dir", (dir / "d").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_LE(j["sum_residual"].get<double>(), 1e-9);
  EXPECT_EQ(j["files"].size(), 6u);
  EXPECT_TRUE(validate_report(j, true).empty());
  // the parts on disk add up to the exported CM
  ComplexMatrix sum(48, 48);
  for (const char* n : {"t_a", "t_b", "t_c", "r"}) sum += load_ncmx(dir / "d" / (std::string(n) + ".ncmx"));
  EXPECT_LE(max_abs_diff(real_part(sum), import_cm(dir / "d" / "gamma.ncmx").matrix()), 1e-9);
  // global noise would break the source structure
  EXPECT_EQ(run({"decompose", "--state", "btn", "--visibility", "0.5"}).code, 64);
}

TEST(Cli, FidelityBoundCommand) {
  const auto r = run({"fidelity-bound", "--restarts", "4"});
  EXPECT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_NEAR(j["bound"].get<double>(), 13 - std::sqrt(153.0), 1e-5);
  EXPECT_TRUE(validate_report(j, true).empty());
}

TEST(Cli, CmExportRoundTrip) {
  TempDir dir;
  const auto cm = dir / "g.ncmx";
  EXPECT_EQ(run({"check", "--state", "w", "--observables", "w-set", "--export-cm", cm.string()}).code, 1);
  const auto g = import_cm(cm);
  const auto w = w_state();
  const auto direct = covariance_matrix(named_observable_set("w-set", w.layout()), w);
  EXPECT_EQ(g.node_labels(), direct.node_labels());
  EXPECT_EQ(g.layout(), direct.layout());
  EXPECT_LE(max_abs_diff(g.matrix(), direct.matrix()), 0.0);
  const auto side = Json::parse(slurp(cm.string() + ".json"));
  EXPECT_EQ(side["kind"], "covariance-matrix");
  EXPECT_EQ(side["observables_spec"], "w-set");
  EXPECT_TRUE(validate_report(side, true).empty());
}

TEST(StateSpec, DefaultsAndValidation) {
  const auto s = normalize_state_spec(Json::parse(R"({"family":"ghz"})"));
  EXPECT_EQ(s.dump(), R"({"family":"ghz","params":{"parties":3,"dim":2,"levels":[0,1]},"visibility":1.0})");
  EXPECT_EQ(normalize_state_spec(s), s);
  EXPECT_EQ(normalize_state_spec(Json::parse(R"({"family":"ghz","params":{"dim":4,"levels":"all"}})"))["params"]["levels"], "all");
  EXPECT_THROW(normalize_state_spec(Json::parse(R"({"family":"ghz","params":{"levels":[1,1]}})")), SpecError);
  EXPECT_THROW(normalize_state_spec(Json::parse(R"({"family":"ghz","params":{"levels":[0,2]}})")), SpecError);
  EXPECT_THROW(normalize_state_spec(Json::parse(R"({"family":"dicke","params":{"k":10}})")), SpecError);
  EXPECT_THROW(normalize_state_spec(Json::parse(R"({"family":"w","params":{"x":1}})")), SpecError);
  EXPECT_THROW(normalize_state_spec(Json::parse(R"({"family":"file","params":{"dims":[2]}})")), SpecError);
  EXPECT_THROW(normalize_state_spec(Json::parse(R"([1,2])")), SpecError);
  EXPECT_THROW(normalize_state_spec(Json::parse(R"({"family":"btn","params":{"sources":{"d":{}}}})")), SpecError);

  const auto d = build_state(Json::parse(R"({"family":"dicke","params":{"k":2},"visibility":0.5})"));
  EXPECT_LE(max_abs_diff(d.matrix(), mix_white_noise(dicke_state(2), 0.5).matrix()), 0.0);
  const auto b = build_state(Json::parse(R"({"family":"btn"})"));
  const auto phi = bell_pair(2);
  EXPECT_LE(max_abs_diff(b.matrix(), btn_assemble(phi, phi, phi).matrix()), 1e-15);
}

TEST(StateSpec, FilePathsResolveAgainstSpecFile) {
  TempDir dir;
  fs::create_directories(dir / "sub");
  const auto rho = mix_white_noise(w_state(), 0.7);
  save_ncmx(dir / "sub" / "w.ncmx", rho.matrix());
  std::ofstream(dir / "sub" / "spec.json") << R"({"family":"file","params":{"path":"w.ncmx","dims":[2,2,2],"labels":["X","Y","Z"]}})";
  const auto r = run({"check", "--state-spec", "@" + (dir / "sub" / "spec.json").string(), "--observables", "w-set"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_of(r)["topology"], "X,Y,Z|X,Y;X,Z;Y,Z");
  // nested dims: two factors per node
  const auto phi = bell_pair(2);
  save_ncmx(dir / "btn.ncmx", btn_assemble(phi, phi, phi).matrix());
  const auto x = run({"check", "--state-spec",
                      R"({"family":"file","params":{"path":")" + (dir / "btn.ncmx").string() + R"(","dims":[[2,2],[2,2],[2,2]]}})",
                      "--criterion", "prop2"});
  EXPECT_EQ(x.code, 0) << x.err;
}
