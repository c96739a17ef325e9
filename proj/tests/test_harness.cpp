#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "zfb/harness.hpp"

using namespace zfb;

namespace {

// Small configuration so that whole-pipeline tests stay quick.
RunConfig small() {
  RunConfig c;
  c.grid = {-2, -1, 1, 2};
  c.n_max = 2;
  c.samples.random_per_sector = 3;
  c.samples.momentum_samples = 10;
  c.hierarchy_orders = {0, 1, 2};
  return c;
}

std::string text_of(const Report& r, ReportFormat f) {
  std::ostringstream os;
  emit_report(r, os, f);
  return os.str();
}

const Report& default_report() {
  static const Report r = run_suites(RunConfig{});
  return r;
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / "zfb_test_harness";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("valid configuration") {
  const RunConfig c = parse_config(R"({"N": 2, "coupling": 1, "grid": [-3,-2,-1,1,2,3], "n_max": 3,
                                       "reflection": "identity"})");
  CHECK(c.n == 2);
  CHECK(c.coupling == 1.0);
  CHECK(c.grid.size() == 6);
  CHECK(c.n_max == 3);
  CHECK(c.reflection.family == "identity");
  CHECK(c.tolerance == 1e-10);

  const RunConfig d = parse_config(R"({"reflection": {"family": "constant-diagonal", "diagonal": [1, [-1, 0]]},
                                       "suites": "rmatrix", "seed": 7})");
  CHECK(d.reflection.diagonal == std::vector<Complex>{1.0, -1.0});
  CHECK(d.suites == std::vector<std::string>{"rmatrix"});
  CHECK(d.seed == 7);
}

TEST_CASE("configuration errors carry locations") {
  const std::string asym = error_of("{\n  \"grid\": [-1, 2]\n}");
  CHECK(asym.find("grid not negation-symmetric") != std::string::npos);
  CHECK(asym.rfind("cfg.json:2:", 0) == 0);

  CHECK(error_of(R"({"grid": [-1, 0, 1]})").find("grid") != std::string::npos);
  CHECK(error_of(R"({"grid": [-1, 0, 1]})") != "");
  CHECK(error_of("{\"N\": 2,\n \"colour\": 3}").rfind("cfg.json:2:", 0) == 0);
  CHECK(error_of(R"({"n_max": 0})").find("n_max") != std::string::npos);
  CHECK(error_of(R"({"tolerance": -1})").find("tolerance") != std::string::npos);
  CHECK(error_of(R"({"suites": ["nope"]})").find("unknown suite") != std::string::npos);
  CHECK(error_of("{\n\"N\": 2,,\n}").rfind("cfg.json:2:", 0) == 0);
  CHECK(error_of(R"({"reflection": {"family": "constant-diagonal", "diagonal": [1]}})") != "");
  CHECK_THROWS_AS(load_config("/nonexistent/zfb.json"), ConfigError);
}

TEST_CASE("table reflection path is relative to the config file") {
  const auto dir = temp_dir();
  std::filesystem::copy_file(std::filesystem::path(ZFB_TEST_DATA) / "b_identity_n2.txt", dir / "b.txt",
                             std::filesystem::copy_options::overwrite_existing);
  {
    std::ofstream(dir / "cfg.json") << R"({"reflection": {"family": "table", "path": "b.txt"}, "suites": ["vertex"],
                                          "samples": {"random_per_sector": 2}, "n_max": 2})";
  }
  const RunConfig c = load_config(dir / "cfg.json");
  CHECK(c.reflection.table == "b.txt");
  const Report r = run_suites(c);
  CHECK(r.passed());

  {
    std::ofstream(dir / "bad.json") << R"({"reflection": {"family": "table", "path": "missing.txt"}})";
  }
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);

  std::filesystem::copy_file(std::filesystem::path(ZFB_TEST_DATA) / "b_partial_n2.txt", dir / "partial.txt",
                             std::filesystem::copy_options::overwrite_existing);
  {
    std::ofstream(dir / "partial.json") << R"({"reflection": {"family": "table", "path": "partial.txt"}})";
  }
  CHECK_THROWS_WITH_AS(load_config(dir / "partial.json"), doctest::Contains("no entry for k=-3"), ConfigError);
}

TEST_CASE("suite selection") {
  RunConfig c = small();
  c.suites = {"rmatrix"};
  const Report r = run_suites(c);
  REQUIRE(!r.records.empty());
  for (const Record& rec : r.records) CHECK((rec.suite == "rmatrix" || rec.suite == "whitelist"));
  CHECK(r.passed());
}

TEST_CASE("unadmitted B skips the dependent suites") {
  RunConfig c = small();
  c.reflection.family = "constant-diagonal";
  c.reflection.diagonal = {2.0, 1.0};
  const Report r = run_suites(c);
  CHECK_FALSE(r.passed());
  int skipped = 0;
  for (const Record& rec : r.records) {
    if (rec.suite == "boundary" || rec.suite == "hierarchy") {
      CHECK(rec.status == Status::kSkip);
      CHECK(rec.note.find("not admitted") != std::string::npos);
    }
    if (rec.status == Status::kSkip) ++skipped;
    if (rec.suite == "rmatrix" || rec.suite == "fock") CHECK(rec.status == Status::kPass);
  }
  CHECK(skipped > 0);
}

TEST_CASE("summaries match the records") {
  const Report r = run_suites(small());
  const SuiteSummary t = r.total();
  CHECK(t.records == static_cast<int>(r.records.size()));
  CHECK(t.pass + t.fail + t.skip == t.records);
  int total = 0;
  for (const auto& s : r.summaries()) {
    int count = 0;
    double worst = 0.0;
    for (const Record& rec : r.records)
      if (rec.suite == s.suite) {
        ++count;
        if (rec.status != Status::kSkip && !rec.negative_control) worst = std::max(worst, rec.residual);
      }
    CHECK(s.records == count);
    CHECK(s.max_residual == worst);
    total += count;
  }
  CHECK(total == t.records);
  for (const Record& rec : r.records) {
    if (rec.status == Status::kSkip) continue;
    const bool ok = rec.negative_control ? rec.residual > rec.threshold : rec.residual < rec.threshold;
    CHECK((rec.status == Status::kPass) == ok);
  }
}

TEST_CASE("reports are deterministic") {
  RunConfig c = small();
  const std::string a = text_of(run_suites(c), ReportFormat::kJson);
  const std::string b = text_of(run_suites(c), ReportFormat::kJson);
  CHECK(a == b);
  c.jobs = 4;
  CHECK(text_of(run_suites(c), ReportFormat::kJson) == a);
  CHECK(text_of(run_suites(small()), ReportFormat::kText) == text_of(run_suites(small()), ReportFormat::kText));
}

TEST_CASE("json report layout") {
  const Report r = run_suites(small());
  const auto j = nlohmann::json::parse(text_of(r, ReportFormat::kJson));
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["provenance"]["version"] == kVersion);
  CHECK(j["provenance"]["seed"] == r.config.seed);
  CHECK(j["provenance"]["config"]["N"] == 2);
  CHECK(j["summary"]["records"] == r.records.size());
  CHECK(j["summary"]["passed"] == true);
  CHECK(j["records"].size() == r.records.size());
  const auto& first = j["records"][0];
  for (const char* key : {"suite", "relation", "momenta", "sample", "residual", "threshold", "kind", "status"})
    CHECK(first.contains(key));
}

TEST_CASE("report written to a file") {
  const auto path = temp_dir() / "report.txt";
  const Report r = run_suites(small());
  emit_report(r, path, ReportFormat::kText);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == text_of(r, ReportFormat::kText));
  CHECK_THROWS(emit_report(r, std::filesystem::path("/nonexistent/dir/report.txt"), ReportFormat::kText));
}

TEST_CASE("command line exit codes") {
  const auto dir = temp_dir();
  {
    std::ofstream(dir / "ok.json") << R"({"grid": [-2,-1,1,2], "n_max": 2, "suites": ["rmatrix", "fock"],
                                         "samples": {"random_per_sector": 2}})";
    std::ofstream(dir / "bad_b.json") << R"({"grid": [-2,-1,1,2], "n_max": 2, "suites": ["vertex"],
                                         "samples": {"random_per_sector": 2},
                                         "reflection": {"family": "constant-diagonal", "diagonal": [2, 1]}})";
    std::ofstream(dir / "broken.json") << R"({"grid": [-1, 2]})";
  }
  std::ostringstream out, err;
  CHECK(verify_main({"verify", "--config", (dir / "ok.json").string()}, out, err) == 0);
  CHECK(out.str().find("result: PASS") != std::string::npos);
  CHECK(verify_main({"verify", "--config", (dir / "bad_b.json").string()}, out, err) == 1);
  CHECK(verify_main({"verify", "--config", (dir / "broken.json").string()}, out, err) == 2);
  CHECK(err.str().find("grid not negation-symmetric") != std::string::npos);
  CHECK(verify_main({"verify", "--format", "xml"}, out, err) == 2);
  CHECK(verify_main({"verify", "--suite", "nope"}, out, err) == 2);
  CHECK(verify_main({"verify", "--config", (dir / "missing.json").string()}, out, err) == 2);

  // A tolerance too tight for the default thresholds turns passes into failures.
  CHECK(verify_main({"verify", "--config", (dir / "ok.json").string(), "--tol", "1e-300"}, out, err) == 1);

  const auto report = dir / "cli.json";
  std::ostringstream quiet;
  CHECK(verify_main({"verify", "--config", (dir / "ok.json").string(), "--format", "json", "--report",
                     report.string(), "--seed", "5"},
                    quiet, err) == 0);
  CHECK(quiet.str().find("result=PASS") != std::string::npos);
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["provenance"]["seed"] == 5);
}

TEST_CASE("default run passes and covers every relation") {
  const Report& r = default_report();
  CHECK(r.passed());
  std::set<std::string> seen;
  for (const Record& rec : r.records) {
    CHECK(rec.status != Status::kSkip);
    seen.insert(rec.relation);
  }
  for (const char* rel :
       {"YBE", "unitarity", "R-coincident", "B-unitarity", "RBRB", "AN-1", "AN-2", "AN-3", "confluence",
        "T-vacuum", "defT-creation", "defT-annihilation", "T-inverse", "rtt", "b-vacuum", "eq:ab", "eq:bad",
        "eq:bb", "rbrb", "BNl-1", "BNl-2", "BNl-3", "BNl-4", "BNl-5", "rho", "rho-dagger", "rhoB-1", "rhoB-2",
        "rhoB-3", "rhoB-involution", "coset", "coset-dagger", "a-tilde-vacuum", "H-vacuum", "H-eigenvalue",
        "H-odd", "H-eigen-creation", "H-eigen-annihilation", "H-flow", "H-motion", "H-spectrum", "SSB"})
    CHECK_MESSAGE(seen.count(rel) == 1, rel);
}
