#include <algorithm>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "zfb/harness.hpp"

namespace zfb {

int verify_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks ZF, boundary and vertex-operator relations on a truncated Fock space"};
  app.name(args.empty() ? "verify" : args.front());

  std::string config_path;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string report_path;
  std::string format = "text";
  int jobs = 0;
  app.add_option("--config", config_path, "JSON run configuration (defaults are used without it)");
  app.add_option("--suite", suites, "rmatrix, fock, vertex, boundary, hierarchy or all (repeatable)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance for relations without a stricter pinned bound");
  app.add_option("--report", report_path, "write the report here instead of stdout");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << "\n";
    return 2;
  }

  Report report;
  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!suites.empty()) cfg.suites = suites;
    if (*seed_opt) cfg.seed = seed;
    if (*tol_opt) cfg.tolerance = tol;
    if (*jobs_opt) cfg.jobs = jobs;
    validate_config(cfg);
    report = run_suites(cfg);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const ReportFormat fmt = format == "json" ? ReportFormat::kJson : ReportFormat::kText;
  try {
    if (report_path.empty()) {
      emit_report(report, out, fmt);
    } else {
      emit_report(report, std::filesystem::path(report_path), fmt);
      const SuiteSummary t = report.total();
      out << "records=" << t.records << " pass=" << t.pass << " fail=" << t.fail << " skip=" << t.skip
          << " result=" << (report.passed() ? "PASS" : "FAIL") << "\n";
    }
  } catch (const std::exception& e) {
    err << "report error: " << e.what() << "\n";
    return 2;
  }
  return report.passed() ? 0 : 1;
}

}  // namespace zfb
