// Run configuration, suite orchestration and reports.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zfb/core.hpp"

namespace zfb {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "zfb-report/1";

struct ReflectionConfig {
  std::string family = "identity";  // identity | constant-diagonal | k-dependent-diagonal | table
  std::vector<Complex> diagonal;
  std::vector<double> c;
  std::string table;  // path, relative to the config file
};

struct SampleConfig {
  int basis_max_particles = 2;
  int random_per_sector = 16;
  int random_terms = 3;
  int momentum_samples = 50;
};

struct RunConfig {
  int n = 2;
  double coupling = 0.7;
  std::vector<double> grid{-3, -2, -1, 1, 2, 3};
  int n_max = 3;
  ReflectionConfig reflection;
  std::vector<std::string> suites{"all"};
  double tolerance = 1e-10;
  std::uint64_t seed = 20240611;
  SampleConfig samples;
  std::vector<int> hierarchy_orders{0, 1, 2, 3, 4, 5};
  int jobs = 1;
  std::filesystem::path base_dir;  // not serialized
};

/// Suite names in dependency order.
const std::vector<std::string>& suite_names();

/// Parses and validates a JSON configuration; errors are ConfigError with a
/// "<source>:<line>:<column>: " prefix where a location is known.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>",
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError for an invalid configuration.
void validate_config(const RunConfig& cfg);

enum class Status { kPass, kFail, kSkip };
std::string to_string(Status s);

struct Record {
  std::string suite;
  std::string relation;
  std::string momenta;
  std::string sample;  // worst sample, or a description of the sample set
  double residual = 0.0;
  double threshold = 0.0;
  bool negative_control = false;  // passes iff residual > threshold
  Status status = Status::kPass;
  std::string note;
};

struct SuiteSummary {
  std::string suite;
  int records = 0;
  int pass = 0;
  int fail = 0;
  int skip = 0;
  double max_residual = 0.0;  // over evaluated identity records (no negative controls)
};

struct Report {
  RunConfig config;
  std::vector<Record> records;

  std::vector<SuiteSummary> summaries() const;
  SuiteSummary total() const;
  bool passed() const;  // no failures
};

Report run_suites(const RunConfig& cfg);

enum class ReportFormat { kText, kJson };

void emit_report(const Report& report, std::ostream& out, ReportFormat format);
/// Writes to a file; throws std::runtime_error on I/O failure.
void emit_report(const Report& report, const std::filesystem::path& path, ReportFormat format);

/// CLI entry point; returns the process exit status (0 pass, 1 fail, 2 config error).
int verify_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zfb
