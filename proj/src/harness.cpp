#include "zfb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "zfb/boundary.hpp"
#include "zfb/hierarchy.hpp"
#include "zfb/sampling.hpp"
#include "zfb/zf_relations.hpp"

namespace zfb {

using nlohmann::ordered_json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rmatrix", "fock", "vertex", "boundary", "hierarchy"};
  return names;
}

// ---------------------------------------------------------------- config

namespace {

struct Location {
  int line = 0;
  int column = 0;
};

Location location_of_offset(const std::string& text, std::size_t offset) {
  Location loc{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

class ConfigReader {
 public:
  ConfigReader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    std::string prefix = source_;
    if (!key.empty()) {
      const auto pos = text_.find("\"" + key + "\"");
      if (pos != std::string::npos) {
        const Location loc = location_of_offset(text_, pos);
        prefix += ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
      }
    }
    throw ConfigError(prefix + ": " + message);
  }

  template <typename T>
  T get(const ordered_json& obj, const std::string& key, const std::string& what) const {
    try {
      return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(key, "\"" + key + "\" must be " + what);
    }
  }

  Complex complex_value(const ordered_json& v, const std::string& key) const {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    fail(key, "entries of \"" + key + "\" must be numbers or [re, im] pairs");
  }

 private:
  const std::string& text_;
  std::string source_;
};

void require_keys(const ConfigReader& reader, const ordered_json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return item.key() == a; }) ==
        allowed.end())
      reader.fail(item.key(), "unknown key \"" + item.key() + "\" in " + where);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source,
                       const std::filesystem::path& base_dir) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const Location loc = location_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError(source + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                      ": parse error: " + e.what());
  }
  ConfigReader reader(text, source);
  if (!doc.is_object()) reader.fail("", "configuration must be a JSON object");
  require_keys(reader, doc,
               {"N", "coupling", "grid", "n_max", "reflection", "suites", "tolerance", "seed", "samples",
                "hierarchy_orders", "jobs"},
               "configuration");

  RunConfig cfg;
  cfg.base_dir = base_dir;
  if (doc.contains("N")) cfg.n = reader.get<int>(doc, "N", "an integer");
  if (doc.contains("coupling")) cfg.coupling = reader.get<double>(doc, "coupling", "a number");
  if (doc.contains("grid")) cfg.grid = reader.get<std::vector<double>>(doc, "grid", "a list of numbers");
  if (doc.contains("n_max")) cfg.n_max = reader.get<int>(doc, "n_max", "an integer");
  if (doc.contains("tolerance")) cfg.tolerance = reader.get<double>(doc, "tolerance", "a number");
  if (doc.contains("seed")) cfg.seed = reader.get<std::uint64_t>(doc, "seed", "a non-negative integer");
  if (doc.contains("jobs")) cfg.jobs = reader.get<int>(doc, "jobs", "an integer");
  if (doc.contains("suites")) {
    const auto& v = doc["suites"];
    if (v.is_string())
      cfg.suites = {v.get<std::string>()};
    else
      cfg.suites = reader.get<std::vector<std::string>>(doc, "suites", "a suite name or a list of names");
  }
  if (doc.contains("hierarchy_orders"))
    cfg.hierarchy_orders = reader.get<std::vector<int>>(doc, "hierarchy_orders", "a list of integers");

  if (doc.contains("samples")) {
    const auto& s = doc["samples"];
    if (!s.is_object()) reader.fail("samples", "\"samples\" must be an object");
    require_keys(reader, s, {"basis_max_particles", "random_per_sector", "random_terms", "momentum_samples"},
                 "\"samples\"");
    if (s.contains("basis_max_particles"))
      cfg.samples.basis_max_particles = reader.get<int>(s, "basis_max_particles", "an integer");
    if (s.contains("random_per_sector"))
      cfg.samples.random_per_sector = reader.get<int>(s, "random_per_sector", "an integer");
    if (s.contains("random_terms")) cfg.samples.random_terms = reader.get<int>(s, "random_terms", "an integer");
    if (s.contains("momentum_samples"))
      cfg.samples.momentum_samples = reader.get<int>(s, "momentum_samples", "an integer");
  }

  if (doc.contains("reflection")) {
    const auto& r = doc["reflection"];
    if (r.is_string()) {
      cfg.reflection.family = r.get<std::string>();
    } else if (r.is_object()) {
      require_keys(reader, r, {"family", "diagonal", "c", "path"}, "\"reflection\"");
      cfg.reflection.family = reader.get<std::string>(r, "family", "a string");
      if (r.contains("diagonal")) {
        if (!r["diagonal"].is_array()) reader.fail("diagonal", "\"diagonal\" must be a list");
        for (const auto& v : r["diagonal"]) cfg.reflection.diagonal.push_back(reader.complex_value(v, "diagonal"));
      }
      if (r.contains("c")) cfg.reflection.c = reader.get<std::vector<double>>(r, "c", "a list of numbers");
      if (r.contains("path")) cfg.reflection.table = reader.get<std::string>(r, "path", "a string");
    } else {
      reader.fail("reflection", "\"reflection\" must be a family name or an object");
    }
  }

  try {
    validate_config(cfg);
  } catch (const ConfigError& e) {
    // Point at the offending key where the message names one.
    const std::string msg = e.what();
    for (const char* key : {"grid", "n_max", "tolerance", "N", "suites", "reflection", "hierarchy_orders",
                            "samples", "jobs", "coupling"}) {
      if (msg.rfind(std::string(key) + ":", 0) == 0) reader.fail(key, msg);
    }
    reader.fail("", msg);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string(), path.parent_path());
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 16) throw ConfigError("N: must be in [1, 16]");
  if (!std::isfinite(cfg.coupling)) throw ConfigError("coupling: must be finite");
  try {
    SpectralGrid grid(cfg.grid);
    if (grid.size() > 64) throw ConfigError("grid: at most 64 momenta");
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  if (cfg.n_max < 1) throw ConfigError("n_max: must be at least 1");
  if (cfg.n_max + 2 > 10) throw ConfigError("n_max: at most 8 (intermediate states need n_max + 2 letters)");
  if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) throw ConfigError("tolerance: must be positive");
  if (cfg.jobs < 1) throw ConfigError("jobs: must be at least 1");
  if (cfg.suites.empty()) throw ConfigError("suites: empty selection");
  for (const auto& s : cfg.suites)
    if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("suites: unknown suite \"" + s + "\"");
  for (int o : cfg.hierarchy_orders)
    if (o < 0 || o > 12) throw ConfigError("hierarchy_orders: orders must be in [0, 12]");
  if (cfg.samples.basis_max_particles < 0 || cfg.samples.random_per_sector < 0 || cfg.samples.random_terms < 1 ||
      cfg.samples.momentum_samples < 1)
    throw ConfigError("samples: counts must be non-negative (random_terms, momentum_samples positive)");

  const auto& r = cfg.reflection;
  if (r.family == "identity") {
  } else if (r.family == "constant-diagonal") {
    if (static_cast<int>(r.diagonal.size()) != cfg.n)
      throw ConfigError("reflection: constant-diagonal needs N diagonal entries");
  } else if (r.family == "k-dependent-diagonal") {
    if (static_cast<int>(r.c.size()) != cfg.n) throw ConfigError("reflection: k-dependent-diagonal needs N values c");
    for (double c : r.c)
      if (!std::isfinite(c) || c == 0.0) throw ConfigError("reflection: c must be finite and nonzero");
  } else if (r.family == "table") {
    if (r.table.empty()) throw ConfigError("reflection: table family needs \"path\"");
    std::filesystem::path p = r.table;
    if (p.is_relative()) p = cfg.base_dir / p;
    try {
      const ReflectionTable table = load_reflection_table(p, cfg.n);
      for (double k : cfg.grid) table.lookup(k);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("reflection: ") + e.what());
    }
  } else {
    throw ConfigError("reflection: unknown family \"" + r.family + "\"");
  }
}

namespace {

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["N"] = cfg.n;
  j["coupling"] = cfg.coupling;
  j["grid"] = cfg.grid;
  j["n_max"] = cfg.n_max;
  ordered_json r;
  r["family"] = cfg.reflection.family;
  if (!cfg.reflection.diagonal.empty()) {
    ordered_json d = ordered_json::array();
    for (const Complex& c : cfg.reflection.diagonal) d.push_back({c.real(), c.imag()});
    r["diagonal"] = d;
  }
  if (!cfg.reflection.c.empty()) r["c"] = cfg.reflection.c;
  if (!cfg.reflection.table.empty()) r["path"] = cfg.reflection.table;
  j["reflection"] = r;
  j["suites"] = cfg.suites;
  j["tolerance"] = cfg.tolerance;
  j["seed"] = cfg.seed;
  j["samples"] = {{"basis_max_particles", cfg.samples.basis_max_particles},
                  {"random_per_sector", cfg.samples.random_per_sector},
                  {"random_terms", cfg.samples.random_terms},
                  {"momentum_samples", cfg.samples.momentum_samples}};
  j["hierarchy_orders"] = cfg.hierarchy_orders;
  return j;
}

ReflectionMatrixSpec build_reflection(const RunConfig& cfg) {
  const auto& r = cfg.reflection;
  if (r.family == "identity") return identity_reflection(cfg.n);
  if (r.family == "constant-diagonal") return constant_diagonal_reflection(r.diagonal);
  if (r.family == "k-dependent-diagonal") return momentum_diagonal_reflection(r.c);
  std::filesystem::path p = r.table;
  if (p.is_relative()) p = cfg.base_dir / p;
  return table_reflection(load_reflection_table(p, cfg.n));
}

}  // namespace

// ---------------------------------------------------------------- report

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kSkip: return "skip";
  }
  return "unknown";
}

std::vector<SuiteSummary> Report::summaries() const {
  std::vector<SuiteSummary> out;
  for (const Record& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SuiteSummary& s) { return s.suite == r.suite; });
    if (it == out.end()) {
      out.push_back({r.suite});
      it = out.end() - 1;
    }
    ++it->records;
    if (r.status == Status::kPass) ++it->pass;
    if (r.status == Status::kFail) ++it->fail;
    if (r.status == Status::kSkip) ++it->skip;
    if (r.status != Status::kSkip && !r.negative_control) it->max_residual = std::max(it->max_residual, r.residual);
  }
  return out;
}

SuiteSummary Report::total() const {
  SuiteSummary t{"total"};
  for (const auto& s : summaries()) {
    t.records += s.records;
    t.pass += s.pass;
    t.fail += s.fail;
    t.skip += s.skip;
    t.max_residual = std::max(t.max_residual, s.max_residual);
  }
  return t;
}

bool Report::passed() const { return total().fail == 0; }

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ordered_json summary_json(const SuiteSummary& s) {
  ordered_json j;
  j["suite"] = s.suite;
  j["records"] = s.records;
  j["pass"] = s.pass;
  j["fail"] = s.fail;
  j["skip"] = s.skip;
  j["max_residual"] = s.max_residual;
  return j;
}

}  // namespace

void emit_report(const Report& report, std::ostream& out, ReportFormat format) {
  const SuiteSummary total = report.total();
  if (format == ReportFormat::kJson) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["provenance"] = {{"version", kVersion}, {"seed", report.config.seed}, {"config", config_json(report.config)}};
    ordered_json suites = ordered_json::array();
    for (const auto& s : report.summaries()) suites.push_back(summary_json(s));
    ordered_json summary = summary_json(total);
    summary.erase("suite");
    summary["passed"] = report.passed();
    summary["suites"] = suites;
    j["summary"] = summary;
    ordered_json records = ordered_json::array();
    for (const Record& r : report.records) {
      ordered_json x;
      x["suite"] = r.suite;
      x["relation"] = r.relation;
      x["momenta"] = r.momenta;
      x["sample"] = r.sample;
      x["residual"] = r.residual;
      x["threshold"] = r.threshold;
      x["kind"] = r.negative_control ? "negative-control" : "identity";
      x["status"] = to_string(r.status);
      if (!r.note.empty()) x["note"] = r.note;
      records.push_back(x);
    }
    j["records"] = records;
    out << j.dump(2) << "\n";
    return;
  }

  const RunConfig& c = report.config;
  out << "zfb verify " << kVersion << "\n";
  out << "config: N=" << c.n << " g=" << format_real(c.coupling) << " grid=[";
  for (std::size_t i = 0; i < c.grid.size(); ++i) out << (i ? "," : "") << format_real(c.grid[i]);
  out << "] n_max=" << c.n_max << " B=" << c.reflection.family << " tol=" << sci(c.tolerance)
      << " seed=" << c.seed << "\n";
  for (const Record& r : report.records) {
    std::string status = to_string(r.status);
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    out << status << " " << r.suite << " " << r.relation;
    if (!r.momenta.empty()) out << " " << r.momenta;
    if (r.status != Status::kSkip)
      out << " residual=" << sci(r.residual) << (r.negative_control ? " > " : " < ") << sci(r.threshold);
    if (!r.sample.empty()) out << " sample=" << r.sample;
    if (!r.note.empty()) out << " (" << r.note << ")";
    out << "\n";
  }
  for (const auto& s : report.summaries())
    out << "summary " << s.suite << ": records=" << s.records << " pass=" << s.pass << " fail=" << s.fail
        << " skip=" << s.skip << " max_residual=" << sci(s.max_residual) << "\n";
  out << "total: records=" << total.records << " pass=" << total.pass << " fail=" << total.fail
      << " skip=" << total.skip << "\n";
  out << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
}

void emit_report(const Report& report, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report " + path.string());
  emit_report(report, out, format);
  out.flush();
  if (!out) throw std::runtime_error("error writing report " + path.string());
}

// ---------------------------------------------------------------- suites

namespace {

constexpr double kExact = 1e-15;

struct Task {
  std::string suite;
  std::string relation;
  std::string momenta;
  std::function<std::vector<Record>()> run;
};

std::vector<Record> execute(std::vector<Task>& tasks, int jobs) {
  std::vector<std::vector<Record>> results(tasks.size());
  auto run_one = [&](std::size_t i) {
    const Task& t = tasks[i];
    try {
      results[i] = t.run();
    } catch (const CapacityError& e) {
      results[i] = {{t.suite, t.relation, t.momenta, "", 0.0, 0.0, false, Status::kSkip,
                     std::string("capacity: ") + e.what()}};
    } catch (const std::exception& e) {
      results[i] = {{t.suite, t.relation, t.momenta, "", 0.0, 0.0, false, Status::kFail,
                     std::string("error: ") + e.what()}};
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<Record> out;
  for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

Record make_record(std::string suite, std::string relation, std::string momenta, std::string sample,
                   double residual, double threshold, bool negative = false) {
  Record r{std::move(suite), std::move(relation), std::move(momenta), std::move(sample), residual, threshold,
           negative, Status::kPass, ""};
  const bool ok = negative ? residual > threshold : residual < threshold;
  r.status = ok ? Status::kPass : Status::kFail;
  return r;
}

using MultiCheck = std::function<std::vector<RelationResidual>(std::span<const FockState>)>;

// Evaluates a multi-relation check sample by sample and keeps, per relation,
// the worst residual and the sample it came from.
std::vector<Record> per_sample(const std::string& suite, const std::string& momenta,
                               const std::vector<Sample>& samples, double threshold, const MultiCheck& check) {
  std::vector<Record> out;
  int skipped = 0;
  std::string skip_cause;
  for (const Sample& s : samples) {
    std::vector<RelationResidual> res;
    try {
      res = check(std::span<const FockState>(&s.state, 1));
    } catch (const CapacityError& e) {
      ++skipped;
      skip_cause = e.what();
      continue;
    }
    for (const auto& rr : res) {
      auto it = std::find_if(out.begin(), out.end(), [&](const Record& r) { return r.relation == rr.relation; });
      if (it == out.end()) {
        out.push_back(make_record(suite, rr.relation, momenta, s.id, rr.value, threshold));
      } else if (rr.value > it->residual) {
        it->residual = rr.value;
        it->sample = s.id;
      }
    }
  }
  for (Record& r : out) {
    r.status = r.residual < r.threshold ? Status::kPass : Status::kFail;
    if (skipped) r.note = std::to_string(skipped) + " samples skipped (capacity: " + skip_cause + ")";
  }
  if (out.empty() && skipped)
    out.push_back({suite, "*", momenta, "", 0.0, threshold, false, Status::kSkip, "capacity: " + skip_cause});
  return out;
}

MultiCheck single(std::string relation, std::function<double(std::span<const FockState>)> f) {
  return [relation = std::move(relation), f = std::move(f)](std::span<const FockState> s) {
    return std::vector<RelationResidual>{{relation, f(s)}};
  };
}

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {
    r_ = rational_r_matrix(cfg.n, cfg.coupling);
    fock_ = std::make_shared<FockSpace>(SpectralGrid(cfg.grid), r_, cfg.n_max + 2);
    grid_ = &fock_->grid();

    Rng rng(cfg.seed);
    const int basis_max = std::min(cfg.samples.basis_max_particles, cfg.n_max);
    samples_ = basis_samples(*fock_, basis_max);
    for (int p = basis_max + 1; p <= cfg.n_max; ++p) {
      auto extra = random_samples(*fock_, p, cfg.samples.random_per_sector, rng, cfg.samples.random_terms);
      samples_.insert(samples_.end(), extra.begin(), extra.end());
    }
  }

  Report run() {
    Report report;
    report.config = cfg_;
    auto selected = [&](const std::string& s) {
      return std::find(cfg_.suites.begin(), cfg_.suites.end(), "all") != cfg_.suites.end() ||
             std::find(cfg_.suites.begin(), cfg_.suites.end(), s) != cfg_.suites.end();
    };

    std::vector<Task> tasks;
    admit(tasks);
    if (selected("rmatrix")) rmatrix_suite(tasks);
    if (selected("fock")) fock_suite(tasks);
    if (selected("vertex")) vertex_suite(tasks);
    if (selected("boundary")) boundary_suite(tasks);
    if (selected("hierarchy")) hierarchy_suite(tasks);
    report.records = execute(tasks, cfg_.jobs);
    return report;
  }

 private:
  double pinned(double p) const { return std::min(p, cfg_.tolerance); }
  double k(int index) const { return grid_->momentum(index); }
  std::string label(double k1) const { return "k=" + format_real(k1); }
  std::string label(double k1, double k2) const { return "k1=" + format_real(k1) + ",k2=" + format_real(k2); }
  std::string label(double k0, double k1, double k2) const {
    return "k1=" + format_real(k0) + ",k2=" + format_real(k1) + ",k3=" + format_real(k2);
  }

  void skipped(std::vector<Task>& tasks, const std::string& suite, const std::string& relation) {
    const std::string cause = "reflection matrix not admitted: " + admission_cause_;
    tasks.push_back({suite, relation, "", [=] {
                       return std::vector<Record>{
                           {suite, relation, "", "", 0.0, 0.0, false, Status::kSkip, cause}};
                     }});
  }

  // Reflection whitelist: runs whatever the suite selection is.
  void admit(std::vector<Task>& tasks) {
    b_ = build_reflection(cfg_);
    const double tol = pinned(1e-12);
    for (int a = 0; a < grid_->size(); ++a) {
      tasks.push_back({"whitelist", "B-unitarity", label(k(a)), [this, a, tol] {
                         return std::vector<Record>{make_record("whitelist", "B-unitarity", label(k(a)), "",
                                                                check_b_unitarity(b_, k(a)).value, tol)};
                       }});
    }
    for (int a = 0; a < grid_->size(); ++a)
      for (int b = 0; b < grid_->size(); ++b)
        tasks.push_back({"whitelist", "RBRB", label(k(a), k(b)), [this, a, b, tol] {
                           return std::vector<Record>{make_record("whitelist", "RBRB", label(k(a), k(b)), "",
                                                                  check_reflection_equation(r_, b_, k(a), k(b)).value,
                                                                  tol)};
                         }});
    const WhitelistResult w = whitelist_reflection(r_, b_, grid_->momenta(), tol);
    if (!w.valid) {
      admission_cause_ = w.cause;
      return;
    }
    try {
      vertex_ = std::make_unique<VertexContext>(VertexContext::whitelisted(fock_, b_, tol));
      boundary_ = std::make_unique<BoundaryContext>(*vertex_);
    } catch (const ConfigError& e) {
      admission_cause_ = e.what();
      vertex_.reset();
      boundary_.reset();
    }
  }

  void rmatrix_suite(std::vector<Task>& tasks) {
    const int count = cfg_.samples.momentum_samples;
    Rng rng(cfg_.seed ^ 0x52u);
    std::vector<std::array<double, 3>> triples(count);
    for (auto& t : triples)
      for (double& x : t) x = rng.uniform(-4.0, 4.0);
    const std::string set = std::to_string(count) + " random";

    tasks.push_back({"rmatrix", "YBE", "", [this, triples, set] {
                       Record worst = make_record("rmatrix", "YBE", "", set, -1.0, pinned(1e-12));
                       for (const auto& t : triples) {
                         const double v = check_yang_baxter(r_, t[0], t[1], t[2]).value;
                         if (v > worst.residual) worst = make_record("rmatrix", "YBE", label(t[0], t[1], t[2]), set, v,
                                                                     pinned(1e-12));
                       }
                       return std::vector<Record>{worst};
                     }});
    tasks.push_back({"rmatrix", "YBE-coincident", "", [this] {
                       double v = 0.0;
                       for (double x : grid_->momenta()) v = std::max(v, check_yang_baxter(r_, x, x, x).value);
                       return std::vector<Record>{
                           make_record("rmatrix", "YBE-coincident", "k1=k2=k3 in grid", "", v, pinned(1e-12))};
                     }});
    if (!r_.is_free()) {
      tasks.push_back({"rmatrix", "YBE-corrupted", "", [this, triples, set] {
                         // P replaced by I in the R13 factor only.
                         const int d = r_.n * r_.n;
                         double v = INFINITY;
                         std::string at;
                         for (const auto& t : triples) {
                           const double u = t[0] - t[2];
                           const Complex scale = Complex{u, cfg_.coupling} / Complex{u, cfg_.coupling};
                           const Matrix r13 = scale * Matrix::Identity(d, d);
                           const double x = yang_baxter_residual(eval_r(r_, t[0], t[1]), r13,
                                                                 eval_r(r_, t[1], t[2]), r_.n);
                           if (x < v) {
                             v = x;
                             at = label(t[0], t[1], t[2]);
                           }
                         }
                         return std::vector<Record>{make_record("rmatrix", "YBE-corrupted", at, set, v, 1e-2, true)};
                       }});
    }
    tasks.push_back({"rmatrix", "unitarity", "", [this, triples, set] {
                       Record worst = make_record("rmatrix", "unitarity", "", set, -1.0, pinned(1e-12));
                       for (const auto& t : triples) {
                         const double v = check_unitarity(r_, t[0], t[1]).value;
                         if (v > worst.residual)
                           worst = make_record("rmatrix", "unitarity", label(t[0], t[1]), set, v, pinned(1e-12));
                       }
                       return std::vector<Record>{worst};
                     }});
    tasks.push_back({"rmatrix", "unitarity-coincident", "", [this] {
                       double v = 0.0;
                       for (double x : grid_->momenta()) v = std::max(v, check_unitarity(r_, x, x).value);
                       return std::vector<Record>{
                           make_record("rmatrix", "unitarity-coincident", "k1=k2 in grid", "", v, pinned(1e-14))};
                     }});
    tasks.push_back({"rmatrix", "unitarity-scaled", "", [this, triples, set] {
                       const RMatrixSpec scaled = custom_r_matrix(r_.n, "scaled", [this](double a, double b) {
                         return Matrix(1.01 * eval_r(r_, a, b));
                       });
                       double v = INFINITY;
                       std::string at;
                       for (const auto& t : triples) {
                         const double x = check_unitarity(scaled, t[0], t[1]).value;
                         if (x < v) {
                           v = x;
                           at = label(t[0], t[1]);
                         }
                       }
                       return std::vector<Record>{make_record("rmatrix", "unitarity-scaled", at, set, v, 1e-2, true)};
                     }});
    tasks.push_back({"rmatrix", "R-coincident", "", [this] {
                       const int d = r_.n * r_.n;
                       const Matrix target = r_.is_free() ? Matrix::Identity(d, d) : permutation_matrix(r_.n);
                       double v = 0.0;
                       for (double x : grid_->momenta()) v = std::max(v, max_norm(eval_r(r_, x, x) - target));
                       Record rec = make_record("rmatrix", "R-coincident", "k1=k2 in grid", "", v, kExact);
                       if (r_.is_free()) rec.note = "free case: g = 0 gives R = I";
                       return std::vector<Record>{rec};
                     }});
  }

  void fock_suite(std::vector<Task>& tasks) {
    const FockSpace& fock = *fock_;
    tasks.push_back({"fock", "vacuum-annihilation", "", [&fock] {
                       double v = 0.0;
                       for (int a = 0; a < fock.grid().size(); ++a)
                         for (const auto& s : annihilate_all(fock, a, vacuum())) v = std::max(v, s.max_abs());
                       return std::vector<Record>{
                           make_record("fock", "vacuum-annihilation", "all k", "vacuum", v, kExact)};
                     }});
    for (int a = 0; a < grid_->size(); ++a)
      for (int b = 0; b < grid_->size(); ++b) {
        const std::string m = label(k(a), k(b));
        tasks.push_back({"fock", "AN", m, [this, &fock, a, b, m] {
                           return per_sample("fock", m, samples_, pinned(cfg_.tolerance),
                                             [&fock, a, b](std::span<const FockState> s) {
                                               return check_zf_relations(fock, a, b, s);
                                             });
                         }});
      }
    tasks.push_back({"fock", "confluence", "", [this, &fock] {
                       Rng rng(cfg_.seed ^ 0xC0u);
                       double v = 0.0;
                       std::string worst;
                       for (int p = 2; p <= cfg_.n_max; ++p)
                         for (int i = 0; i < cfg_.samples.random_per_sector; ++i) {
                           FockState::Map raw{{random_word(fock, p, rng), rng.complex_box()}};
                           const double x = max_deviation(canonicalize(fock, raw, Schedule::kLeftToRight),
                                                          canonicalize(fock, raw, Schedule::kRightToLeft));
                           if (x >= v) {
                             v = x;
                             worst = raw.begin()->first.to_string();
                           }
                         }
                       return std::vector<Record>{make_record("fock", "confluence", "", worst, v, pinned(1e-12))};
                     }});
    tasks.push_back({"fock", "double-swap", "", [this, &fock] {
                       Rng rng(cfg_.seed ^ 0xD5u);
                       double v = 0.0;
                       std::string worst;
                       for (int p = 2; p <= cfg_.n_max; ++p)
                         for (int i = 0; i < cfg_.samples.random_per_sector; ++i) {
                           const Word w = random_word(fock, p, rng);
                           const int pos = rng.below(p - 1);
                           FockState back;
                           for (const auto& [u, c] : transpose_at(fock, w, pos))
                             for (const auto& [x, d] : transpose_at(fock, u, pos)) back.add(x, c * d);
                           back.prune(fock.prune_threshold());
                           const double dev = max_deviation(back, FockState::basis(w));
                           if (dev >= v) {
                             v = dev;
                             worst = w.to_string() + "@" + std::to_string(pos);
                           }
                         }
                       return std::vector<Record>{make_record("fock", "double-swap", "", worst, v, pinned(1e-12))};
                     }});
  }

  std::vector<double> vertex_momenta() const {
    std::vector<double> ks(grid_->momenta().begin(), grid_->momenta().end());
    ks.push_back(0.37);
    return ks;
  }

  void vertex_suite(std::vector<Task>& tasks) {
    const FockSpace& fock = *fock_;
    const int n = fock.colors();
    tasks.push_back({"vertex", "T-vacuum", "", [this, &fock, n] {
                       double v = 0.0;
                       std::vector<double> ks = vertex_momenta();
                       ks.push_back(50.0);
                       const AuxState expected = AuxState::diagonal(n, vacuum());
                       for (double k0 : ks) {
                         v = std::max(v, max_deviation(apply_T(fock, k0, vacuum()), expected));
                         v = std::max(v, max_deviation(apply_T_inverse(fock, k0, vacuum()), expected));
                       }
                       return std::vector<Record>{make_record("vertex", "T-vacuum", "grid,0.37,50", "vacuum", v, kExact)};
                     }});
    for (double k0 : vertex_momenta()) {
      tasks.push_back({"vertex", "T-inverse", label(k0), [this, &fock, k0] {
                         return per_sample("vertex", label(k0), samples_, pinned(1e-11),
                                           single("T-inverse", [&fock, k0](std::span<const FockState> s) {
                                             return check_T_inverse(fock, k0, s);
                                           }));
                       }});
      for (int b = 0; b < grid_->size(); ++b) {
        const std::string m = "k0=" + format_real(k0) + ",k=" + format_real(k(b));
        tasks.push_back({"vertex", "defT", m, [this, &fock, k0, b, m] {
                           return per_sample("vertex", m, samples_, pinned(1e-11),
                                             [&fock, k0, b](std::span<const FockState> s) {
                                               return check_T_intertwining(fock, k0, b, s);
                                             });
                         }});
      }
    }
    std::vector<std::pair<double, double>> pairs;
    for (double a : grid_->momenta())
      for (double b : grid_->momenta()) pairs.emplace_back(a, b);
    pairs.emplace_back(0.37, -1.3);
    for (const auto& [k1, k2] : pairs) {
      const std::string m = label(k1, k2);
      tasks.push_back({"vertex", "rtt", m, [this, &fock, k1 = k1, k2 = k2, m] {
                         return per_sample("vertex", m, samples_, pinned(1e-11),
                                           single("rtt", [&fock, k1, k2](std::span<const FockState> s) {
                                             return check_rtt(fock, k1, k2, s);
                                           }));
                       }});
    }

    if (!vertex_) {
      for (const char* rel : {"eq:ab", "eq:bad", "eq:bb", "rbrb", "b-vacuum"}) skipped(tasks, "vertex", rel);
    } else {
      const VertexContext& ctx = *vertex_;
      tasks.push_back({"vertex", "b-vacuum", "", [&ctx] {
                         return std::vector<Record>{
                             make_record("vertex", "b-vacuum", "all k", "vacuum", check_b_vacuum(ctx), 1e-12)};
                       }});
      for (int a = 0; a < grid_->size(); ++a) {
        tasks.push_back({"vertex", "rbrb", label(k(a)), [this, &ctx, a] {
                           return per_sample("vertex", label(k(a)), samples_, pinned(1e-11),
                                             single("rbrb", [&ctx, a](std::span<const FockState> s) {
                                               return check_b_involution(ctx, a, s);
                                             }));
                         }});
        for (int b = 0; b < grid_->size(); ++b) {
          const std::string m = label(k(a), k(b));
          tasks.push_back({"vertex", "b-exchange", m, [this, &ctx, a, b, m] {
                             return per_sample("vertex", m, samples_, pinned(cfg_.tolerance),
                                               [&ctx, a, b](std::span<const FockState> s) {
                                                 return check_b_exchange(ctx, a, b, s);
                                               });
                           }});
        }
      }
    }

    if (n >= 2 && !r_.is_free()) {
      // B = diag(2, 1, ..., 1) violates the reflection equation.
      tasks.push_back({"vertex", "eq:bb-unadmitted", "", [this, &fock, n] {
                         std::vector<Complex> d(n, 1.0);
                         d[0] = 2.0;
                         const VertexContext bad = VertexContext::unchecked(fock_, constant_diagonal_reflection(d));
                         const int a = grid_->size() - 1;
                         const int b = grid_->size() - 2;
                         std::vector<FockState> probe{vacuum()};
                         for (auto& s : canonical_basis(fock, 1)) probe.push_back(std::move(s));
                         double v = 0.0;
                         for (const auto& rr : check_b_exchange(bad, a, b, probe))
                           if (rr.relation == "eq:bb") v = rr.value;
                         return std::vector<Record>{make_record("vertex", "eq:bb-unadmitted", label(k(a), k(b)),
                                                                "vacuum+1-particle basis", v, 1e-3, true)};
                       }});
    }
  }

  void boundary_suite(std::vector<Task>& tasks) {
    if (!boundary_) {
      for (const char* rel : {"BNl-1", "BNl-2", "BNl-3", "BNl-4", "BNl-5", "eq:bb", "rbrb", "rho", "rho-dagger",
                              "rhoB-1", "rhoB-2", "rhoB-3", "rhoB-involution", "coset", "coset-dagger"})
        skipped(tasks, "boundary", rel);
      return;
    }
    const BoundaryContext& ctx = *boundary_;
    tasks.push_back({"boundary", "a-tilde-vacuum", "", [&ctx] {
                       return std::vector<Record>{make_record("boundary", "a-tilde-vacuum", "all k", "vacuum",
                                                              check_a_tilde_vacuum(ctx), kExact)};
                     }});
    for (int a = 0; a < grid_->size(); ++a)
      for (int b = 0; b < grid_->size(); ++b) {
        const std::string m = label(k(a), k(b));
        tasks.push_back({"boundary", "BNl", m, [this, &ctx, a, b, m] {
                           return per_sample("boundary", m, samples_, pinned(cfg_.tolerance),
                                             [&ctx, a, b](std::span<const FockState> s) {
                                               return check_boundary_relations(ctx, a, b, s);
                                             });
                         }});
      }
    for (int a = 0; a < grid_->size(); ++a) {
      const std::string m = label(k(a));
      tasks.push_back({"boundary", "rho", m, [this, &ctx, a, m] {
                         return per_sample("boundary", m, samples_, pinned(1e-11),
                                           [&ctx, a](std::span<const FockState> s) {
                                             auto out = check_rho_identity(ctx, a, s);
                                             out.push_back({"rhoB-involution", check_rho_B_involution(ctx, a, s)});
                                             return out;
                                           });
                       }});
      tasks.push_back({"boundary", "coset", m, [this, &ctx, a, m] {
                         return per_sample("boundary", m, samples_, pinned(1e-13),
                                           [&ctx, a](std::span<const FockState> s) {
                                             return check_coset_identity(ctx, a, s);
                                           });
                       }});
    }
    for (int a = 0; a < grid_->size(); ++a)
      for (int b = 0; b < grid_->size(); ++b) {
        const std::string m = label(k(a), k(b));
        tasks.push_back({"boundary", "rhoB", m, [this, &ctx, a, b, m] {
                           return per_sample("boundary", m, samples_, pinned(cfg_.tolerance),
                                             [&ctx, a, b](std::span<const FockState> s) {
                                               return check_rho_B_automorphism(ctx, a, b, s);
                                             });
                         }});
      }
  }

  void hierarchy_suite(std::vector<Task>& tasks) {
    if (!boundary_) {
      for (const char* rel : {"H-vacuum", "H-eigenvalue", "H-odd", "H-eigen", "H-flow", "H-motion", "SSB",
                              "H-spectrum"})
        skipped(tasks, "hierarchy", rel);
      return;
    }
    const BoundaryContext& ctx = *boundary_;
    std::vector<int> even;
    std::vector<int> odd;
    for (int o : cfg_.hierarchy_orders) (o % 2 == 0 ? even : odd).push_back(o);

    for (int o : even) {
      const std::string m = "n=" + std::to_string(o);
      tasks.push_back({"hierarchy", "H-vacuum", m, [&ctx, o, m] {
                         const double v = apply_H(ctx, o, vacuum()).max_abs();
                         return std::vector<Record>{make_record("hierarchy", "H-vacuum", m, "vacuum", v, 1e-12)};
                       }});
      tasks.push_back({"hierarchy", "H-spectrum", m, [this, &ctx, o, m] {
                         const SpectrumCheck sc = check_one_particle_spectrum(ctx, o);
                         return std::vector<Record>{
                             make_record("hierarchy", "H-spectrum", m, "1-particle sector", sc.residual, pinned(1e-10))};
                       }});
      for (int a = 0; a < grid_->size(); ++a) {
        const std::string mk = m + "," + label(k(a));
        tasks.push_back({"hierarchy", "H-eigenvalue", mk, [this, &ctx, o, a, mk] {
                           return std::vector<Record>{make_record("hierarchy", "H-eigenvalue", mk, "~a+(k) vacuum",
                                                                  check_one_particle_eigenvalue(ctx, o, a),
                                                                  pinned(1e-11))};
                         }});
      }
    }
    for (int o : odd) {
      const std::string m = "n=" + std::to_string(o);
      tasks.push_back({"hierarchy", "H-odd", m, [this, &ctx, o, m] {
                         return per_sample("hierarchy", m, samples_, pinned(cfg_.tolerance),
                                           single("H-odd", [&ctx, o](std::span<const FockState> s) {
                                             return check_vanishing(ctx, o, s);
                                           }));
                       }});
    }
    for (int o : cfg_.hierarchy_orders)
      for (int a = 0; a < grid_->size(); ++a) {
        const std::string m = "n=" + std::to_string(o) + "," + label(k(a));
        tasks.push_back({"hierarchy", "H-eigen", m, [this, &ctx, o, a, m] {
                           return per_sample("hierarchy", m, samples_, pinned(cfg_.tolerance),
                                             [&ctx, o, a](std::span<const FockState> s) {
                                               return check_eigenrelations(ctx, o, a, s);
                                             });
                         }});
      }
    for (std::size_t i = 0; i < even.size(); ++i)
      for (std::size_t j = i + 1; j < even.size(); ++j) {
        const int n1 = even[i];
        const int n2 = even[j];
        const std::string m = "n=" + std::to_string(n1) + ",m=" + std::to_string(n2);
        tasks.push_back({"hierarchy", "H-flow", m, [this, &ctx, n1, n2, m] {
                           return per_sample("hierarchy", m, samples_, pinned(1e-9),
                                             single("H-flow", [&ctx, n1, n2](std::span<const FockState> s) {
                                               return check_flow_commutes(ctx, n1, n2, s);
                                             }));
                         }});
      }
    for (int o : even)
      for (int a = 0; a < grid_->size(); ++a) {
        const std::string m = "n=" + std::to_string(o) + "," + label(k(a));
        tasks.push_back({"hierarchy", "H-motion", m, [this, &ctx, o, a, m] {
                           return per_sample("hierarchy", m, samples_, pinned(1e-9),
                                             single("H-motion", [&ctx, o, a](std::span<const FockState> s) {
                                               return check_integrals_of_motion(ctx, o, a, s);
                                             }));
                         }});
      }
    tasks.push_back({"hierarchy", "SSB", "", [this, &ctx] {
                       const SymmetryBreaking sb = check_symmetry_breaking(ctx);
                       std::ostringstream note;
                       note << "broken:";
                       for (const auto& g : sb.broken) {
                         note << " b" << g.i + 1 << g.j + 1 << "(" << format_real(k(g.k)) << ")="
                              << format_real(g.expectation.real());
                         if (g.expectation.imag() != 0.0)
                           note << (g.expectation.imag() > 0 ? "+" : "") << format_real(g.expectation.imag()) << "i";
                       }
                       Record vac = make_record("hierarchy", "SSB", "all k", "vacuum", sb.residual, pinned(1e-12));
                       Record gens = make_record("hierarchy", "SSB-generators", "all k", "vacuum",
                                                 sb.matches_b ? 0.0 : 1.0, 0.5);
                       gens.note = note.str();
                       return std::vector<Record>{vac, gens};
                     }});
  }

  const RunConfig& cfg_;
  RMatrixSpec r_;
  ReflectionMatrixSpec b_;
  std::shared_ptr<FockSpace> fock_;
  const SpectralGrid* grid_ = nullptr;
  std::vector<Sample> samples_;
  std::unique_ptr<VertexContext> vertex_;
  std::unique_ptr<BoundaryContext> boundary_;
  std::string admission_cause_;
};

}  // namespace

Report run_suites(const RunConfig& cfg) {
  validate_config(cfg);
  Runner runner(cfg);
  return runner.run();
}

}  // namespace zfb
