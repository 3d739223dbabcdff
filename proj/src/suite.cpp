#include "quatreg/suite.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "quatreg/catalog.hpp"
#include "quatreg/error.hpp"
#include "quatreg/integral.hpp"
#include "quatreg/regularity.hpp"

namespace quatreg {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::ConfigError, fmt::format("bad value '{}' for {}", value, key));
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) throw Error(ErrorKind::ConfigError, fmt::format("non-finite value for {}", key));
  }
  return out;
}

double positive(std::string_view key, std::string_view value) {
  const double v = parse_number<double>(key, value);
  if (v <= 0.0) throw Error(ErrorKind::ConfigError, fmt::format("{} must be positive, got {}", key, value));
  return v;
}

QFunction function_from_id(const std::string& id) {
  try {
    return catalog_get(id);
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, fmt::format("function id '{}': {}", id, e.what()));
  }
}

Hypersurface surface_from_descriptor(const std::string& d) {
  try {
    return parse_hypersurface(d);
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, fmt::format("surface '{}': {}", d, e.what()));
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// ---- records ----

enum class Expect { Pass, Fail, Info };

std::string_view to_string(Expect e) {
  switch (e) {
    case Expect::Pass: return "pass";
    case Expect::Fail: return "fail";
    case Expect::Info: return "info";
  }
  return "?";
}

Expect regular_expectation(const QFunction& f) { return f.flags().expected_regular ? Expect::Pass : Expect::Fail; }

Expect hyperholomorphic_expectation(const QFunction& f) {
  return f.flags().expected_hyperholomorphic ? Expect::Pass : Expect::Fail;
}

struct Check {
  std::string suite;
  std::string function;
  std::string check;
  std::string anchor;
  std::string backend;
  double tolerance = 0.0;
  ResidualStats stats;
  std::string worst;  // point or surface of the largest residual
  std::size_t errors = 0;
  std::string first_error;
  Expect expect = Expect::Pass;
  Json details;
};

class Reporter {
 public:
  explicit Reporter(std::ostream& out) : out_(out) {}

  void write(const Json& record) { out_ << record.dump() << '\n'; }

  void check(const Check& c) {
    const bool pass = c.stats.pass && c.stats.evaluated > 0;
    const bool met = c.expect == Expect::Info || (c.expect == Expect::Pass) == pass;
    Json r;
    r["record"] = "check";
    r["suite"] = c.suite;
    r["function"] = c.function;
    r["check"] = c.check;
    r["anchor"] = c.anchor;
    r["backend"] = c.backend;
    r["tolerance"] = c.tolerance;
    r["max"] = c.stats.max;
    r["mean"] = c.stats.mean;
    r["worst"] = c.worst;
    r["evaluated"] = c.stats.evaluated;
    r["errors"] = c.errors;
    if (!c.first_error.empty()) r["first_error"] = c.first_error;
    r["pass"] = pass;
    r["expected"] = to_string(c.expect);
    r["met"] = met;
    if (!c.details.is_null()) r["details"] = c.details;
    write(r);
    ++outcome_.checks;
    if (!met) ++outcome_.unmet;
  }

  const SuiteOutcome& outcome() const { return outcome_; }

 private:
  std::ostream& out_;
  SuiteOutcome outcome_;
};

// Per-sample evaluation with errors kept per point.
template <class T>
struct Sweep {
  std::vector<T> values;
  std::vector<Quaternion> points;
  std::size_t errors = 0;
  std::string first_error;
};

template <class T, class Fn>
Sweep<T> sweep(const std::vector<Quaternion>& samples, Execution exec, Fn&& fn) {
  const auto outcomes = map_indexed<T>(samples.size(), exec, [&](std::size_t i) { return fn(samples[i]); });
  Sweep<T> s;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].value) {
      s.values.push_back(*outcomes[i].value);
      s.points.push_back(samples[i]);
    } else if (outcomes[i].error) {
      if (s.errors++ == 0) s.first_error = fmt::format("{} at {}", outcomes[i].error->what(), to_string(samples[i]));
    }
  }
  return s;
}

template <class T, class Proj>
ResidualStats stats_of(const Sweep<T>& s, double tol, Proj&& proj) {
  std::vector<double> v;
  v.reserve(s.values.size());
  for (const auto& x : s.values) v.push_back(proj(x));
  return aggregate(v, s.points, tol);
}

struct Context {
  const SuiteConfig& config;
  Execution exec;
  Reporter& reporter;
};

struct BackendRun {
  OperatorOptions opts;
  std::string name;
  bool fd = false;
};

Check base_check(std::string_view suite, const QFunction& f, std::string check, std::string anchor,
                 const BackendRun& b, double tol) {
  Check c;
  c.suite = suite;
  c.function = f.id();
  c.check = std::move(check);
  c.anchor = std::move(anchor);
  c.backend = b.name;
  c.tolerance = tol;
  return c;
}

template <class T>
void fill(Check& c, const Sweep<T>& s, const ResidualStats& st) {
  c.stats = st;
  c.worst = st.evaluated ? to_string(st.worst_point) : "";
  c.errors = s.errors;
  c.first_error = s.first_error;
}

void theorem1_suite(const Context& ctx, const QFunction& f, const std::vector<Quaternion>& samples,
                    const BackendRun& b) {
  const double tol = b.fd ? ctx.config.tol_fd : ctx.config.tol;
  const RegularityVerdict v = regularity_verdict(f, samples, tol, b.opts, ctx.exec);
  for (int n = 0; n < kCharacterizationCount; ++n) {
    const auto item = static_cast<Characterization>(n);
    Check c = base_check("theorem1", f, std::string(item_key(item)), std::string(item_identity(item)), b, tol);
    c.stats = v.items[n];
    c.worst = c.stats.evaluated ? to_string(c.stats.worst_point) : "";
    c.errors = v.errors.size();
    if (!v.errors.empty()) c.first_error = fmt::format("{} at {}", v.errors.front().message, to_string(v.errors.front().point));
    c.expect = regular_expectation(f);
    ctx.reporter.check(c);
  }
}

void lemma1_suite(const Context& ctx, const QFunction& f, const std::vector<Quaternion>& samples,
                  const BackendRun& b) {
  const double tol = b.fd ? ctx.config.tol_fd : ctx.config.lemma_tol;
  const auto s = sweep<double>(samples, ctx.exec, [&](const Quaternion& p) { return lemma1_residual(f, p, b.opts); });
  Check c = base_check("lemma1", f, "lemma1", "d/d_l iota (iota f) + iota d/d_l iota (f) = 2f", b, tol);
  fill(c, s, stats_of(s, tol, [](double x) { return x; }));
  c.expect = Expect::Pass;
  ctx.reporter.check(c);
}

void hyperholomorphy_suite(const Context& ctx, const QFunction& f, const std::vector<Quaternion>& samples,
                           const BackendRun& b) {
  const double tol = b.fd ? ctx.config.tol_fd : ctx.config.tol;
  struct Pair {
    double equations;
    double cullen;
  };
  const auto s = sweep<Pair>(samples, ctx.exec, [&](const Quaternion& p) {
    return Pair{hyperholomorphy_residuals(f, p, b.opts).max_component(), cullen_left(f, p, b.opts).value.norm()};
  });

  Check eq = base_check("hyperholomorphy", f, "equations",
                        "dv/dalpha / sin(beta) + du/dbeta = 0, du/dalpha / sin(beta) - dv/dbeta = 0 componentwise", b,
                        tol);
  fill(eq, s, stats_of(s, tol, [](const Pair& x) { return x.equations; }));
  // Controls may satisfy the equations on their own (conj does); only the combined check is graded for them.
  eq.expect = f.flags().expected_hyperholomorphic ? Expect::Pass : Expect::Info;
  ctx.reporter.check(eq);

  Check hh = base_check("hyperholomorphy", f, "hyperholomorphic", "Cullen-regular and both equations hold", b, tol);
  fill(hh, s, stats_of(s, tol, [](const Pair& x) { return std::max(x.equations, x.cullen); }));
  hh.expect = hyperholomorphic_expectation(f);
  ctx.reporter.check(hh);
}

void fueter_suite(const Context& ctx, const QFunction& f, const std::vector<Quaternion>& samples,
                  const BackendRun& b) {
  const double tol = b.fd ? ctx.config.fueter_tol_fd : ctx.config.fueter_tol;
  const auto s = sweep<double>(samples, ctx.exec,
                               [&](const Quaternion& p) { return fueter_laplacian(f, p, b.opts).value.norm(); });
  Check c = base_check("fueter_theorem", f, "fueter_laplacian", "D Laplacian f = 0", b, tol);
  fill(c, s, stats_of(s, tol, [](double x) { return x; }));
  // The claim concerns hyperholomorphic f; for anything else the value is reported only.
  c.expect = f.flags().expected_hyperholomorphic ? Expect::Pass : Expect::Info;
  ctx.reporter.check(c);
}

std::vector<Hypersurface> surfaces_of(const SuiteConfig& config) {
  std::vector<Hypersurface> out;
  const auto descriptors = config.surfaces.empty() ? standard_family_descriptors(config.resolution) : config.surfaces;
  for (const auto& d : descriptors) out.push_back(surface_from_descriptor(d));
  return out;
}

void integral_suite(const Context& ctx, const QFunction& f, const std::vector<Hypersurface>& family,
                    const BackendRun& b) {
  const double tol = ctx.config.integral_tol;
  Check c = base_check("integral", f, "integral", "int_K n f dS = int_K* -2v/r dV", b, tol);
  Json details = Json::array();
  std::vector<double> rel;
  std::vector<std::string> where;
  for (const auto& K : family) {
    Json d;
    d["surface"] = K.descriptor();
    try {
      const IntegralReport r = theorem2_residual(f, K, b.opts, ctx.exec);
      d["lhs"] = to_string(r.lhs);
      d["rhs"] = to_string(r.rhs);
      d["relative"] = r.relative();
      rel.push_back(r.relative());
      where.push_back(K.descriptor());
    } catch (const Error& e) {
      d["error"] = e.what();
      if (c.errors++ == 0) c.first_error = fmt::format("{} on {}", e.what(), K.descriptor());
    }
    details.push_back(d);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    sum += rel[i];
    if (i == 0 || rel[i] > c.stats.max) {
      c.stats.max = rel[i];
      c.worst = where[i];
    }
  }
  c.stats.evaluated = rel.size();
  c.stats.mean = rel.empty() ? 0.0 : sum / static_cast<double>(rel.size());
  c.stats.pass = !rel.empty() && c.errors == 0 && c.stats.max <= tol;
  c.stats.margin = tol - c.stats.max;
  c.expect = regular_expectation(f);
  c.details = std::move(details);
  ctx.reporter.check(c);
}

void generalized_suite(const Context& ctx, const QFunction& f, const std::vector<Hypersurface>& family,
                       const BackendRun& b) {
  const double tol = ctx.config.integral_tol;
  const GeneralizedVerdict v = generalized_regularity_test(f, family, tol, b.opts, ctx.exec);
  Check c = base_check("generalized", f, "generalized",
                       "int_K n f dS = int_K* -2v/r dV for f and iota f on every surface", b, tol);
  Json details = Json::array();
  double sum = 0.0;
  for (const auto& s : v.surfaces) {
    Json d;
    d["surface"] = s.surface;
    if (!s.error.empty()) {
      d["error"] = s.error;
      if (c.errors++ == 0) c.first_error = fmt::format("{} on {}", s.error, s.surface);
    } else {
      const double worst = std::max(s.f.relative(), s.iota_f.relative());
      d["f"] = s.f.relative();
      d["iota_f"] = s.iota_f.relative();
      sum += worst;
      if (c.stats.evaluated == 0 || worst > c.stats.max) {
        c.stats.max = worst;
        c.worst = s.surface;
      }
      ++c.stats.evaluated;
    }
    details.push_back(d);
  }
  c.stats.mean = c.stats.evaluated ? sum / static_cast<double>(c.stats.evaluated) : 0.0;
  c.stats.pass = v.pass;
  c.stats.margin = tol - c.stats.max;
  c.expect = regular_expectation(f);
  c.details = std::move(details);
  ctx.reporter.check(c);
}

std::vector<BackendRun> backends_of(BackendChoice choice) {
  std::vector<BackendRun> out;
  if (choice != BackendChoice::FiniteDifference) out.push_back({OperatorOptions{}, "jets", false});
  if (choice != BackendChoice::Jets) {
    OperatorOptions fd;
    fd.backend = Backend::FiniteDifference;
    out.push_back({fd, "fd", true});
  }
  return out;
}

}  // namespace

std::string_view to_string(SuiteKind s) {
  switch (s) {
    case SuiteKind::Theorem1: return "theorem1";
    case SuiteKind::Lemma1: return "lemma1";
    case SuiteKind::Hyperholomorphy: return "hyperholomorphy";
    case SuiteKind::FueterTheorem: return "fueter_theorem";
    case SuiteKind::Integral: return "integral";
    case SuiteKind::Generalized: return "generalized";
  }
  return "?";
}

SuiteKind parse_suite(std::string_view name) {
  for (SuiteKind s : kAllSuites) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorKind::ConfigError, fmt::format("unknown suite '{}'", name));
}

std::string_view to_string(BackendChoice b) {
  switch (b) {
    case BackendChoice::Jets: return "jets";
    case BackendChoice::FiniteDifference: return "fd";
    case BackendChoice::Both: return "both";
  }
  return "?";
}

BackendChoice parse_backend_choice(std::string_view name) {
  if (name == "jets") return BackendChoice::Jets;
  if (name == "fd") return BackendChoice::FiniteDifference;
  if (name == "both") return BackendChoice::Both;
  throw Error(ErrorKind::ConfigError, fmt::format("unknown backend '{}'", name));
}

SampleDomain SuiteConfig::domain() const {
  SampleDomain d;
  d.t_min = t_min;
  d.t_max = t_max;
  d.r_min = r_min;
  d.r_max = r_max;
  d.sin_beta_min = sin_beta_min;
  return d;
}

SuiteConfig parse_config(std::string_view text) {
  SuiteConfig c;
  std::map<std::string, std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ConfigError, fmt::format("expected key=value, got '{}'", line));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!seen.emplace(key, value).second) throw Error(ErrorKind::ConfigError, fmt::format("duplicate key '{}'", key));

    if (key == "functions") {
      c.functions = split(value, ';');
      for (const auto& id : c.functions) function_from_id(id);
    } else if (key == "suites") {
      c.suites.clear();
      for (const auto& s : split(value, ',')) c.suites.push_back(parse_suite(s));
      if (c.suites.empty()) throw Error(ErrorKind::ConfigError, "empty suite list");
    } else if (key == "t_min") {
      c.t_min = parse_number<double>(key, value);
    } else if (key == "t_max") {
      c.t_max = parse_number<double>(key, value);
    } else if (key == "r_min") {
      c.r_min = positive(key, value);
    } else if (key == "r_max") {
      c.r_max = positive(key, value);
    } else if (key == "sin_beta_min") {
      c.sin_beta_min = positive(key, value);
    } else if (key == "samples") {
      c.samples = parse_number<std::size_t>(key, value);
      if (c.samples == 0) throw Error(ErrorKind::ConfigError, "samples must be at least 1");
    } else if (key == "tol") {
      c.tol = positive(key, value);
    } else if (key == "tol_fd") {
      c.tol_fd = positive(key, value);
    } else if (key == "lemma_tol") {
      c.lemma_tol = positive(key, value);
    } else if (key == "fueter_tol") {
      c.fueter_tol = positive(key, value);
    } else if (key == "fueter_tol_fd") {
      c.fueter_tol_fd = positive(key, value);
    } else if (key == "integral_tol") {
      c.integral_tol = positive(key, value);
    } else if (key == "backend") {
      c.backend = parse_backend_choice(value);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "resolution") {
      c.resolution = parse_number<int>(key, value);
      if (c.resolution < 2 || c.resolution > 256) {
        throw Error(ErrorKind::ConfigError, fmt::format("resolution {} outside [2, 256]", c.resolution));
      }
    } else if (key == "surfaces") {
      c.surfaces = split(value, ';');
      for (const auto& d : c.surfaces) surface_from_descriptor(d);
    } else if (key == "output") {
      c.output = value;
    } else {
      throw Error(ErrorKind::ConfigError, fmt::format("unknown key '{}' on line {}", key, line_no));
    }
  }
  if (!(c.t_min < c.t_max)) throw Error(ErrorKind::ConfigError, "t_min must be below t_max");
  if (!(c.r_min < c.r_max)) throw Error(ErrorKind::ConfigError, "r_min must be below r_max");
  if (c.sin_beta_min >= 1.0) throw Error(ErrorKind::ConfigError, "sin_beta_min must be below 1");
  return c;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, fmt::format("cannot read config '{}'", path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize(const SuiteConfig& c) {
  std::vector<std::string> suites;
  for (SuiteKind s : c.suites) suites.emplace_back(to_string(s));
  std::string out;
  if (!c.functions.empty()) out += fmt::format("functions = {}\n", join(c.functions, "; "));
  out += fmt::format("suites = {}\n", join(suites, ", "));
  out += fmt::format("t_min = {}\nt_max = {}\nr_min = {}\nr_max = {}\nsin_beta_min = {}\n", c.t_min, c.t_max, c.r_min,
                     c.r_max, c.sin_beta_min);
  out += fmt::format("samples = {}\n", c.samples);
  out += fmt::format("tol = {}\ntol_fd = {}\nlemma_tol = {}\nfueter_tol = {}\nfueter_tol_fd = {}\nintegral_tol = {}\n",
                     c.tol, c.tol_fd, c.lemma_tol, c.fueter_tol, c.fueter_tol_fd, c.integral_tol);
  out += fmt::format("backend = {}\nseed = {}\nresolution = {}\n", to_string(c.backend), c.seed, c.resolution);
  if (!c.surfaces.empty()) out += fmt::format("surfaces = {}\n", join(c.surfaces, "; "));
  if (!c.output.empty()) out += fmt::format("output = {}\n", c.output);
  return out;
}

SuiteOutcome run_suite(const SuiteConfig& config, std::ostream& report, Execution exec) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  std::vector<QFunction> functions;
  if (config.functions.empty()) {
    functions = standard_members();
  } else {
    for (const auto& id : config.functions) functions.push_back(function_from_id(id));
  }
  const auto backends = backends_of(config.backend);
  const bool wants_family = std::any_of(config.suites.begin(), config.suites.end(), [](SuiteKind s) {
    return s == SuiteKind::Integral || s == SuiteKind::Generalized;
  });
  const std::vector<Hypersurface> family = wants_family ? surfaces_of(config) : std::vector<Hypersurface>{};

  Reporter reporter(report);
  const Context ctx{config, exec, reporter};
  {
    Json header;
    header["record"] = "config";
    header["config"] = serialize(config);
    reporter.write(header);
  }

  Json timing = Json::object();
  for (SuiteKind suite : config.suites) {
    const auto suite_start = Clock::now();
    for (const auto& f : functions) {
      std::vector<Quaternion> samples;
      const bool pointwise = suite != SuiteKind::Integral && suite != SuiteKind::Generalized;
      if (pointwise) {
        try {
          samples = samples_for(f, config.domain(), config.samples, config.seed);
        } catch (const Error& e) {
          Check c;
          c.suite = to_string(suite);
          c.function = f.id();
          c.check = "sampling";
          c.anchor = config.domain().restricted_by(f.domain()).describe();
          c.backend = "none";
          c.errors = 1;
          c.first_error = e.what();
          ctx.reporter.check(c);
          continue;
        }
      }
      for (const auto& b : backends) {
        switch (suite) {
          case SuiteKind::Theorem1: theorem1_suite(ctx, f, samples, b); break;
          case SuiteKind::Lemma1: lemma1_suite(ctx, f, samples, b); break;
          case SuiteKind::Hyperholomorphy: hyperholomorphy_suite(ctx, f, samples, b); break;
          case SuiteKind::FueterTheorem: fueter_suite(ctx, f, samples, b); break;
          case SuiteKind::Integral: integral_suite(ctx, f, family, b); break;
          case SuiteKind::Generalized: generalized_suite(ctx, f, family, b); break;
        }
      }
    }
    timing[std::string(to_string(suite))] = std::chrono::duration<double>(Clock::now() - suite_start).count();
  }

  const SuiteOutcome outcome = reporter.outcome();
  Json summary;
  summary["record"] = "summary";
  summary["checks"] = outcome.checks;
  summary["unmet"] = outcome.unmet;
  summary["status"] = outcome.ok() ? "ok" : "unmet";
  reporter.write(summary);

  Json t;
  t["record"] = "timing";
  t["seconds"] = timing;
  t["total_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  reporter.write(t);
  return outcome;
}

std::string summary_table(std::string_view report) {
  std::string out = fmt::format("{:<16} {:<18} {:<17} {:<5} {:>11} {:>9} {:<4} {:<8} {}\n", "suite", "function", "check",
                                "back", "max", "tol", "pass", "expected", "met");
  std::istringstream in{std::string(report)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json r = Json::parse(line, nullptr, false);
    if (r.is_discarded() || r.value("record", "") != "check") continue;
    out += fmt::format("{:<16} {:<18} {:<17} {:<5} {:>11.3e} {:>9.1e} {:<4} {:<8} {}\n", r.value("suite", ""),
                       r.value("function", ""), r.value("check", ""), r.value("backend", ""), r.value("max", 0.0),
                       r.value("tolerance", 0.0), r.value("pass", false) ? "yes" : "no", r.value("expected", ""),
                       r.value("met", false) ? "yes" : "NO");
  }
  return out;
}

}  // namespace quatreg
