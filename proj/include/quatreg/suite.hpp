#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "quatreg/parallel.hpp"
#include "quatreg/sample_domain.hpp"

namespace quatreg {

enum class SuiteKind { Theorem1, Lemma1, Hyperholomorphy, FueterTheorem, Integral, Generalized };
inline constexpr SuiteKind kAllSuites[] = {SuiteKind::Theorem1,      SuiteKind::Lemma1,   SuiteKind::Hyperholomorphy,
                                           SuiteKind::FueterTheorem, SuiteKind::Integral, SuiteKind::Generalized};

std::string_view to_string(SuiteKind s);
/// Throws ConfigError naming the token.
SuiteKind parse_suite(std::string_view name);

enum class BackendChoice { Jets, FiniteDifference, Both };

std::string_view to_string(BackendChoice b);
BackendChoice parse_backend_choice(std::string_view name);

/// Flat key=value configuration of a verification run. Lists of function ids
/// and surface descriptors are separated by ';' since both may contain commas.
struct SuiteConfig {
  std::vector<std::string> functions;  // empty: the standard members
  std::vector<SuiteKind> suites{std::begin(kAllSuites), std::end(kAllSuites)};
  double t_min = -1.0;
  double t_max = 1.0;
  double r_min = 0.5;
  double r_max = 2.0;
  double sin_beta_min = 0.1;
  std::size_t samples = 200;
  double tol = 1e-8;           // jets backend, theorem1 and hyperholomorphy
  double tol_fd = 1e-4;        // finite-difference backend, same checks
  double lemma_tol = 1e-9;
  double fueter_tol = 1e-6;
  double fueter_tol_fd = 1e-2; // third differences lose most digits
  double integral_tol = 1e-3;
  BackendChoice backend = BackendChoice::Jets;
  std::uint64_t seed = 20240601;
  int resolution = 12;
  std::vector<std::string> surfaces;  // empty: the standard family at `resolution`
  std::string output;                 // empty: standard output

  SampleDomain domain() const;

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

/// Parses key=value lines; '#' starts a comment. Unknown keys, malformed
/// values and unknown function ids or surfaces throw ConfigError.
SuiteConfig parse_config(std::string_view text);
SuiteConfig load_config(const std::string& path);
/// Canonical text; parse_config(serialize(c)) == c.
std::string serialize(const SuiteConfig& c);

/// Outcome of a whole run. The report is JSON Lines: one "check" record per
/// check, then a "summary" record, then a "timing" record. Everything before
/// the timing record depends only on the config.
struct SuiteOutcome {
  std::size_t checks = 0;
  std::size_t unmet = 0;  // checks whose pass/fail differs from the expectation
  bool ok() const { return unmet == 0; }
};

SuiteOutcome run_suite(const SuiteConfig& config, std::ostream& report, Execution exec = Execution::OpenMP);

/// Column summary of a report written by run_suite, one line per check.
std::string summary_table(std::string_view report);

}  // namespace quatreg
