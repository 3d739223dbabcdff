// quatreg: batch front-end for the verification suites.
//
//   quatreg run <config-file>
//   quatreg list
//   quatreg check <suite> <function-id> [--tol T] [--seed S] [--res N] [--samples M] [--backend jets|fd|both]
//
// Exit status: 0 when every check met its expectation, 1 otherwise, 2 on a bad
// configuration or command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "quatreg/catalog.hpp"
#include "quatreg/error.hpp"
#include "quatreg/suite.hpp"

namespace {

using namespace quatreg;

int run_config(const SuiteConfig& config) {
  std::ostringstream report;
  const SuiteOutcome outcome = run_suite(config, report);
  if (config.output.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream out(config.output);
    if (!out) throw Error(ErrorKind::ConfigError, "cannot write report to '" + config.output + "'");
    out << report.str();
  }
  std::cerr << summary_table(report.str());
  std::cerr << outcome.checks << " checks, " << outcome.unmet << " not as expected\n";
  return outcome.ok() ? 0 : 1;
}

void set_suite_tolerance(SuiteConfig& c, SuiteKind suite, double tol) {
  switch (suite) {
    case SuiteKind::Theorem1:
    case SuiteKind::Hyperholomorphy:
      c.tol = c.tol_fd = tol;
      break;
    case SuiteKind::Lemma1: c.lemma_tol = c.tol_fd = tol; break;
    case SuiteKind::FueterTheorem: c.fueter_tol = c.fueter_tol_fd = tol; break;
    case SuiteKind::Integral:
    case SuiteKind::Generalized: c.integral_tol = tol; break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of left-Cullen regularity"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the suites described by a key=value config file");
  std::string config_path;
  run->add_option("config", config_path, "Config file")->required();

  auto* list = app.add_subcommand("list", "List the standard catalog members");

  auto* check = app.add_subcommand("check", "Run one suite on one function");
  std::string suite_name;
  std::string function_id;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> res;
  std::optional<std::size_t> samples;
  std::string backend = "jets";
  check->add_option("suite", suite_name, "theorem1, lemma1, hyperholomorphy, fueter_theorem, integral, generalized")
      ->required();
  check->add_option("function", function_id, "Catalog id, e.g. power:3")->required();
  check->add_option("--tol", tol, "Tolerance for the suite's checks");
  check->add_option("--seed", seed, "Sampling seed");
  check->add_option("--res", res, "Quadrature resolution for the surface family");
  check->add_option("--samples", samples, "Number of sample points");
  check->add_option("--backend", backend, "jets, fd or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*list) {
      std::cout << list_catalog();
      return 0;
    }
    if (*run) return run_config(load_config(config_path));

    // Build the config through the parser so check and run validate identically.
    std::ostringstream text;
    text << "functions = " << function_id << "\nsuites = " << suite_name << "\nbackend = " << backend << "\n";
    if (seed) text << "seed = " << *seed << "\n";
    if (res) text << "resolution = " << *res << "\n";
    if (samples) text << "samples = " << *samples << "\n";
    SuiteConfig config = parse_config(text.str());
    if (tol) set_suite_tolerance(config, config.suites.front(), *tol);
    return run_config(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError ? 2 : 1;
  }
}
