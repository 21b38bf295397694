// sigmacalc verify: runs verification suites on a bundle and prints a report.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sigmacalc/run.hpp"

namespace {

void apply_budget_override() {
  const char* env = std::getenv("SIGMACALC_REWRITE_BUDGET");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(env, &end, 10);
  if (*end != '\0' || n == 0) {
    throw sigmacalc::ConfigError("SIGMACALC_REWRITE_BUDGET must be a positive integer");
  }
  sigmacalc::Presentation::set_default_rewrite_budget(static_cast<std::size_t>(n));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sigmacalc;
  CLI::App app{"Exact verification of sigma-generated first-order calculi", "sigmacalc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig config;
  std::string format = "text";
  std::string output;
  std::optional<std::size_t> slack;

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites and emit a report");
  verify->add_option("--bundle", config.bundle, "trivial | finite | podles | user")
      ->check(CLI::IsMember({"trivial", "finite", "podles", "user"}));
  verify->add_option("--group", config.group, "Structure Hopf algebra of the trivial bundle: u1 | suq2")
      ->check(CLI::IsMember({"u1", "suq2"}));
  verify->add_option("--degree", config.degree, "Degree window D (>= 1)");
  verify->add_option("--slack", slack, "Extra H-degree for sigma iterations (default: longest connection leg)");
  verify->add_option("--ideal", config.ideal, "Vertical ideal: ALL, 0 or ';'-separated generators");
  verify->add_option("--suite", config.suites,
                     "hopf, galois, braiding, connection, principality, lemmas, descent, obstructions, all")
      ->delimiter(',');
  verify->add_option("--lift", config.lift, "Lift of N_bal to the universal calculus")
      ->check(CLI::IsMember({"maximal"}));
  verify->add_option("--format", format, "text | structured")->check(CLI::IsMember({"text", "structured"}));
  verify->add_option("--output", output, "Write the report here instead of stdout");
  verify->add_option("--action-file", config.action_file, "Finite action (points/group/act lines)");
  verify->add_option("--presentation-file", config.presentation_file, "Algebras for --bundle user");
  verify->add_option("--seed-file", config.seed_file, "Connection seeds ('seed <h> = <tensor>')");
  verify->add_flag("--timings", config.timings, "Record elapsed times and a timestamp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  config.slack = slack;

  try {
    apply_budget_override();
  } catch (const ConfigError& e) {
    std::cerr << "sigmacalc: " << e.what() << '\n';
    return kExitConfig;
  }

  const RunResult result = run(config);
  if (result.exit_code == kExitConfig) {
    std::cerr << "sigmacalc: invalid configuration: " << result.diagnostic << '\n';
    return result.exit_code;
  }
  if (!result.diagnostic.empty()) std::cerr << "sigmacalc: " << result.diagnostic << '\n';
  if (result.exit_code == kExitInconsistent && result.report.entries.empty()) return result.exit_code;

  const std::string text = emit_report(
      result.report, format == "structured" ? ReportFormat::Structured : ReportFormat::Text);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "sigmacalc: cannot write '" << output << "'\n";
      return kExitConfig;
    }
    out << text;
  }
  return result.exit_code;
}
