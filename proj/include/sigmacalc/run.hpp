// One verification run: configuration, bundle construction, suites in
// dependency order, and the exit-code contract.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmacalc/report.hpp"
#include "sigmacalc/sigma_calculus.hpp"

namespace sigmacalc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Suites in the order they run.
const std::vector<std::string>& suite_order();

struct RunConfig {
  std::string bundle = "podles";  // trivial | finite | podles | user
  std::string group = "u1";       // structure Hopf algebra of a trivial bundle: u1 | suq2
  std::size_t degree = 2;
  std::optional<std::size_t> slack;
  std::string ideal = "0";
  std::vector<std::string> suites{"all"};
  std::string lift = "maximal";
  std::string action_file;
  std::string presentation_file;
  std::string seed_file;
  /// Record wall-clock timings and a timestamp; off for byte-stable reports.
  bool timings = false;
};

/// Bad flags, unreadable or malformed inputs, a non-free action.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitConfig = 2, kExitInconsistent = 3 };

struct RunResult {
  Report report;
  int exit_code = kExitOk;
  /// Set for exit codes 2 and 3.
  std::string diagnostic;
};

/// Expands "all", rejects unknown or empty suite lists.
std::vector<std::string> resolve_suites(const std::vector<std::string>& requested);

/// Builds the bundle named by the configuration with a connection table
/// reaching H-degree `horizon`. Throws ConfigError.
BundlePtr build_bundle(const RunConfig& config, std::size_t horizon);

/// Validates, runs and never throws: configuration problems give exit code 2,
/// failed well-definedness certificates or internal errors give 3, any other
/// FAIL gives 1.
RunResult run(const RunConfig& config);

}  // namespace sigmacalc
