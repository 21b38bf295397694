#include "sigmacalc/run.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace sigmacalc {

namespace {

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot read ") + what + " '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

bool is_certificate(const CheckEntry& e) {
  return e.suite == "descent" &&
         (e.check == "omega-in-lift" || e.check == "ver-lift-in-ideal" || e.check == "lift-image");
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

const std::vector<std::string>& suite_order() {
  static const std::vector<std::string> order{"hopf",         "galois", "braiding", "connection",
                                              "principality", "lemmas", "descent",  "obstructions"};
  return order;
}

std::vector<std::string> resolve_suites(const std::vector<std::string>& requested) {
  if (requested.empty()) throw ConfigError("no suites requested");
  std::set<std::string> wanted;
  for (const auto& s : requested) {
    if (s == "all") {
      wanted.insert(suite_order().begin(), suite_order().end());
    } else if (std::find(suite_order().begin(), suite_order().end(), s) != suite_order().end()) {
      wanted.insert(s);
    } else {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }
  std::vector<std::string> out;
  for (const auto& s : suite_order()) {
    if (wanted.count(s)) out.push_back(s);
  }
  return out;
}

BundlePtr build_bundle(const RunConfig& config, std::size_t horizon) {
  try {
    if (config.bundle == "trivial") {
      if (config.group == "u1") return make_trivial_bundle(circle_hopf(), horizon);
      if (config.group == "suq2") return make_trivial_bundle(quantum_su2_hopf(), horizon);
      throw ConfigError("unknown group '" + config.group + "' (expected u1 or suq2)");
    }
    if (config.bundle == "finite") {
      const FiniteAction action = config.action_file.empty()
                                      ? cyclic_action(4, 2)
                                      : parse_action(read_file(config.action_file, "action file"));
      return make_finite_bundle(action);
    }
    if (config.bundle == "podles") {
      if (config.seed_file.empty()) return make_podles_bundle(horizon);
      const std::string text = std::string(hopf_fibration_source()) + "\n" +
                               read_file(config.seed_file, "seed file");
      auto b = std::make_shared<Bundle>(*make_user_bundle(parse_document(text), horizon));
      b->kind = BundleKind::Podles;
      b->name = "podles";
      return b;
    }
    if (config.bundle == "user") {
      if (config.presentation_file.empty()) throw ConfigError("--bundle user needs --presentation-file");
      std::string text = read_file(config.presentation_file, "presentation file");
      if (!config.seed_file.empty()) text += "\n" + read_file(config.seed_file, "seed file");
      return make_user_bundle(parse_document(text), horizon);
    }
    throw ConfigError("unknown bundle '" + config.bundle + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  } catch (const InvalidConnectionSeed& e) {
    throw ConfigError(e.what());
  } catch (const NotConfluent& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunResult run(const RunConfig& config) {
  RunResult result;
  Report& report = result.report;
  report.header.tool_version = kToolVersion;
  report.header.timestamp = config.timings ? utc_now() : "deterministic";
  auto& cfg = report.header.config;
  cfg["bundle"] = config.bundle;
  if (config.bundle == "trivial") cfg["group"] = config.group;
  cfg["degree"] = std::to_string(config.degree);
  cfg["ideal"] = config.ideal;
  cfg["lift"] = config.lift;
  if (!config.action_file.empty()) cfg["action_file"] = config.action_file;
  if (!config.presentation_file.empty()) cfg["presentation_file"] = config.presentation_file;
  if (!config.seed_file.empty()) cfg["seed_file"] = config.seed_file;

  try {
    if (config.degree < 1) throw ConfigError("degree must be at least 1");
    if (config.lift != "maximal") throw ConfigError("unknown lift '" + config.lift + "' (only maximal)");
    const std::vector<std::string> suites = resolve_suites(config.suites);
    cfg["suites"] = join(suites, ",");
    const std::size_t d = config.degree;
    const std::size_t horizon = 2 * d + std::max(d, config.slack.value_or(d));
    const BundlePtr bundle = build_bundle(config, horizon);
    const std::size_t slack = config.slack.value_or(default_slack(*bundle, d));
    cfg["slack"] = std::to_string(slack);
    cfg["bundle_name"] = bundle->name;

    std::optional<VerticalIdeal> ideal;
    try {
      ideal = VerticalIdeal::parse(config.ideal, bundle->hopf());
    } catch (const ParseError& e) {
      throw ConfigError(std::string("ideal: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("ideal: ") + e.what());
    }

    auto append = [&](CheckList xs) {
      for (auto& e : xs) report.entries.push_back(std::move(e));
    };
    std::unique_ptr<SigmaCalculus> calculus;
    auto need_calculus = [&]() -> const SigmaCalculus& {
      if (!calculus) calculus = std::make_unique<SigmaCalculus>(bundle, *ideal, d, slack);
      return *calculus;
    };
    for (const auto& suite : suites) {
      if (suite == "hopf") {
        append(verify_bialgebra_axioms(bundle->hopf(), d));
        if (bundle->kind != BundleKind::Trivial) append(verify_comodule_axioms(*bundle->comodule, d));
      } else if (suite == "galois") {
        CheckEntry e = verify_translation_table(*bundle->galois);
        e.suite = "galois";
        report.entries.push_back(std::move(e));
      } else if (suite == "braiding") {
        append(verify_braiding_properties(*bundle->galois, d));
      } else if (suite == "connection") {
        append(verify_connection_properties(*bundle->connection, d, d));
      } else if (suite == "principality") {
        append(verify_principality(*bundle, d));
      } else if (suite == "lemmas") {
        append(need_calculus().lemma_checks());
      } else if (suite == "descent") {
        append(need_calculus().descent_checks());
      } else if (suite == "obstructions") {
        append(need_calculus().obstruction_checks());
      }
    }
  } catch (const ConfigError& e) {
    result.exit_code = kExitConfig;
    result.diagnostic = e.what();
    return result;
  } catch (const std::exception& e) {
    result.exit_code = kExitInconsistent;
    result.diagnostic = std::string("internal error: ") + e.what();
    return result;
  }

  if (!config.timings) {
    for (auto& e : report.entries) e.elapsed_ms = 0.0;
  }
  for (const auto& e : report.entries) {
    if (e.status != Status::Fail) continue;
    if (is_certificate(e)) {
      result.exit_code = kExitInconsistent;
      result.diagnostic = "well-definedness certificate failed: " + e.suite + "/" + e.check;
      break;
    }
    result.exit_code = kExitFail;
  }
  return result;
}

}  // namespace sigmacalc
