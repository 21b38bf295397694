// Report rendering, the exit-code contract and the command-line front end.

#include "doctest.h"

#include <cstdio>
#include <sys/wait.h>

#include "json.hpp"
#include "sigmacalc/expression_parser.hpp"
#include "sigmacalc/sigma_calculus.hpp"
#include "support.hpp"

using namespace sigmacalc;
using testing_support::data_path;

namespace {

struct Process {
  int exit_code = -1;
  std::string out;
};

Process run_cli(const std::string& args) {
  Process p;
  const std::string command = std::string(SIGMACALC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe);
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) p.out.append(buffer, n);
  const int status = pclose(pipe);
  p.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

RunConfig finite_config(const std::string& action_file, const std::string& ideal,
                        std::vector<std::string> suites) {
  RunConfig c;
  c.bundle = "finite";
  c.action_file = action_file;
  c.ideal = ideal;
  c.suites = std::move(suites);
  return c;
}

}  // namespace

TEST_CASE("exit codes through the library entry point") {
  CHECK(run(finite_config("", "d1", {"all"})).exit_code == kExitOk);
  // Z3 with I = (d1): σ-stability fails. Lemmas alone give 1; with descent
  // the ver-lift certificate fails too, which is 3.
  CHECK(run(finite_config(data_path("z3.act"), "d1", {"lemmas"})).exit_code == kExitFail);
  CHECK(run(finite_config(data_path("z3.act"), "d1", {"lemmas", "descent"})).exit_code == kExitInconsistent);

  RunConfig bad = finite_config("", "0", {"all"});
  bad.degree = 0;
  CHECK(run(bad).exit_code == kExitConfig);
  CHECK(run(finite_config(data_path("z2_not_free.act"), "0", {"all"})).exit_code == kExitConfig);
  CHECK(run(finite_config("", "0", {"nonsense"})).exit_code == kExitConfig);
  CHECK(run(finite_config("", "t - 1", {"all"})).exit_code == kExitConfig);
  CHECK(run(finite_config("/nonexistent.act", "0", {"all"})).exit_code == kExitConfig);
}

TEST_CASE("every FAIL carries a witness and an anchor") {
  const RunResult r = run(finite_config(data_path("z3.act"), "d1", {"all"}));
  bool any_fail = false;
  for (const auto& e : r.report.entries) {
    CHECK_FALSE(e.anchor.empty());
    if (e.status == Status::Fail) {
      any_fail = true;
      CHECK_FALSE(e.witness.empty());
    }
  }
  CHECK(any_fail);
  CHECK(r.report.has_failures());
}

TEST_CASE("a sigma-stability witness parses back and fails the membership it claims") {
  const RunResult r = run(finite_config(data_path("z3.act"), "d1", {"lemmas"}));
  const CheckEntry* e = testing_support::find_entry(r.report, "lemmas/sigma-stability");
  REQUIRE(e);
  REQUIRE(e->status == Status::Fail);
  const BundlePtr b = make_finite_bundle(parse_action(testing_support::read_text(data_path("z3.act"))));
  const Legs ah = b->comodule_algebra().legs_ah();
  const SigmaCalculus calc(b, VerticalIdeal::parse("d1", b->hopf()), 2, default_slack(*b, 2));
  const Tensor v = normal_form(parse_tensor(e->witness, ah), ah);
  CHECK(calc.in_vertical(v) == std::optional<bool>(true));
  CHECK(calc.in_vertical(normal_form(b->galois->braiding_canonical(v), ah)) == std::optional<bool>(false));
}

TEST_CASE("structured reports are valid JSON and byte-stable") {
  RunConfig c = finite_config("", "d1", {"all"});
  const std::string first = emit_report(run(c).report, ReportFormat::Structured);
  const std::string second = emit_report(run(c).report, ReportFormat::Structured);
  CHECK(first == second);
  const auto j = nlohmann::json::parse(first);
  CHECK(j.at("tool_version") == kToolVersion);
  CHECK(j.at("entries").is_array());
  CHECK(j.at("summary").at("FAIL") == 0);
  for (const auto& e : j.at("entries")) {
    for (const char* key : {"suite", "check", "anchor", "status", "witness", "detail", "elapsed_ms"}) {
      CHECK(e.contains(key));
    }
  }
  const std::string text = emit_report(run(c).report, ReportFormat::Text);
  CHECK(text.find("summary:") != std::string::npos);
}

TEST_CASE("command-line front end") {
  const std::string z3 = data_path("z3.act");
  CHECK(run_cli("verify --bundle finite --ideal d1").exit_code == 0);
  CHECK(run_cli("verify --bundle finite --action-file " + z3 + " --ideal d1 --suite lemmas").exit_code == 1);
  CHECK(run_cli("verify --bundle finite --action-file " + z3 + " --ideal d1").exit_code == 3);
  CHECK(run_cli("verify --degree 0").exit_code == 2);
  CHECK(run_cli("verify --bundle nowhere").exit_code == 2);
  CHECK(run_cli("verify --bundle finite --action-file " + data_path("z2_not_free.act")).exit_code == 2);

  const std::string args = "verify --bundle trivial --ideal '(t - 1)^2' --format structured";
  const Process a = run_cli(args), b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("config").at("bundle") == "trivial");
  CHECK(j.at("timestamp") == "deterministic");

  const Process user = run_cli("verify --bundle user --presentation-file " + data_path("qtorus.pres") +
                               " --seed-file " + data_path("qtorus.seeds") + " --suite principality");
  CHECK(user.exit_code == 0);
  CHECK(user.out.find("PASS") != std::string::npos);
}
