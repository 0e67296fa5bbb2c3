// Command-line front end: scenario ingestion, one-shot evaluations and
// verification-suite runs.
//
// Exit codes: 0 success / all checks pass, 1 check failures, 2 usage or
// input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "ucpkit/errors.hpp"
#include "ucpkit/scenario.hpp"
#include "ucpkit/verifier.hpp"

namespace {

ucp::Model parse_model_flag(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ucp::parse_error("--model expects kind:size, e.g. quantum:3");
  }
  const std::string kind = text.substr(0, colon);
  const int size = std::stoi(text.substr(colon + 1));
  if (kind == "classical") return ucp::Model::classical(size);
  if (kind == "quantum") return ucp::Model::quantum(size);
  throw ucp::parse_error("--model kind must be classical or quantum");
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string id = text.substr(start, comma - start);
    if (!id.empty()) out.push_back(id);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run_verify(const std::string& scenario_path, const std::string& model_flag,
               const std::string& suite, std::optional<int> trials,
               std::optional<std::uint64_t> seed, std::optional<double> tol,
               const std::string& report_path, const std::string& format, int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
  std::optional<ucp::Scenario> scenario;
  ucp::Model model = ucp::Model::classical(1);
  if (!scenario_path.empty()) {
    scenario = ucp::load_scenario(scenario_path);
    model = scenario->model;
  } else if (!model_flag.empty()) {
    model = parse_model_flag(model_flag);
  } else {
    std::cerr << "verify needs a scenario file or --model\n";
    return 2;
  }

  // Flags override the scenario's suite section; its values are defaults.
  int use_trials = 500;
  std::uint64_t use_seed = 42;
  double use_tol = 1e-8;
  std::vector<std::string> ids;
  if (scenario && scenario->suite) {
    use_trials = scenario->suite->trials;
    use_seed = scenario->suite->seed;
    use_tol = scenario->suite->tolerance;
    ids = scenario->suite->checks;
  }
  if (trials) use_trials = *trials;
  if (seed) use_seed = *seed;
  if (tol) use_tol = *tol;
  if (!suite.empty()) ids = split_ids(suite);
  if (ids.empty()) ids = {"all"};
  if (ids.size() == 1 && ids[0] == "all") ids = ucp::all_check_ids(model);

  std::vector<ucp::CheckSpec> specs;
  for (const std::string& id : ids) {
    if (!ucp::check_exists(id)) {
      std::cerr << "unknown check id: " << id << "\n";
      return 2;
    }
    if (!ucp::check_applicable(id, model)) {
      std::cerr << "check " << id << " is not applicable to this model kind\n";
      return 2;
    }
    specs.push_back({id, model, use_trials, use_seed, use_tol});
  }

  const ucp::RunMode mode = threads == 1 ? ucp::RunMode::Serial : ucp::RunMode::Parallel;
  const ucp::VerificationReport report = ucp::run_suite(specs, mode);

  std::string body;
  if (format == "structured") {
    body = ucp::report_to_json(report).dump(2) + "\n";
  } else {
    body = ucp::report_to_text(report);
  }
  if (report_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report to " << report_path << "\n";
      return 2;
    }
    out << body;
  }
  return report.all_passed() ? 0 : 1;
}

int run_eval(const std::string& scenario_path, const std::vector<std::string>& expr) {
  const ucp::Scenario scenario = ucp::load_scenario(scenario_path);
  if (expr.empty()) {
    std::cerr << "eval needs an expression\n";
    return 2;
  }
  const std::string& op = expr[0];
  nlohmann::json out;
  const auto need = [&](std::size_t n) {
    if (expr.size() != n + 1) {
      throw ucp::parse_error(op + " expects " + std::to_string(n) + " arguments");
    }
  };
  if (op == "product") {
    need(2);
    out = ucp::observable_to_json(
        ucp::product(scenario.observable(expr[1]), scenario.observable(expr[2])));
  } else if (op == "conditional") {
    need(2);
    out = ucp::state_to_json(ucp::conditional(scenario.state(expr[1]), scenario.event(expr[2])));
  } else if (op == "expect") {
    need(2);
    out = ucp::expectation(scenario.state(expr[1]), scenario.observable(expr[2]));
  } else if (op == "spectrum") {
    need(1);
    out = ucp::observable_to_json(scenario.observable(expr[1]));
  } else if (op == "norm") {
    need(1);
    out = ucp::norm(scenario.observable(expr[1]));
  } else if (op == "a1") {
    need(3);
    out = ucp::a1_residual(scenario.state(expr[1]), scenario.event(expr[2]),
                           scenario.event(expr[3]));
  } else {
    std::cerr << "unknown expression: " << op
              << " (expected product|conditional|expect|spectrum|norm|a1)\n";
    return 2;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional quantum-probability toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, model_flag, suite, report_path;
  std::string format = "text";
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int threads = 0;

  CLI::App* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("scenario", scenario_path, "scenario file (JSON)");
  verify->add_option("--model", model_flag, "model as kind:size when no scenario is given");
  verify->add_option("--suite", suite, "comma-separated check ids, or 'all'");
  verify->add_option("--trials", trials, "trials per check (default 500)");
  verify->add_option("--seed", seed, "suite seed (default 42)");
  verify->add_option("--tol", tol, "base check tolerance (default 1e-8)");
  verify->add_option("--report", report_path, "write the report to this path");
  verify->add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  verify->add_option("--threads", threads, "worker threads (1 = serial reference)");

  std::string eval_scenario;
  std::vector<std::string> expr;
  CLI::App* eval = app.add_subcommand("eval", "evaluate one expression");
  eval->add_option("scenario", eval_scenario, "scenario file (JSON)")->required();
  eval->add_option("expr", expr, "product X Y | conditional MU E | expect MU X | spectrum X | norm X | a1 MU E F");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      return run_verify(scenario_path, model_flag, suite, trials, seed, tol, report_path,
                        format, threads);
    }
    return run_eval(eval_scenario, expr);
  } catch (const ucp::error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
