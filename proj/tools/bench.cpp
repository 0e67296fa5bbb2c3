// Compares the serial reference execution of the verification suite against
// the OpenMP-parallel path and confirms both produce identical reports.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ucpkit/scenario.hpp"
#include "ucpkit/verifier.hpp"

namespace {

double run_timed(const std::vector<ucp::CheckSpec>& specs, ucp::RunMode mode,
                 ucp::VerificationReport& out) {
  const auto start = std::chrono::steady_clock::now();
  out = ucp::run_suite(specs, mode);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

nlohmann::json normalized(const ucp::VerificationReport& report) {
  nlohmann::json j = ucp::report_to_json(report);
  for (auto& check : j["checks"]) check["elapsed_ms"] = 0.0;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 200;
  int dim = 6;
  if (argc > 1) trials = std::atoi(argv[1]);
  if (argc > 2) dim = std::atoi(argv[2]);

  const ucp::Model model = ucp::Model::quantum(dim);
  std::vector<ucp::CheckSpec> specs;
  for (const std::string& id : ucp::all_check_ids(model)) {
    specs.push_back({id, model, trials, 42, 1e-8});
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("suite: quantum d=%d, %d trials/check, %zu checks, %d threads\n", dim, trials,
              specs.size(), threads);

  ucp::VerificationReport serial_report, parallel_report;
  const double serial_s = run_timed(specs, ucp::RunMode::Serial, serial_report);
  const double parallel_s = run_timed(specs, ucp::RunMode::Parallel, parallel_report);

  std::printf("serial   : %8.3f s   (%s)\n", serial_s,
              serial_report.all_passed() ? "all pass" : "FAILURES");
  std::printf("parallel : %8.3f s   (%s)\n", parallel_s,
              parallel_report.all_passed() ? "all pass" : "FAILURES");
  std::printf("speedup  : %8.2fx\n", serial_s / parallel_s);

  const bool identical = normalized(serial_report) == normalized(parallel_report);
  std::printf("reports  : %s\n", identical ? "identical" : "DIVERGENT");
  return identical && serial_report.all_passed() ? 0 : 1;
}
