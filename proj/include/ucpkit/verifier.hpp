#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucpkit/observable.hpp"

namespace ucp {

inline constexpr const char* kToolkitVersion = "ucpkit 1.0.0";
inline constexpr int kReportSchema = 1;

/// One requested check: a registry id bound to a model, trial count, seed
/// and tolerance. The tolerance is the base rung of the ladder; individual
/// contracts scale it by 10/100/1000 according to their operation depth.
struct CheckSpec {
  std::string id;
  Model model;
  int trials = 500;
  std::uint64_t seed = 42;
  double tolerance = 1e-8;
};

struct CheckResult {
  std::string id;
  bool pass = false;
  int trials_run = 0;
  double worst_residual = 0.0;
  nlohmann::json witness;  // worst trial: index, derived seed, inputs
  std::string note;
  double elapsed_ms = 0.0;
};

struct VerificationReport {
  nlohmann::json model_descriptor;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

enum class RunMode {
  Serial,    // reference implementation
  Parallel,  // OpenMP over trials; identical results by construction
};

/// Registry ----------------------------------------------------------------

struct CheckInfo {
  std::string id;
  std::string summary;
  bool classical_applicable;
  bool quantum_applicable;
  /// true for witness-search checks: the check passes when ANY trial finds
  /// a witness, instead of requiring every trial to pass.
  bool exists_mode;
};

const std::vector<CheckInfo>& check_registry();
bool check_exists(const std::string& id);
bool check_applicable(const std::string& id, const Model& m);

/// All registry ids applicable to the model, in registry order.
std::vector<std::string> all_check_ids(const Model& m);

/// Execution ---------------------------------------------------------------

/// Runs every spec and assembles the report. Unknown ids raise
/// unknown_check_id; a spec whose id is not applicable to its model raises
/// unknown_check_id as well. Deterministic given seeds, in both run modes.
VerificationReport run_suite(const std::vector<CheckSpec>& specs,
                             RunMode mode = RunMode::Parallel);

/// Runs a single check (used by run_suite and the benchmark).
CheckResult run_check(const CheckSpec& spec, RunMode mode = RunMode::Parallel);

/// Re-executes one trial of a check and returns its residual. Witnesses
/// recorded in reports are re-runnable through this.
double replay_trial(const CheckSpec& spec, int trial);

/// True when X and Y agree in expectation on every sampled state, or when a
/// separating state with gap > spec tolerance exists for unequal X, Y.
bool expectation_separation_check(const PrimitiveObservable& x,
                                  const PrimitiveObservable& y, int trials,
                                  std::uint64_t seed);

/// Report emission ----------------------------------------------------------

nlohmann::json report_to_json(const VerificationReport& report);
std::string report_to_text(const VerificationReport& report);

}  // namespace ucp
