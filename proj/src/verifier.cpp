#include "ucpkit/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>

#include "ucpkit/errors.hpp"
#include "ucpkit/scenario.hpp"
#include "verifier_internal.hpp"

namespace ucp {

using detail::CheckDef;
using detail::TrialContext;
using detail::TrialOutcome;

namespace {

const CheckDef& find_check(const std::string& id) {
  for (const CheckDef& def : detail::registry_defs()) {
    if (def.info.id == id) return def;
  }
  throw unknown_check_id("unknown check id: " + id);
}

TrialOutcome run_trial_guarded(const CheckDef& def, const TrialContext& ctx, int trial) {
  try {
    return def.fn(ctx, trial);
  } catch (const std::exception& ex) {
    if (ctx.capture) (*ctx.capture)["error"] = ex.what();
    return {false, std::numeric_limits<double>::infinity(), true};
  }
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const CheckDef& def : detail::registry_defs()) out.push_back(def.info);
    return out;
  }();
  return infos;
}

bool check_exists(const std::string& id) {
  for (const CheckInfo& info : check_registry()) {
    if (info.id == id) return true;
  }
  return false;
}

bool check_applicable(const std::string& id, const Model& m) {
  const CheckDef& def = find_check(id);
  return m.is_classical() ? def.info.classical_applicable : def.info.quantum_applicable;
}

std::vector<std::string> all_check_ids(const Model& m) {
  std::vector<std::string> ids;
  for (const CheckInfo& info : check_registry()) {
    const bool ok = m.is_classical() ? info.classical_applicable : info.quantum_applicable;
    if (ok) ids.push_back(info.id);
  }
  return ids;
}

CheckResult run_check(const CheckSpec& spec, RunMode mode) {
  const CheckDef& def = find_check(spec.id);
  if (!check_applicable(spec.id, spec.model)) {
    throw unknown_check_id("check " + spec.id + " is not applicable to this model kind");
  }
  if (spec.trials < 1) throw error("check trials must be >= 1");

  const auto started = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(spec.trials);
  const TrialContext ctx{spec, nullptr};

  if (mode == RunMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (int t = 0; t < spec.trials; ++t) {
      outcomes[t] = run_trial_guarded(def, ctx, t);
    }
  } else {
    for (int t = 0; t < spec.trials; ++t) {
      outcomes[t] = run_trial_guarded(def, ctx, t);
    }
  }

  CheckResult result;
  result.id = spec.id;
  result.trials_run = spec.trials;

  int worst = 0;
  if (def.info.exists_mode) {
    // Witness search: one found witness is a pass; report the best one.
    result.pass = false;
    for (int t = 0; t < spec.trials; ++t) {
      result.pass = result.pass || outcomes[t].pass;
      if (outcomes[t].residual > outcomes[worst].residual) worst = t;
    }
    result.worst_residual = outcomes[worst].residual;
  } else {
    result.pass = true;
    int first_fail = -1;
    for (int t = 0; t < spec.trials; ++t) {
      result.pass = result.pass && outcomes[t].pass;
      if (!outcomes[t].pass && first_fail < 0) first_fail = t;
      if (outcomes[t].residual > outcomes[worst].residual) worst = t;
    }
    if (first_fail >= 0) worst = first_fail;
    result.worst_residual = outcomes[worst].residual;
  }

  nlohmann::json capture = nlohmann::json::object();
  const TrialContext capture_ctx{spec, &capture};
  run_trial_guarded(def, capture_ctx, worst);
  capture["trial"] = worst;
  result.witness = std::move(capture);

  result.note = def.static_note;
  if (!def.informational_label.empty()) {
    int info_failures = 0;
    for (const TrialOutcome& o : outcomes) {
      if (!o.info_ok) ++info_failures;
    }
    if (!result.note.empty()) result.note += "; ";
    result.note += def.informational_label +
                   (info_failures == 0 ? ": held on all trials (informational)"
                                       : ": violated on " + std::to_string(info_failures) +
                                             " trials (informational)");
  }
  if (spec.model.is_quantum() && spec.model.size() == 2 && spec.id.starts_with("UC")) {
    if (!result.note.empty()) result.note += "; ";
    result.note +=
        "d=2: states are identified with density matrices; the abstract state space is "
        "strictly larger there";
  }

  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return result;
}

double replay_trial(const CheckSpec& spec, int trial) {
  const CheckDef& def = find_check(spec.id);
  const TrialContext ctx{spec, nullptr};
  return run_trial_guarded(def, ctx, trial).residual;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

VerificationReport run_suite(const std::vector<CheckSpec>& specs, RunMode mode) {
  VerificationReport report;
  if (!specs.empty()) {
    report.seed = specs.front().seed;
    bool uniform_model = true;
    for (const CheckSpec& s : specs) uniform_model = uniform_model && s.model == specs[0].model;
    if (uniform_model) {
      report.model_descriptor = model_to_json(specs[0].model);
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const CheckSpec& s : specs) arr.push_back(model_to_json(s.model));
      report.model_descriptor = std::move(arr);
    }
  }
  for (const CheckSpec& spec : specs) report.checks.push_back(run_check(spec, mode));
  return report;
}

bool expectation_separation_check(const PrimitiveObservable& x,
                                  const PrimitiveObservable& y, int trials,
                                  std::uint64_t seed) {
  require_same_model(x.model(), y.model(), "expectation_separation_check");
  const Model& m = x.model();
  const double dist = observable_distance(x, y);
  const double tol = m.is_classical() ? 0.0 : m.tolerance();
  if (dist > tol) {
    State separator = [&] {
      if (m.is_classical()) {
        const auto vx = to_values(x);
        const auto vy = to_values(y);
        int best = 0;
        for (int i = 1; i < m.size(); ++i) {
          if (std::abs(vx[i] - vy[i]) > std::abs(vx[best] - vy[best])) best = i;
        }
        return State::point_mass(m, best);
      }
      const auto es = linalg::eigh(to_operator(x) - to_operator(y));
      const int last = m.size() - 1;
      const int pick = std::abs(es.values(0)) > std::abs(es.values(last)) ? 0 : last;
      return State::pure(m, es.vectors.col(pick));
    }();
    return std::abs(expectation(separator, x) - expectation(separator, y)) > tol;
  }
  // Equal canonical forms: expectations must agree on sampled states.
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::derive(seed, "expectation_separation", t);
    const State mu = random_state(m, rng);
    if (std::abs(expectation(mu, x) - expectation(mu, y)) > 10.0 * std::max(tol, 1e-12)) {
      return false;
    }
  }
  return true;
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back(nlohmann::json{{"id", c.id},
                                    {"pass", c.pass},
                                    {"trials", c.trials_run},
                                    {"worst_residual", c.worst_residual},
                                    {"witness", c.witness},
                                    {"note", c.note},
                                    {"elapsed_ms", c.elapsed_ms}});
  }
  return nlohmann::json{{"schema", kReportSchema},
                        {"toolkit", kToolkitVersion},
                        {"model", report.model_descriptor},
                        {"seed", report.seed},
                        {"all_pass", report.all_passed()},
                        {"checks", std::move(checks)}};
}

std::string report_to_text(const VerificationReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%s verification report (schema %d)\n", kToolkitVersion,
                kReportSchema);
  out += line;
  out += "model: " + report.model_descriptor.dump() + "\n";
  std::snprintf(line, sizeof(line), "seed: %llu\n\n",
                static_cast<unsigned long long>(report.seed));
  out += line;
  for (const CheckResult& c : report.checks) {
    std::snprintf(line, sizeof(line), "[%s] %-22s trials=%-6d worst=%.3e  (%.1f ms)\n",
                  c.pass ? "PASS" : "FAIL", c.id.c_str(), c.trials_run, c.worst_residual,
                  c.elapsed_ms);
    out += line;
    if (!c.note.empty()) out += "       note: " + c.note + "\n";
  }
  std::snprintf(line, sizeof(line), "\nresult: %s (%zu checks)\n",
                report.all_passed() ? "ALL PASS" : "FAILURES PRESENT", report.checks.size());
  out += line;
  return out;
}

}  // namespace ucp
