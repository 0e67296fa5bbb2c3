#pragma once

#include "ucpkit/verifier.hpp"

namespace ucp::detail {

struct TrialOutcome {
  bool pass = true;
  double residual = 0.0;
  bool info_ok = true;  // informational properties never fail a check
};

struct TrialContext {
  const CheckSpec& spec;
  nlohmann::json* capture = nullptr;  // set only for the witness re-run
};

using TrialFn = TrialOutcome (*)(const TrialContext&, int trial);

struct CheckDef {
  CheckInfo info;
  std::string informational_label;  // names the info property, when any
  std::string static_note;          // scoping annotation copied into reports
  TrialFn fn;
};

const std::vector<CheckDef>& registry_defs();

}  // namespace ucp::detail
