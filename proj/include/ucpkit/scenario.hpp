#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "ucpkit/jordan.hpp"
#include "ucpkit/verifier.hpp"

namespace ucp {

/// A resolved scenario file: a model plus named, invariant-checked objects
/// and an optional suite section. Names are unique by construction (JSON
/// object keys); every reference is resolved at load time.
struct Scenario {
  Model model = Model::classical(1);
  std::map<std::string, Event> events;
  std::map<std::string, State> states;
  std::map<std::string, PrimitiveObservable> observables;

  struct Suite {
    std::vector<std::string> checks;  // ids, or the single entry "all"
    int trials = 500;
    std::uint64_t seed = 42;
    double tolerance = 1e-8;
  };
  std::optional<Suite> suite;

  const Event& event(const std::string& name) const;
  const State& state(const std::string& name) const;
  const PrimitiveObservable& observable(const std::string& name) const;
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& j);

// Payload serialization. Classical events emit sorted point lists; quantum
// matrices emit row-major nested arrays with [re, im] pairs for every
// entry (never bare floats). load(emit(x)) reproduces x within tolerance.
nlohmann::json model_to_json(const Model& m);
Model model_from_json(const nlohmann::json& j);

nlohmann::json event_to_json(const Event& e);
Event event_from_json(const Model& m, const nlohmann::json& j);

nlohmann::json state_to_json(const State& s);
State state_from_json(const Model& m, const nlohmann::json& j);

nlohmann::json observable_to_json(const PrimitiveObservable& x);
PrimitiveObservable observable_from_json(const Model& m, const nlohmann::json& j);

nlohmann::json product_trace_to_json(const ProductTrace& t);

}  // namespace ucp
