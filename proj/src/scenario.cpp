#include "ucpkit/scenario.hpp"

#include <fstream>

#include "ucpkit/errors.hpp"

namespace ucp {

using nlohmann::json;

namespace {

json complex_to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw parse_error("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const linalg::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

linalg::Matrix matrix_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw parse_error("matrix must have one row per dimension");
  }
  linalg::Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != dim) {
      throw parse_error("matrix rows must have one entry per dimension");
    }
    for (int k = 0; k < dim; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

linalg::Vector vector_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw parse_error("vector must have one entry per dimension");
  }
  linalg::Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_from_json(j[i]);
  return v;
}

}  // namespace

json model_to_json(const Model& m) {
  return json{{"kind", m.is_classical() ? "classical" : "quantum"},
              {"size", m.size()},
              {"tolerance", m.tolerance()}};
}

Model model_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int size = j.at("size").get<int>();
  if (kind == "classical") return Model::classical(size);
  if (kind == "quantum") {
    if (j.contains("tolerance")) return Model::quantum(size, j.at("tolerance").get<double>());
    return Model::quantum(size);
  }
  throw parse_error("model kind must be \"classical\" or \"quantum\"");
}

json event_to_json(const Event& e) {
  if (e.model().is_classical()) return json(e.points());
  return json{{"matrix", matrix_to_json(e.matrix())}};
}

Event event_from_json(const Model& m, const json& j) {
  if (m.is_classical()) {
    if (!j.is_array()) throw parse_error("classical events are integer lists");
    return Event::classical(m, j.get<std::vector<int>>());
  }
  if (j.is_object() && j.contains("matrix")) {
    return Event::quantum(m, matrix_from_json(j.at("matrix"), m.size()));
  }
  if (j.is_object() && j.contains("span")) {
    const json& vs = j.at("span");
    if (!vs.is_array() || vs.empty()) throw parse_error("span needs at least one vector");
    linalg::Matrix cols(m.size(), vs.size());
    for (int k = 0; k < static_cast<int>(vs.size()); ++k) {
      cols.col(k) = vector_from_json(vs[k], m.size());
    }
    return Event::quantum(m, linalg::projector_onto_span(cols));
  }
  throw parse_error("quantum events need a \"matrix\" or \"span\" payload");
}

json state_to_json(const State& s) {
  if (s.model().is_classical()) return json{{"probs", s.probs()}};
  return json{{"density", matrix_to_json(s.density())}};
}

State state_from_json(const Model& m, const json& j) {
  if (!j.is_object()) throw parse_error("states are objects with probs/density/pure");
  if (j.contains("probs")) {
    return State::classical(m, j.at("probs").get<std::vector<double>>());
  }
  if (j.contains("density")) {
    return State::quantum(m, matrix_from_json(j.at("density"), m.size()));
  }
  if (j.contains("pure")) {
    return State::pure(m, vector_from_json(j.at("pure"), m.size()));
  }
  throw parse_error("states need a \"probs\", \"density\" or \"pure\" payload");
}

json observable_to_json(const PrimitiveObservable& x) {
  json entries = json::array();
  for (const SpectrumEntry& e : x.spectrum()) {
    entries.push_back(json{{"value", e.value}, {"event", event_to_json(e.event)}});
  }
  return entries;
}

PrimitiveObservable observable_from_json(const Model& m, const json& j) {
  if (!j.is_array()) throw parse_error("observables are arrays of {value, event} entries");
  std::vector<SpectrumEntry> raw;
  for (const json& entry : j) {
    raw.push_back({entry.at("value").get<double>(), event_from_json(m, entry.at("event"))});
  }
  return PrimitiveObservable(m, std::move(raw));
}

json product_trace_to_json(const ProductTrace& t) {
  return json{{"lhs", observable_to_json(t.lhs)},
              {"rhs", observable_to_json(t.rhs)},
              {"u_extension", observable_to_json(t.u_extension_result)},
              {"polarization", observable_to_json(t.polarization_result)},
              {"discrepancy", t.discrepancy}};
}

const Event& Scenario::event(const std::string& name) const {
  auto it = events.find(name);
  if (it == events.end()) throw unknown_reference("unknown event: " + name);
  return it->second;
}

const State& Scenario::state(const std::string& name) const {
  auto it = states.find(name);
  if (it == states.end()) throw unknown_reference("unknown state: " + name);
  return it->second;
}

const PrimitiveObservable& Scenario::observable(const std::string& name) const {
  auto it = observables.find(name);
  if (it == observables.end()) throw unknown_reference("unknown observable: " + name);
  return it->second;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  try {
    s.model = model_from_json(j.at("model"));
  } catch (const json::exception& ex) {
    throw parse_error(std::string("model section: ") + ex.what());
  }

  if (j.contains("events")) {
    for (const auto& [name, payload] : j.at("events").items()) {
      try {
        s.events.emplace(name, event_from_json(s.model, payload));
      } catch (const invariant_violation& ex) {
        throw invariant_violation(ex.what(), "event " + name);
      } catch (const json::exception& ex) {
        throw parse_error("event " + name + ": " + ex.what());
      }
    }
  }
  if (j.contains("states")) {
    for (const auto& [name, payload] : j.at("states").items()) {
      try {
        s.states.emplace(name, state_from_json(s.model, payload));
      } catch (const invariant_violation& ex) {
        throw invariant_violation(ex.what(), "state " + name);
      } catch (const json::exception& ex) {
        throw parse_error("state " + name + ": " + ex.what());
      }
    }
  }
  if (j.contains("observables")) {
    for (const auto& [name, payload] : j.at("observables").items()) {
      try {
        if (!payload.is_array()) throw parse_error("observables are arrays of entries");
        std::vector<SpectrumEntry> raw;
        for (const json& entry : payload) {
          const json& ev = entry.at("event");
          // Scenario observables may reference named events or inline them.
          if (ev.is_string()) {
            raw.push_back({entry.at("value").get<double>(), s.event(ev.get<std::string>())});
          } else {
            raw.push_back({entry.at("value").get<double>(), event_from_json(s.model, ev)});
          }
        }
        s.observables.emplace(name, PrimitiveObservable(s.model, std::move(raw)));
      } catch (const invariant_violation& ex) {
        throw invariant_violation(ex.what(), "observable " + name);
      } catch (const json::exception& ex) {
        throw parse_error("observable " + name + ": " + ex.what());
      }
    }
  }
  if (j.contains("suite")) {
    const json& suite = j.at("suite");
    Scenario::Suite cfg;
    try {
      if (suite.contains("checks")) cfg.checks = suite.at("checks").get<std::vector<std::string>>();
      if (suite.contains("trials")) cfg.trials = suite.at("trials").get<int>();
      if (suite.contains("seed")) cfg.seed = suite.at("seed").get<std::uint64_t>();
      if (suite.contains("tolerance")) cfg.tolerance = suite.at("tolerance").get<double>();
    } catch (const json::exception& ex) {
      throw parse_error(std::string("suite section: ") + ex.what());
    }
    if (cfg.checks.empty()) cfg.checks = {"all"};
    s.suite = cfg;
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open scenario file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    throw parse_error(path + ": " + ex.what());
  }
  return scenario_from_json(j);
}

}  // namespace ucp
