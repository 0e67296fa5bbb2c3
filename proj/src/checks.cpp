#include <algorithm>
#include <cmath>

#include "ucpkit/errors.hpp"
#include "ucpkit/generate.hpp"
#include "ucpkit/jordan.hpp"
#include "ucpkit/scenario.hpp"
#include "verifier_internal.hpp"

// One function per registry check. Every trial derives its own RNG stream
// from (suite seed, check id, trial index); the first few trials of each
// check are fixed edge cases (zero/full events, repeated spectra), because
// random sampling alone misses the measure-zero corners.

namespace ucp::detail {

namespace {

using nlohmann::json;

struct Acc {
  bool pass = true;
  double worst = 0.0;

  void bound(double residual, double limit) {
    worst = std::max(worst, residual);
    pass = pass && residual <= limit;
  }
  void truth(bool ok) { pass = pass && ok; }
};

RngStream trial_rng(const TrialContext& ctx, int trial) {
  return RngStream::derive(ctx.spec.seed, ctx.spec.id, trial);
}

void cap(const TrialContext& ctx, const char* key, json value) {
  if (ctx.capture) (*ctx.capture)[key] = std::move(value);
}

Event rnd_event(const Model& m, RngStream& rng) {
  return random_event(m, rng.uniform_int(0, m.size()), rng);
}

Event rnd_nonzero_event(const Model& m, RngStream& rng) {
  return random_event(m, rng.uniform_int(1, m.size()), rng);
}

// Pairwise-orthogonal events, padded with zero events when the dimension
// cannot host `count` nonzero ones.
std::vector<Event> orthogonal_family(const Model& m, int count, RngStream& rng) {
  const int parts = std::min(count, std::max(m.size() - rng.uniform_int(0, 1), 1));
  std::vector<Event> family = random_partition(m, parts, rng);
  while (static_cast<int>(family.size()) < count) family.push_back(Event::zero(m));
  while (static_cast<int>(family.size()) > count) family.pop_back();
  return family;
}

PrimitiveObservable rnd_obs(const Model& m, RngStream& rng) {
  return random_primitive(m, 4, rng);
}

double square(double t) { return t * t; }

// --- OS1..OS6: orthospace axioms ----------------------------------------

TrialOutcome check_os1(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  Event e = Event::zero(m), f = Event::zero(m);
  if (trial == 0) {
    f = Event::one(m);
  } else if (trial == 1) {
    e = f = rnd_event(m, rng);
  } else if (trial % 2 == 0) {
    const auto fam = orthogonal_family(m, 2, rng);
    e = fam[0];
    f = fam[1];
  } else {
    e = rnd_event(m, rng);
    f = rnd_event(m, rng);
  }
  cap(ctx, "E", event_to_json(e));
  cap(ctx, "F", event_to_json(f));
  Acc acc;
  acc.truth(is_orthogonal(e, f) == is_orthogonal(f, e));
  return {acc.pass, acc.worst};
}

TrialOutcome check_os2(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  Acc acc;
  if (trial == 0) {
    // The sum is partial by design: E + E must be refused for E != 0.
    const Event e = rnd_nonzero_event(m, rng);
    cap(ctx, "E", event_to_json(e));
    try {
      ortho_sum(e, e);
      acc.truth(false);
    } catch (const not_orthogonal&) {
    }
    return {acc.pass, acc.worst};
  }
  const auto fam = orthogonal_family(m, 2, rng);
  cap(ctx, "E", event_to_json(fam[0]));
  cap(ctx, "F", event_to_json(fam[1]));
  const Event ef = ortho_sum(fam[0], fam[1]);
  const Event fe = ortho_sum(fam[1], fam[0]);
  acc.truth(events_equal(ef, fe));
  acc.bound(event_distance(ef, fe), ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_os3(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  auto fam = orthogonal_family(m, 3, rng);
  if (trial == 0) fam[0] = Event::zero(m);
  const Event &d = fam[0], &e = fam[1], &f = fam[2];
  cap(ctx, "D", event_to_json(d));
  cap(ctx, "E", event_to_json(e));
  cap(ctx, "F", event_to_json(f));
  Acc acc;
  acc.truth(is_orthogonal(d, ortho_sum(e, f)));
  acc.truth(is_orthogonal(f, ortho_sum(d, e)));
  const Event left = ortho_sum(ortho_sum(d, e), f);
  const Event right = ortho_sum(d, ortho_sum(e, f));
  acc.truth(events_equal(left, right));
  acc.bound(event_distance(left, right), ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_os4(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const Event e = trial == 0 ? Event::one(m) : (trial == 1 ? Event::zero(m) : rnd_event(m, rng));
  cap(ctx, "E", event_to_json(e));
  Acc acc;
  acc.truth(is_orthogonal(Event::zero(m), e));
  const Event sum = ortho_sum(e, Event::zero(m));
  acc.truth(events_equal(sum, e));
  acc.bound(event_distance(sum, e), ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_os5(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const Event e = trial == 0 ? Event::zero(m) : (trial == 1 ? Event::one(m) : rnd_event(m, rng));
  cap(ctx, "E", event_to_json(e));
  Acc acc;
  const Event ec = complement(e);
  acc.truth(is_orthogonal(e, ec));
  acc.truth(events_equal(ortho_sum(e, ec), Event::one(m)));
  acc.truth(events_equal(complement(ec), e));
  acc.bound(event_distance(complement(ec), e), ctx.spec.tolerance);
  // Uniqueness: the witness of (OS6) for E < 1 is the complement.
  const Event d = ortho_diff(Event::one(m), e);
  acc.truth(events_equal(d, ec));
  if (trial == 0) acc.truth(events_equal(complement(Event::zero(m)), Event::one(m)));
  return {acc.pass, acc.worst};
}

TrialOutcome check_os6(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  Acc acc;
  // Forward: E < F gives a constructive D with E + D = F.
  const Event f = trial == 0 ? Event::one(m) : rnd_nonzero_event(m, rng);
  const Event e = trial == 0 ? Event::zero(m) : random_sub_event(f, rng);
  cap(ctx, "E", event_to_json(e));
  cap(ctx, "F", event_to_json(f));
  acc.truth(is_orthogonal(e, complement(f)));
  const Event d = ortho_diff(f, e);
  acc.truth(is_orthogonal(e, d));
  acc.truth(events_equal(ortho_sum(e, d), f));
  acc.bound(event_distance(ortho_sum(e, d), f), ctx.spec.tolerance);
  // Reverse: any orthogonal pair (E, D) has E < E + D.
  const auto fam = orthogonal_family(m, 2, rng);
  acc.truth(precedes(fam[0], ortho_sum(fam[0], fam[1])));
  return {acc.pass, acc.worst};
}

// --- OS.order / OS.sigma --------------------------------------------------

TrialOutcome check_os_order(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const Event e = trial == 0 ? Event::zero(m) : rnd_event(m, rng);
  cap(ctx, "E", event_to_json(e));
  Acc acc;
  acc.truth(precedes(e, e));
  acc.truth(precedes(Event::zero(m), e));
  acc.truth(precedes(e, Event::one(m)));
  acc.truth(is_orthogonal(e, e) == e.is_zero());
  acc.truth(is_orthogonal(e, Event::one(m)) == e.is_zero());
  // Anti-symmetry: mutual precedence only along equality.
  const Event f = rnd_event(m, rng);
  if (precedes(e, f) && precedes(f, e)) acc.truth(events_equal(e, f));
  // Transitivity is not an axiom; it is recorded as information only.
  const Event g = rnd_nonzero_event(m, rng);
  const Event mid = random_sub_event(g, rng);
  const Event low = random_sub_event(mid, rng);
  const bool transitive = precedes(low, g);
  return {acc.pass, acc.worst, transitive};
}

TrialOutcome check_os_sigma(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const int parts = trial == 0 ? m.size() : rng.uniform_int(1, m.size());
  const auto fam = random_partition(m, parts, rng);
  cap(ctx, "family_size", json(parts));
  Acc acc;
  // Any mutually orthogonal family of nonzero events is bounded by the
  // dimension, so countable sums reduce to finite ones at this scale.
  acc.truth(static_cast<int>(fam.size()) <= m.size());
  for (const Event& e : fam) acc.truth(!e.is_zero());
  Event forward = Event::zero(m);
  for (const Event& e : fam) forward = ortho_sum(forward, e);
  Event backward = Event::zero(m);
  for (auto it = fam.rbegin(); it != fam.rend(); ++it) backward = ortho_sum(backward, *it);
  acc.truth(events_equal(forward, Event::one(m)));
  acc.truth(events_equal(forward, backward));
  acc.bound(event_distance(forward, backward), ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

// --- States ----------------------------------------------------------------

TrialOutcome check_st_sigma(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const State mu = random_state(m, rng);
  const int parts = rng.uniform_int(1, m.size());
  const auto fam = random_partition(m, parts, rng);
  cap(ctx, "mu", state_to_json(mu));
  Acc acc;
  // sigma-additivity over the family, within (family size) * tol.
  Event total = Event::zero(m);
  double prob_sum = 0.0;
  for (const Event& e : fam) {
    total = ortho_sum(total, e);
    prob_sum += evaluate(mu, e);
  }
  acc.bound(std::abs(evaluate(mu, total) - prob_sum), std::max(parts, 1) * t);
  acc.bound(std::abs(evaluate(mu, Event::one(m)) - 1.0), t);
  acc.bound(evaluate(mu, Event::zero(m)), t);
  // Monotonicity along precedes.
  const Event f = trial == 0 ? Event::one(m) : rnd_nonzero_event(m, rng);
  const Event e = random_sub_event(f, rng);
  acc.truth(evaluate(mu, e) <= evaluate(mu, f) + t);
  // A certifying state exists for every nonzero event.
  const Event g = rnd_nonzero_event(m, rng);
  cap(ctx, "certified", event_to_json(g));
  acc.bound(std::abs(evaluate(certifying_state(g), g) - 1.0), t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_uc1(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  Acc acc;
  if (trial == 0) {
    // Equal inputs are refused.
    const Event e = rnd_event(m, rng);
    cap(ctx, "E", event_to_json(e));
    try {
      separating_state(e, e);
      acc.truth(false);
    } catch (const events_equal_error&) {
    }
    return {acc.pass, acc.worst};
  }
  Event e = trial == 1 ? Event::one(m) : rnd_event(m, rng);
  Event f = trial == 1 ? Event::zero(m) : rnd_event(m, rng);
  for (int retry = 0; retry < 32 && events_equal(e, f); ++retry) f = rnd_event(m, rng);
  if (events_equal(e, f)) return {true, 0.0};
  cap(ctx, "E", event_to_json(e));
  cap(ctx, "F", event_to_json(f));
  const State mu = separating_state(e, f);
  const double gap = std::abs(evaluate(mu, e) - evaluate(mu, f));
  cap(ctx, "gap", json(gap));
  acc.bound(std::max(0.0, t - gap), 0.0);
  acc.truth(gap > t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_uc2(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const State mu = random_state(m, rng);
  Acc acc;
  if (trial == 0) {
    try {
      conditional(mu, Event::zero(m));
      acc.truth(false);
    } catch (const conditioning_on_null&) {
    }
    return {acc.pass, acc.worst};
  }
  if (trial == 1) {
    // mu(1) = 1, so conditioning on 1 returns mu itself.
    const State nu = conditional(mu, Event::one(m));
    for (int k = 0; k < 8; ++k) {
      const Event e = rnd_event(m, rng);
      acc.bound(std::abs(evaluate(nu, e) - evaluate(mu, e)), 10.0 * t);
    }
    // More generally mu(E) = 1 forces mu_E = mu, also for E != 1.
    const Event certified = rnd_nonzero_event(m, rng);
    const State cert = certifying_state(certified);
    const State recond = conditional(cert, certified);
    for (int k = 0; k < 8; ++k) {
      const Event e = rnd_event(m, rng);
      acc.bound(std::abs(evaluate(recond, e) - evaluate(cert, e)), 10.0 * t);
    }
    return {acc.pass, acc.worst};
  }
  Event e = rnd_nonzero_event(m, rng);
  for (int retry = 0; retry < 32 && evaluate(mu, e) <= 1e-3; ++retry) {
    e = rnd_nonzero_event(m, rng);
  }
  const Event f = random_sub_event(e, rng);
  cap(ctx, "mu", state_to_json(mu));
  cap(ctx, "E", event_to_json(e));
  cap(ctx, "F", event_to_json(f));
  const State nu = conditional(mu, e);
  // Defining contract: nu(F) mu(E) = mu(F) for every F < E.
  acc.bound(std::abs(evaluate(nu, f) * evaluate(mu, e) - evaluate(mu, f)), 10.0 * t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_uc2_unique(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const State mu = random_state(m, rng);
  const Event e = trial == 0 ? Event::one(m) : rnd_nonzero_event(m, rng);
  cap(ctx, "mu", state_to_json(mu));
  cap(ctx, "E", event_to_json(e));
  Acc acc;
  acc.truth(conditional_uniqueness_probe(mu, e, 8, rng.next_u64()));
  return {acc.pass, acc.worst};
}

// --- A1/A2/A3 ---------------------------------------------------------------

TrialOutcome check_a1(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const State mu = random_state(m, rng);
  Event e = rnd_event(m, rng);
  Event f = rnd_event(m, rng);
  if (trial == 0) f = e;
  if (trial == 1) e = Event::zero(m);
  cap(ctx, "mu", state_to_json(mu));
  cap(ctx, "E", event_to_json(e));
  cap(ctx, "F", event_to_json(f));
  Acc acc;
  acc.bound(a1_residual(mu, e, f), 10.0 * t);
  // Companion operator identity U_E(F) + U_{E'}(F') = U_F(E) + U_{F'}(E').
  const Event ec = complement(e);
  const Event fc = complement(f);
  if (m.is_quantum()) {
    const linalg::Matrix lhs = to_operator(u_map(e, f)) + to_operator(u_map(ec, fc));
    const linalg::Matrix rhs = to_operator(u_map(f, e)) + to_operator(u_map(fc, ec));
    acc.bound(linalg::spectral_norm(lhs - rhs), t);
  } else {
    const PrimitiveObservable lhs = add(u_map(e, f), u_map(ec, fc));
    const PrimitiveObservable rhs = add(u_map(f, e), u_map(fc, ec));
    acc.bound(observable_distance(lhs, rhs), t);
  }
  return {acc.pass, acc.worst};
}

TrialOutcome check_a2(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  Acc acc;
  if (trial == 0) {
    const Event e = rnd_nonzero_event(m, rng);
    const auto fam = orthogonal_family(m, 2, rng);
    // Proof-step identities for the U-map.
    acc.bound(observable_distance(u_map(e, e), indicator(e)), 10.0 * t);
    acc.bound(observable_distance(u_map(e, Event::one(m)), indicator(e)), 10.0 * t);
    acc.bound(observable_distance(u_map(Event::one(m), e), indicator(e)), 10.0 * t);
    acc.bound(observable_distance(u_map(fam[0], fam[1]),
                                  PrimitiveObservable::zero(m)),
              10.0 * t);
    return {acc.pass, acc.worst};
  }
  const State mu = random_state(m, rng);
  Event e = rnd_nonzero_event(m, rng);
  for (int retry = 0; retry < 32 && evaluate(mu, e) <= 1e-3; ++retry) {
    e = rnd_nonzero_event(m, rng);
  }
  const Event f = rnd_event(m, rng);
  cap(ctx, "mu", state_to_json(mu));
  cap(ctx, "E", event_to_json(e));
  cap(ctx, "F", event_to_json(f));
  const double via_u = expectation(mu, u_map(e, f));
  const double via_cond = evaluate(conditional(mu, e), f) * evaluate(mu, e);
  acc.bound(std::abs(via_u - via_cond), 10.0 * t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_a3(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y =
      trial == 0 ? PrimitiveObservable::zero(m) : rnd_obs(m, rng);
  const State mu = random_state(m, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  cap(ctx, "mu", state_to_json(mu));
  Acc acc;
  const PrimitiveObservable sum = add(x, y);
  acc.bound(std::abs(expectation(mu, sum) - expectation(mu, x) - expectation(mu, y)),
            10.0 * t);
  acc.bound(observable_distance(sum, add(y, x)), 10.0 * t);
  if (trial == 0) acc.bound(observable_distance(sum, x), 10.0 * t);
  // Uniqueness through expectations: X is determined by Exp_mu(X).
  acc.truth(expectation_separation_check(x, y, 8, rng.next_u64()));
  acc.truth(expectation_separation_check(x, x, 8, rng.next_u64()));
  const PrimitiveObservable z = rnd_obs(m, rng);
  acc.bound(observable_distance(add(add(x, y), z), add(x, add(y, z))), 100.0 * t);
  return {acc.pass, acc.worst};
}

// --- Observables -------------------------------------------------------------

TrialOutcome check_ob_hom(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x =
      trial == 0 ? PrimitiveObservable::zero(m)
                 : (trial == 1 ? PrimitiveObservable::unit(m) : rnd_obs(m, rng));
  cap(ctx, "X", observable_to_json(x));
  Acc acc;
  acc.truth(evaluate_spectral(x, BorelSet::real_line()).is_one());
  acc.truth(evaluate_spectral(x, BorelSet::empty()).is_zero());

  // Disjoint Borel sets map to orthogonal events; unions map to sums.
  std::vector<double> values;
  for (const SpectrumEntry& e : x.spectrum()) values.push_back(e.value);
  BorelSet b1 = BorelSet::empty();
  BorelSet b2 = BorelSet::empty();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (rng.uniform_int(0, 1) == 0) {
      b1 = b1.united(BorelSet::point(values[i]));
    } else {
      b2 = b2.united(BorelSet::point(values[i]));
    }
  }
  const Event e1 = evaluate_spectral(x, b1);
  const Event e2 = evaluate_spectral(x, b2);
  acc.truth(is_orthogonal(e1, e2));
  acc.bound(event_distance(evaluate_spectral(x, b1.united(b2)), ortho_sum(e1, e2)),
            10.0 * t);

  // chi_{X(B)} = I_B(X).
  acc.bound(observable_distance(
                functional_calculus(x, [&b1](double s) { return b1.contains(s) ? 1.0 : 0.0; }),
                indicator(e1)),
            10.0 * t);

  // Norm as the infimum over covering radii.
  const double r = norm(x);
  acc.truth(evaluate_spectral(x, BorelSet::interval(-r, r)).is_one());
  if (r > 1e-6) {
    const double shrunk = r * (1.0 - 1e-6);
    acc.truth(!evaluate_spectral(x, BorelSet::interval(-shrunk, shrunk)).is_one());
  }

  // Distributions are probability laws on the spectrum.
  const State mu = random_state(m, rng);
  const Distribution law = distribution(mu, x);
  double law_total = 0.0;
  for (const auto& [value, probability] : law.points) {
    acc.truth(probability >= 0.0);
    law_total += probability;
  }
  acc.bound(std::abs(law_total - 1.0),
            std::max<double>(static_cast<double>(law.points.size()), 1.0) * t);
  acc.bound(std::abs(expectation(mu, x) -
                     [&] {
                       double s = 0.0;
                       for (const auto& [value, probability] : law.points) s += value * probability;
                       return s;
                     }()),
            10.0 * t);

  // Composition and additivity of functional calculus.
  const auto f = [](double s) { return s * s; };
  const auto g = [](double s) { return std::abs(s) + 0.25; };
  acc.bound(observable_distance(functional_calculus(functional_calculus(x, f), g),
                                functional_calculus(x, [&](double s) { return g(f(s)); })),
            10.0 * t);
  acc.bound(observable_distance(functional_calculus(x, [&](double s) { return f(s) + g(s); }),
                                add(functional_calculus(x, f), functional_calculus(x, g))),
            100.0 * t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_l51i(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x =
      trial == 0 ? PrimitiveObservable::zero(m) : rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  double reached = 0.0;
  for (const SpectrumEntry& entry : x.spectrum()) {
    if (entry.event.is_zero()) continue;
    reached = std::max(reached, std::abs(expectation(certifying_state(entry.event), x)));
  }
  for (int k = 0; k < 16; ++k) {
    reached = std::max(reached, std::abs(expectation(random_state(m, rng), x)));
  }
  const double r = norm(x);
  Acc acc;
  acc.bound(r - reached, 10.0 * t);   // the supremum attains the norm
  acc.bound(reached - r, t);          // and never exceeds it
  return {acc.pass, acc.worst};
}

TrialOutcome check_l51ii(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y =
      trial == 0 ? PrimitiveObservable::zero(m) : rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  Acc acc;
  acc.bound(norm(add(x, y)) - norm(x) - norm(y), t);
  const PrimitiveObservable x2 = functional_calculus(x, square);
  const PrimitiveObservable y2 = functional_calculus(y, square);
  acc.bound(norm(x2) - norm(add(x2, y2)), t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_l52i(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x =
      trial == 0 ? PrimitiveObservable::unit(m) : rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  const double r = norm(x);
  Acc acc;
  double previous = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 256; n *= 2) {
    const double err = observable_distance(x, step_approximate(x, n));
    acc.bound(err - r / n, t);
    acc.truth(err <= previous + 1e-12);
    previous = err;
  }
  return {acc.pass, acc.worst};
}

TrialOutcome check_l52ii(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  Acc acc;
  if (trial == 0) {
    // norm > 1 is refused.
    try {
      convex_decompose(scale(2.0, PrimitiveObservable::unit(m)));
      acc.truth(false);
    } catch (const norm_exceeds_one&) {
    }
    return {acc.pass, acc.worst};
  }
  const PrimitiveObservable x =
      trial == 1 ? PrimitiveObservable::zero(m)
                 : (trial == 2 ? indicator(rnd_nonzero_event(m, rng)) : rnd_obs(m, rng));
  cap(ctx, "X", observable_to_json(x));
  const auto terms = convex_decompose(x);
  double weight_sum = 0.0;
  PrimitiveObservable rebuilt = PrimitiveObservable::zero(m);
  for (const ConvexTerm& term : terms) {
    acc.truth(term.weight >= 0.0);
    weight_sum += term.weight;
    const PrimitiveObservable difference =
        add(indicator(term.pos), scale(-1.0, indicator(term.neg)));
    acc.bound(norm(difference) - 1.0, t);
    rebuilt = add(rebuilt, scale(term.weight, difference));
  }
  acc.bound(std::abs(weight_sum - 1.0), t);
  acc.bound(observable_distance(rebuilt, x),
            std::max<double>(terms.size(), 1) * 10.0 * t);
  return {acc.pass, acc.worst};
}

// --- Theorem 6.1 family -------------------------------------------------------

TrialOutcome check_t61i(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x =
      trial == 0 ? PrimitiveObservable::zero(m)
                 : (trial == 1 ? PrimitiveObservable::unit(m) : rnd_obs(m, rng));
  const PrimitiveObservable y = rnd_obs(m, rng);
  const PrimitiveObservable z = rnd_obs(m, rng);
  const double s = rng.uniform(-2.0, 2.0);
  const double u = rng.uniform(-2.0, 2.0);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  cap(ctx, "Z", observable_to_json(z));
  Acc acc;
  acc.bound(observable_distance(product(x, add(scale(s, y), scale(u, z))),
                                add(scale(s, product(x, y)), scale(u, product(x, z)))),
            1e3 * t);
  acc.bound(observable_distance(product(x, y), product(y, x)), 100.0 * t);
  acc.bound(observable_distance(product(x, PrimitiveObservable::unit(m)), x), 100.0 * t);
  acc.bound(observable_distance(product(x, x), functional_calculus(x, square)), 100.0 * t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61ii(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y =
      trial == 0 ? PrimitiveObservable::unit(m) : rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  Acc acc;
  acc.bound(norm(product(x, y)) - norm(x) * norm(y), ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61iii(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  auto fam = orthogonal_family(m, 2, rng);
  if (trial == 0) fam = {Event::zero(m), Event::one(m)};
  const PrimitiveObservable chi_e = indicator(fam[0]);
  const PrimitiveObservable chi_f = indicator(fam[1]);
  cap(ctx, "E", event_to_json(fam[0]));
  cap(ctx, "F", event_to_json(fam[1]));
  Acc acc;
  acc.bound(observable_distance(product(chi_e, chi_e), chi_e), 100.0 * t);
  acc.bound(observable_distance(product(chi_e, chi_f), PrimitiveObservable::zero(m)),
            100.0 * t);
  acc.bound(observable_distance(indicator_product(fam[0], PrimitiveObservable::unit(m)), chi_e),
            100.0 * t);
  acc.bound(observable_distance(indicator_product(fam[0], PrimitiveObservable::zero(m)),
                                PrimitiveObservable::zero(m)),
            100.0 * t);
  // Commutativity on indicators, the polarization-free part of the proof.
  acc.bound(observable_distance(product(chi_e, chi_f), product(chi_f, chi_e)), 100.0 * t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61paths(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y =
      trial == 0 ? PrimitiveObservable::unit(m) : rnd_obs(m, rng);
  const ProductTrace trace = product_traced(x, y);
  if (ctx.capture) *ctx.capture = product_trace_to_json(trace);
  Acc acc;
  acc.bound(trace.discrepancy, 1e3 * ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61oracle(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y =
      trial == 0 ? PrimitiveObservable::unit(m) : rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  Acc acc;
  const PrimitiveObservable xy = product(x, y);
  if (m.is_quantum()) {
    const linalg::Matrix a = to_operator(x);
    const linalg::Matrix b = to_operator(y);
    acc.bound(linalg::spectral_norm(to_operator(xy) - 0.5 * (a * b + b * a)), 100.0 * t);
  } else {
    const auto va = to_values(x);
    const auto vb = to_values(y);
    const auto vc = to_values(xy);
    double worst = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
      worst = std::max(worst, std::abs(vc[i] - va[i] * vb[i]));
    }
    acc.bound(worst, 100.0 * t);
  }
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61welldef(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y = rnd_obs(m, rng);
  const auto refined = refine_decomposition(x, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  cap(ctx, "refined_terms", json(refined.size()));
  Acc acc;
  acc.bound(observable_distance(product_over_decomposition(m, refined, y), product(x, y)),
            ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61cs(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y =
      trial == 0 ? x : rnd_obs(m, rng);
  const State mu = random_state(m, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  cap(ctx, "mu", state_to_json(mu));
  Acc acc;
  const double cross = expectation(mu, product(x, y));
  const double xx = expectation(mu, functional_calculus(x, square));
  const double yy = expectation(mu, functional_calculus(y, square));
  acc.truth(xx >= -t);
  acc.truth(yy >= -t);
  acc.bound(cross * cross - xx * yy, t);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61bound(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const Event e1 = rnd_event(m, rng);
  const Event e2 = trial == 0 ? complement(e1) : rnd_event(m, rng);
  const PrimitiveObservable y = rnd_obs(m, rng);
  cap(ctx, "E1", event_to_json(e1));
  cap(ctx, "E2", event_to_json(e2));
  cap(ctx, "Y", observable_to_json(y));
  Acc acc;
  const PrimitiveObservable difference = add(indicator(e1), scale(-1.0, indicator(e2)));
  acc.bound(norm(product(difference, y)) - 2.0 * norm(y), ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t61fg(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  const double t = ctx.spec.tolerance;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  const double a = rng.uniform(-1.0, 1.0);
  const double b = rng.uniform(-1.0, 1.0);
  const auto f = [a](double s) { return a * s + 0.5; };
  const auto g = [b](double s) { return s * s - b; };
  Acc acc;
  // f(X) o g(X) = (fg)(X): functions of one observable multiply pointwise.
  acc.bound(observable_distance(product(functional_calculus(x, f), functional_calculus(x, g)),
                                functional_calculus(x, [&](double s) { return f(s) * g(s); })),
            100.0 * t);
  return {acc.pass, acc.worst};
}

// --- Jordan property ---------------------------------------------------------

TrialOutcome check_l71(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  auto fam = orthogonal_family(m, 2, rng);
  if (trial == 0) fam[1] = Event::zero(m);
  const PrimitiveObservable y = rnd_obs(m, rng);
  cap(ctx, "E", event_to_json(fam[0]));
  cap(ctx, "F", event_to_json(fam[1]));
  cap(ctx, "Y", observable_to_json(y));
  Acc acc;
  acc.bound(operator_commute_check(fam[0], fam[1], y), 100.0 * ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_t72(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x =
      trial == 0 ? indicator(rnd_nonzero_event(m, rng)) : rnd_obs(m, rng);
  const PrimitiveObservable y =
      trial == 1 ? PrimitiveObservable::unit(m) : rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  Acc acc;
  acc.bound(jordan_identity_residual(x, y), 1e3 * ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

// --- The associativity dichotomy ---------------------------------------------

TrialOutcome check_s7_classical(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  const PrimitiveObservable x = rnd_obs(m, rng);
  const PrimitiveObservable y = rnd_obs(m, rng);
  const PrimitiveObservable z = rnd_obs(m, rng);
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  cap(ctx, "Z", observable_to_json(z));
  Acc acc;
  acc.bound(associativity_residual(x, y, z), ctx.spec.tolerance);
  return {acc.pass, acc.worst};
}

TrialOutcome check_s7_quantum(const TrialContext& ctx, int trial) {
  const Model& m = ctx.spec.model;
  RngStream rng = trial_rng(ctx, trial);
  PrimitiveObservable x = PrimitiveObservable::zero(m);
  PrimitiveObservable y = PrimitiveObservable::zero(m);
  PrimitiveObservable z = PrimitiveObservable::zero(m);
  if (trial == 0 && m.size() >= 2) {
    // Analytic witness: (chi_P, chi_P, chi_Q) has residual exactly 1/8.
    const auto [p, q] = analytic_witness_pair(m);
    x = indicator(p);
    y = indicator(p);
    z = indicator(q);
  } else {
    x = indicator(random_event(m, 1, rng));
    y = indicator(random_event(m, 1, rng));
    z = indicator(random_event(m, 1, rng));
  }
  cap(ctx, "X", observable_to_json(x));
  cap(ctx, "Y", observable_to_json(y));
  cap(ctx, "Z", observable_to_json(z));
  const double residual = associativity_residual(x, y, z);
  cap(ctx, "residual", json(residual));
  return {residual > 0.1, residual};
}

CheckDef def(std::string id, std::string summary, bool classical_ok, bool quantum_ok,
             bool exists_mode, TrialFn fn, std::string info_label = {},
             std::string static_note = {}) {
  return CheckDef{CheckInfo{std::move(id), std::move(summary), classical_ok, quantum_ok,
                            exists_mode},
                  std::move(info_label), std::move(static_note), fn};
}

}  // namespace

const std::vector<CheckDef>& registry_defs() {
  static const std::vector<CheckDef> defs = {
      def("OS1", "orthogonality is symmetric", true, true, false, check_os1),
      def("OS2", "the partial sum is commutative and partial", true, true, false, check_os2),
      def("OS3", "orthogonal triples sum associatively", true, true, false, check_os3),
      def("OS4", "zero is orthogonal to and neutral for everything", true, true, false,
          check_os4),
      def("OS5", "unique complement with E + E' = 1", true, true, false, check_os5),
      def("OS6", "E < F exactly when F splits as E + D", true, true, false, check_os6),
      def("OS.order", "precedes is reflexive, anti-symmetric, bounded", true, true, false,
          check_os_order, "precedes-transitivity"),
      def("OS.sigma", "orthogonal families are finite and sum order-free", true, true, false,
          check_os_sigma),
      def("ST.sigma", "states are sigma-additive, monotone, certifiable", true, true, false,
          check_st_sigma),
      def("UC1", "unequal events admit a separating state", true, true, false, check_uc1),
      def("UC2", "the conditional state satisfies its defining contract", true, true, false,
          check_uc2),
      def("UC2.unique", "the conditional is the unique solution of its constraints", false,
          true, false, check_uc2_unique),
      def("A1", "conditioning symmetry and the U-map operator identity", true, true, false,
          check_a1),
      def("A2", "Exp of U_E(F) reproduces mu(F|E) mu(E)", true, true, false, check_a2),
      def("A3", "addition matches expectations and is determined by them", true, true, false,
          check_a3),
      def("OB.hom", "observables are orthospace homomorphisms", true, true, false,
          check_ob_hom),
      def("L5.1.i", "norm equals the supremum of |Exp| over states", true, true, false,
          check_l51i),
      def("L5.1.ii", "triangle inequality and ||X^2|| <= ||X^2 + Y^2||", true, true, false,
          check_l51ii),
      def("L5.2.i", "step quantization converges at rate norm/n", true, true, false,
          check_l52i, {},
          "every observable here is already primitive; this verifies the constructive "
          "quantization rate, not density in a larger space"),
      def("L5.2.ii", "the unit ball is convexly spanned by indicator differences", true, true,
          false, check_l52ii),
      def("T6.1.i", "the product is bilinear, commutative, unital", true, true, false,
          check_t61i),
      def("T6.1.ii", "the product norm is submultiplicative", true, true, false, check_t61ii),
      def("T6.1.iii", "indicators are idempotents, orthogonal ones annihilate", true, true,
          false, check_t61iii),
      def("T6.1.paths", "U-extension and polarization paths agree", true, true, false,
          check_t61paths),
      def("T6.1.oracle", "the product matches the symmetrized-product oracle", true, true,
          false, check_t61oracle),
      def("T6.1.welldef", "the product is decomposition-independent", true, true, false,
          check_t61welldef),
      def("T6.1.cs", "Cauchy-Schwarz for Exp of the product", true, true, false, check_t61cs),
      def("T6.1.bound", "||(chi_E1 - chi_E2) o Y|| <= 2 ||Y||", true, true, false,
          check_t61bound),
      def("T6.1.fg", "functions of one observable multiply pointwise", true, true, false,
          check_t61fg),
      def("L7.1", "orthogonal indicators operator-commute", true, true, false, check_l71),
      def("T7.2", "the Jordan identity holds", true, true, false, check_t72),
      def("S7.assoc-classical", "classical products associate exactly", true, false, false,
          check_s7_classical),
      def("S7.nonassoc-quantum", "a quantum non-associativity witness exists", false, true,
          true, check_s7_quantum),
  };
  return defs;
}

}  // namespace ucp::detail
