#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "ucpkit/errors.hpp"
#include "ucpkit/generate.hpp"
#include "ucpkit/observable.hpp"

using namespace ucp;

namespace {

PrimitiveObservable spin_z(const Model& m) {
  // values {1, -1} on the complementary diagonal rank-1 projections
  linalg::Matrix p = linalg::Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  linalg::Matrix q = linalg::Matrix::Zero(2, 2);
  q(1, 1) = 1.0;
  return PrimitiveObservable(m, {{1.0, Event::quantum(m, p)}, {-1.0, Event::quantum(m, q)}});
}

PrimitiveObservable spin_x(const Model& m) {
  const linalg::Matrix q_plus = oracle::diagonal_projector(2);
  const linalg::Matrix q_minus = linalg::Matrix::Identity(2, 2) - q_plus;
  return PrimitiveObservable(
      m, {{1.0, Event::quantum(m, q_plus)}, {-1.0, Event::quantum(m, q_minus)}});
}

}  // namespace

TEST_CASE("BorelSet membership honors endpoint flags") {
  const BorelSet half_open = BorelSet::interval(0.0, 1.0, true, false);
  CHECK(half_open.contains(0.0));
  CHECK(half_open.contains(0.5));
  CHECK_FALSE(half_open.contains(1.0));

  const BorelSet merged = BorelSet::interval(0.0, 1.0, true, false)
                              .united(BorelSet::interval(1.0, 2.0, true, true));
  CHECK(merged.contains(1.0));
  CHECK(merged.parts().size() == 1);

  const BorelSet split = BorelSet::interval(0.0, 1.0, true, false)
                             .united(BorelSet::interval(1.0, 2.0, false, true));
  CHECK_FALSE(split.contains(1.0));
  CHECK(split.parts().size() == 2);

  CHECK(BorelSet::point(2.5).contains(2.5));
  CHECK_FALSE(BorelSet::point(2.5).contains(2.5 + 1e-9));
  CHECK(BorelSet::real_line().contains(-1e300));
  CHECK_FALSE(BorelSet::empty().contains(0.0));
}

TEST_CASE("canonicalization: residual zero event, sorting, merging") {
  const Model m = Model::classical(4);
  const Event e = Event::classical(m, {0});
  const Event f = Event::classical(m, {1, 2});

  const PrimitiveObservable x(m, {{2.0, f}, {1.0, e}});
  REQUIRE(x.spectrum().size() == 3);  // 0-valued residual {3} is stored explicitly
  CHECK(x.spectrum()[0].value == 0.0);
  CHECK(x.spectrum()[0].event.points() == std::vector<int>{3});
  CHECK(x.spectrum()[1].value == 1.0);
  CHECK(x.spectrum()[2].value == 2.0);

  // Equal values merge into one event.
  const PrimitiveObservable y(m, {{1.0, e}, {1.0, f}});
  REQUIRE(y.spectrum().size() == 2);
  CHECK(y.spectrum()[1].event.rank() == 3);

  // Overlapping events are rejected.
  CHECK_THROWS_AS(PrimitiveObservable(m, {{1.0, e}, {2.0, Event::classical(m, {0, 1})}}),
                  invariant_violation);

  // Empty spectrum is the zero observable.
  const PrimitiveObservable zero = PrimitiveObservable::zero(m);
  REQUIRE(zero.spectrum().size() == 1);
  CHECK(zero.spectrum()[0].value == 0.0);
  CHECK(zero.spectrum()[0].event.is_one());
}

TEST_CASE("indicator observables") {
  const Model m = Model::quantum(2);
  const Event p = Event::quantum(m, oracle::basis_projector(2));

  const PrimitiveObservable chi = indicator(p);
  REQUIRE(chi.spectrum().size() == 2);
  CHECK(chi.spectrum()[0].value == 0.0);
  CHECK(chi.spectrum()[1].value == 1.0);

  CHECK(indicator(Event::one(m)).spectrum().size() == 1);
  CHECK(indicator(Event::one(m)).spectrum()[0].value == 1.0);
  CHECK(indicator(Event::zero(m)).spectrum().size() == 1);
  CHECK(indicator(Event::zero(m)).spectrum()[0].value == 0.0);

  const State mixed = State::quantum(m, 0.5 * linalg::Matrix::Identity(2, 2));
  CHECK(expectation(mixed, chi) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spectral evaluation of indicators matches the four-case table") {
  const Model m = Model::classical(3);
  const Event e = Event::classical(m, {0, 1});
  const PrimitiveObservable chi = indicator(e);

  CHECK(events_equal(evaluate_spectral(chi, BorelSet::point(1.0)), e));
  CHECK(events_equal(evaluate_spectral(chi, BorelSet::interval(-5.0, 0.5)), complement(e)));
  CHECK(evaluate_spectral(chi, BorelSet::interval(-2.0, 2.0)).is_one());
  CHECK(evaluate_spectral(chi, BorelSet::empty()).is_zero());
  CHECK(evaluate_spectral(chi, BorelSet::real_line()).is_one());
}

TEST_CASE("norm is the max absolute value, equal to the covering infimum") {
  const Model m = Model::classical(4);
  const PrimitiveObservable x(
      m, {{-3.0, Event::classical(m, {0})}, {2.0, Event::classical(m, {1, 2})}});
  CHECK(norm(x) == doctest::Approx(3.0));
  CHECK(evaluate_spectral(x, BorelSet::interval(-3.0, 3.0)).is_one());
  CHECK_FALSE(evaluate_spectral(x, BorelSet::interval(-2.9, 2.9)).is_one());

  CHECK(norm(indicator(Event::classical(m, {1}))) == doctest::Approx(1.0));
  CHECK(norm(PrimitiveObservable::zero(m)) == 0.0);
  CHECK(norm(scale(-2.0, indicator(Event::classical(m, {1})))) == doctest::Approx(2.0));
}

TEST_CASE("distribution: two-point law and point masses") {
  const Model m = Model::classical(3);
  const Event e = Event::classical(m, {0});
  const State mu = State::classical(m, {0.2, 0.3, 0.5});

  const Distribution law = distribution(mu, indicator(e));
  REQUIRE(law.points.size() == 2);
  CHECK(law.points[0].first == 0.0);
  CHECK(law.points[0].second == doctest::Approx(0.8));
  CHECK(law.points[1].second == doctest::Approx(0.2));

  const Distribution point = distribution(State::point_mass(m, 0), indicator(e));
  CHECK(point.points[1].second == doctest::Approx(1.0));

  const Model q = Model::quantum(2);
  const State mixed = State::quantum(q, 0.5 * linalg::Matrix::Identity(2, 2));
  const Distribution qd = distribution(mixed, spin_z(q));
  REQUIRE(qd.points.size() == 2);
  CHECK(qd.points[0].second == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(qd.points[1].second == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("expectation: linearity anchors") {
  const Model q = Model::quantum(2);
  const State mixed = State::quantum(q, 0.5 * linalg::Matrix::Identity(2, 2));
  CHECK(expectation(mixed, spin_z(q)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(expectation(mixed, PrimitiveObservable::zero(q)) == doctest::Approx(0.0));
  // Cross-check against tr(rho A(X)).
  const double direct = (mixed.density() * to_operator(spin_z(q))).trace().real();
  CHECK(expectation(mixed, spin_z(q)) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("functional calculus: identity, idempotents, squares") {
  const Model m = Model::classical(4);
  RngStream rng(3);
  const PrimitiveObservable x = random_primitive(m, 3, rng);

  CHECK(observable_distance(functional_calculus(x, [](double t) { return t; }), x) == 0.0);

  const Event e = Event::classical(m, {1, 3});
  const PrimitiveObservable chi = indicator(e);
  CHECK(observable_distance(functional_calculus(chi, [](double t) { return t * t; }), chi) ==
        0.0);

  const PrimitiveObservable pm(
      m, {{-2.0, Event::classical(m, {0, 1})}, {2.0, Event::classical(m, {2, 3})}});
  const PrimitiveObservable squared = functional_calculus(pm, [](double t) { return t * t; });
  REQUIRE(squared.spectrum().size() == 1);
  CHECK(squared.spectrum()[0].value == doctest::Approx(4.0));
  CHECK(squared.spectrum()[0].event.is_one());
  CHECK(norm(squared) == doctest::Approx(norm(pm) * norm(pm)));
}

TEST_CASE("addition: zero element, indicator additivity, eigenvalue oracle") {
  const Model q = Model::quantum(2);
  const PrimitiveObservable z = spin_z(q);
  CHECK(observable_distance(add(z, PrimitiveObservable::zero(q)), z) < 1e-12);

  // chi_{E+F} = chi_E + chi_F for orthogonal E, F.
  const Model c = Model::classical(4);
  const Event e = Event::classical(c, {0});
  const Event f = Event::classical(c, {2, 3});
  CHECK(observable_distance(add(indicator(e), indicator(f)), indicator(ortho_sum(e, f))) ==
        0.0);

  // Oracle: diag(1,-1) + offdiag(1,1) has eigenvalues +-sqrt(2).
  const PrimitiveObservable sum = add(z, spin_x(q));
  REQUIRE(sum.spectrum().size() == 2);
  CHECK(sum.spectrum()[0].value == doctest::Approx(-oracle::kSqrt2).epsilon(1e-12));
  CHECK(sum.spectrum()[1].value == doctest::Approx(oracle::kSqrt2).epsilon(1e-12));

  // Exp additivity on a random state.
  RngStream rng(11);
  const State mu = random_state(q, rng);
  CHECK(expectation(mu, sum) ==
        doctest::Approx(expectation(mu, z) + expectation(mu, spin_x(q))).epsilon(1e-10));
}

TEST_CASE("scaling") {
  const Model m = Model::classical(3);
  RngStream rng(5);
  const PrimitiveObservable x = random_primitive(m, 3, rng);
  CHECK(observable_distance(scale(1.0, x), x) == 0.0);
  CHECK(norm(scale(0.0, x)) == 0.0);
  CHECK(norm(scale(-1.5, x)) == doctest::Approx(1.5 * norm(x)));
}

TEST_CASE("step approximation: fixed points, rate, monotone refinement") {
  const Model m = Model::classical(4);
  // Values already on the n=2 grid of r = 1: {-1, -0.5, 0.5, 1}.
  const PrimitiveObservable aligned(m, {{-1.0, Event::classical(m, {0})},
                                        {-0.5, Event::classical(m, {1})},
                                        {0.5, Event::classical(m, {2})},
                                        {1.0, Event::classical(m, {3})}});
  CHECK(observable_distance(step_approximate(aligned, 2), aligned) == 0.0);

  const PrimitiveObservable x(m, {{1.0, Event::classical(m, {0})},
                                  {0.37, Event::classical(m, {1})},
                                  {-0.8, Event::classical(m, {2, 3})}});
  double previous = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 256; n *= 2) {
    const double err = observable_distance(x, step_approximate(x, n));
    CHECK(err <= norm(x) / n + 1e-12);
    CHECK(err <= previous + 1e-15);
    previous = err;
  }
  CHECK(observable_distance(step_approximate(PrimitiveObservable::zero(m), 4),
                            PrimitiveObservable::zero(m)) == 0.0);
}

TEST_CASE("convex decomposition by layer peeling") {
  const Model m = Model::classical(4);
  const Event e = Event::classical(m, {0, 1});

  // chi_E decomposes as the single term (1, E, 0).
  const auto chi_terms = convex_decompose(indicator(e));
  REQUIRE(chi_terms.size() == 1);
  CHECK(chi_terms[0].weight == doctest::Approx(1.0));
  CHECK(events_equal(chi_terms[0].pos, e));
  CHECK(chi_terms[0].neg.is_zero());

  // The zero observable is (1, 0, 0).
  const auto zero_terms = convex_decompose(PrimitiveObservable::zero(m));
  REQUIRE(zero_terms.size() == 1);
  CHECK(zero_terms[0].weight == doctest::Approx(1.0));
  CHECK(zero_terms[0].pos.is_zero());
  CHECK(zero_terms[0].neg.is_zero());

  // Values {-1, 1/2} on A, B: layers 1/2 and 1 give (1/2, B, A), (1/2, 0, A).
  const Event a = Event::classical(m, {0});
  const Event b = Event::classical(m, {1, 2, 3});
  const PrimitiveObservable x(m, {{-1.0, a}, {0.5, b}});
  const auto terms = convex_decompose(x);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].weight == doctest::Approx(0.5));
  CHECK(events_equal(terms[0].pos, b));
  CHECK(events_equal(terms[0].neg, a));
  CHECK(terms[1].weight == doctest::Approx(0.5));
  CHECK(terms[1].pos.is_zero());
  CHECK(events_equal(terms[1].neg, a));

  // Norm above one is refused.
  CHECK_THROWS_AS(convex_decompose(scale(1.5, indicator(e))), norm_exceeds_one);

  // Random reconstruction round-trip.
  for (int t = 0; t < 20; ++t) {
    RngStream rng = RngStream::derive(4, "convex", t);
    for (const Model& model : {Model::classical(5), Model::quantum(4)}) {
      const PrimitiveObservable y = random_primitive(model, 4, rng);
      PrimitiveObservable rebuilt = PrimitiveObservable::zero(model);
      double weight_sum = 0.0;
      for (const ConvexTerm& term : convex_decompose(y)) {
        weight_sum += term.weight;
        rebuilt = add(rebuilt, scale(term.weight,
                                     add(indicator(term.pos), scale(-1.0, indicator(term.neg)))));
      }
      CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(observable_distance(rebuilt, y) < 1e-7);
    }
  }
}

TEST_CASE("operator realization round-trips and clusters degeneracies") {
  const Model m = Model::quantum(3);
  linalg::Matrix a(3, 3);
  a.setZero();
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  a(2, 2) = 2.0;
  const PrimitiveObservable x = from_operator(m, a);
  REQUIRE(x.spectrum().size() == 2);
  CHECK(x.spectrum()[0].value == doctest::Approx(1.0));
  CHECK(x.spectrum()[0].event.rank() == 2);
  CHECK(x.spectrum()[1].value == doctest::Approx(2.0));
  CHECK(oracle::max_abs_diff(to_operator(x), a) < 1e-12);

  RngStream rng(2);
  const PrimitiveObservable y = random_primitive(m, 3, rng);
  CHECK(oracle::max_abs_diff(to_operator(from_operator(m, to_operator(y))), to_operator(y)) <
        1e-10);
}
