#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "ucpkit/errors.hpp"
#include "ucpkit/generate.hpp"
#include "ucpkit/jordan.hpp"

using namespace ucp;

namespace {

const Model kQubit = Model::quantum(2);

Event qubit_p() { return Event::quantum(kQubit, oracle::basis_projector(2)); }
Event qubit_q() { return Event::quantum(kQubit, oracle::diagonal_projector(2)); }

}  // namespace

TEST_CASE("u_map: proof-step identities and the compression spectrum") {
  const Event p = qubit_p();
  const Event q = qubit_q();
  const Event one = Event::one(kQubit);

  CHECK(observable_distance(u_map(p, p), indicator(p)) < 1e-12);
  CHECK(observable_distance(u_map(p, one), indicator(p)) < 1e-12);
  CHECK(observable_distance(u_map(one, q), indicator(q)) < 1e-12);
  const Event p_perp = complement(p);
  CHECK(observable_distance(u_map(p, p_perp), PrimitiveObservable::zero(kQubit)) < 1e-12);

  // P Q P = diag(1/2, 0): spectrum {(0, diag(0,1)), (1/2, diag(1,0))}.
  const PrimitiveObservable compressed = u_map(p, q);
  REQUIRE(compressed.spectrum().size() == 2);
  CHECK(compressed.spectrum()[0].value == doctest::Approx(0.0));
  CHECK(events_equal(compressed.spectrum()[0].event, p_perp));
  CHECK(compressed.spectrum()[1].value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(events_equal(compressed.spectrum()[1].event, p));

  // Classical: U_E(F) = chi_{E n F}.
  const Model c = Model::classical(4);
  const Event e = Event::classical(c, {0, 1});
  const Event f = Event::classical(c, {1, 2});
  CHECK(observable_distance(u_map(e, f), indicator(Event::classical(c, {1}))) == 0.0);
}

TEST_CASE("u_map contract: Exp U_E(F) = mu(F|E) mu(E)") {
  for (const Model& m : {Model::classical(4), Model::quantum(3)}) {
    for (int t = 0; t < 25; ++t) {
      RngStream rng = RngStream::derive(31, "a2", t);
      const State mu = random_state(m, rng);
      const Event e = random_event(m, rng.uniform_int(1, m.size()), rng);
      if (evaluate(mu, e) < 1e-3) continue;
      const Event f = random_event(m, rng.uniform_int(0, m.size()), rng);
      const double lhs = expectation(mu, u_map(e, f));
      const double rhs = evaluate(conditional(mu, e), f) * evaluate(mu, e);
      CHECK(lhs - rhs == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("u_extend: single terms, identity event, operator oracle") {
  RngStream rng(6);
  const PrimitiveObservable y = random_primitive(kQubit, 2, rng);
  const Event p = qubit_p();

  CHECK(observable_distance(u_extend(p, indicator(qubit_q())), u_map(p, qubit_q())) < 1e-10);
  CHECK(observable_distance(u_extend(Event::one(kQubit), y), y) < 1e-10);

  // A(U~_E(Y)) = P A(Y) P by the hand-rolled product oracle.
  const auto pm = oracle::from_eigen(p.matrix());
  const auto ym = oracle::from_eigen(to_operator(y));
  const auto expected = oracle::multiply(oracle::multiply(pm, ym), pm);
  CHECK(oracle::max_abs_diff(oracle::from_eigen(to_operator(u_extend(p, y))), expected) <
        1e-12);

  // ||U~_E(Y)|| <= ||Y||.
  for (int t = 0; t < 20; ++t) {
    RngStream inner = RngStream::derive(7, "uextend-norm", t);
    for (const Model& m : {Model::classical(5), Model::quantum(3)}) {
      const PrimitiveObservable z = random_primitive(m, 4, inner);
      const Event e = random_event(m, inner.uniform_int(0, m.size()), inner);
      CHECK(norm(u_extend(e, z)) <= norm(z) + 1e-10);
    }
  }
}

TEST_CASE("indicator product: identities and the symmetrized oracle") {
  const Event p = qubit_p();
  const Event q = qubit_q();
  RngStream rng(13);
  const PrimitiveObservable y = random_primitive(kQubit, 2, rng);

  CHECK(observable_distance(indicator_product(p, indicator(p)), indicator(p)) < 1e-10);
  CHECK(observable_distance(indicator_product(p, indicator(complement(p))),
                            PrimitiveObservable::zero(kQubit)) < 1e-10);
  CHECK(observable_distance(indicator_product(p, PrimitiveObservable::unit(kQubit)),
                            indicator(p)) < 1e-10);
  CHECK(observable_distance(indicator_product(p, PrimitiveObservable::zero(kQubit)),
                            PrimitiveObservable::zero(kQubit)) < 1e-10);

  // A(chi_E o Y) = (P A(Y) + A(Y) P)/2: the displayed combination collapses
  // to the symmetrized product.
  const auto pm = oracle::from_eigen(p.matrix());
  const auto ym = oracle::from_eigen(to_operator(y));
  CHECK(oracle::max_abs_diff(oracle::from_eigen(to_operator(indicator_product(p, y))),
                             oracle::sym_product(pm, ym)) < 1e-12);

  // Commutativity on indicators: chi_E o chi_F = chi_F o chi_E.
  CHECK(observable_distance(indicator_product(p, indicator(q)),
                            indicator_product(q, indicator(p))) < 1e-10);
}

TEST_CASE("product: unit, idempotents, frozen qubit spectrum") {
  const Event p = qubit_p();
  const Event q = qubit_q();
  RngStream rng(23);
  const PrimitiveObservable x = random_primitive(kQubit, 2, rng);

  CHECK(observable_distance(product(x, PrimitiveObservable::unit(kQubit)), x) < 1e-10);
  CHECK(observable_distance(product(indicator(p), indicator(p)), indicator(p)) < 1e-10);

  // chiP o chiQ = (PQ + QP)/2 with eigenvalues (1 +- sqrt 2)/4, by hand.
  const PrimitiveObservable pq = product(indicator(p), indicator(q));
  REQUIRE(pq.spectrum().size() == 2);
  CHECK(pq.spectrum()[0].value == doctest::Approx(oracle::kProductEigLo).epsilon(1e-12));
  CHECK(pq.spectrum()[1].value == doctest::Approx(oracle::kProductEigHi).epsilon(1e-12));
}

TEST_CASE("product agrees with the symmetrized oracle on random pairs") {
  for (int t = 0; t < 30; ++t) {
    RngStream rng = RngStream::derive(3, "product-oracle", t);
    const Model m = Model::quantum(2 + t % 3);
    const PrimitiveObservable x = random_primitive(m, 3, rng);
    const PrimitiveObservable y = random_primitive(m, 3, rng);
    const auto a = oracle::from_eigen(to_operator(x));
    const auto b = oracle::from_eigen(to_operator(y));
    CHECK(oracle::max_abs_diff(oracle::from_eigen(to_operator(product(x, y))),
                               oracle::sym_product(a, b)) < 1e-9);
  }
  // Classical products are pointwise multiplication, exactly.
  for (int t = 0; t < 30; ++t) {
    RngStream rng = RngStream::derive(4, "product-classical", t);
    const Model m = Model::classical(5);
    const PrimitiveObservable x = random_primitive(m, 4, rng);
    const PrimitiveObservable y = random_primitive(m, 4, rng);
    const auto vx = to_values(x);
    const auto vy = to_values(y);
    const auto vp = to_values(product(x, y));
    for (int i = 0; i < m.size(); ++i) CHECK(vp[i] == vx[i] * vy[i]);
  }
}

TEST_CASE("both product paths agree and the trace records the discrepancy") {
  for (int t = 0; t < 20; ++t) {
    RngStream rng = RngStream::derive(9, "paths", t);
    for (const Model& m : {Model::classical(4), Model::quantum(3)}) {
      const PrimitiveObservable x = random_primitive(m, 3, rng);
      const PrimitiveObservable y = random_primitive(m, 3, rng);
      const ProductTrace trace = product_traced(x, y);
      CHECK(trace.discrepancy < 1e-5);
      CHECK(observable_distance(trace.u_extension_result, product(x, y)) == 0.0);
    }
  }
}

TEST_CASE("product is independent of the decomposition") {
  for (int t = 0; t < 20; ++t) {
    RngStream rng = RngStream::derive(10, "welldef", t);
    for (const Model& m : {Model::classical(5), Model::quantum(4)}) {
      const PrimitiveObservable x = random_primitive(m, 3, rng);
      const PrimitiveObservable y = random_primitive(m, 3, rng);
      const auto refined = refine_decomposition(x, rng);
      CHECK(observable_distance(product_over_decomposition(m, refined, y), product(x, y)) <
            1e-8);
    }
  }
}

TEST_CASE("bilinearity and submultiplicative norm") {
  for (int t = 0; t < 15; ++t) {
    RngStream rng = RngStream::derive(11, "bilinear", t);
    for (const Model& m : {Model::classical(4), Model::quantum(3)}) {
      const PrimitiveObservable x = random_primitive(m, 3, rng);
      const PrimitiveObservable y = random_primitive(m, 3, rng);
      const PrimitiveObservable z = random_primitive(m, 3, rng);
      const double s = rng.uniform(-2.0, 2.0);
      const double u = rng.uniform(-2.0, 2.0);
      CHECK(observable_distance(product(x, add(scale(s, y), scale(u, z))),
                                add(scale(s, product(x, y)), scale(u, product(x, z)))) <
            1e-6);
      CHECK(observable_distance(product(x, y), product(y, x)) < 1e-7);
      CHECK(norm(product(x, y)) <= norm(x) * norm(y) + 1e-10);
    }
  }
}

TEST_CASE("operator commutation for orthogonal indicators") {
  const Model m = Model::quantum(2);
  const Event p = qubit_p();
  RngStream rng(15);
  const PrimitiveObservable y = random_primitive(m, 2, rng);

  CHECK(operator_commute_check(p, Event::zero(m), y) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(operator_commute_check(p, complement(p), y) < 1e-10);
  CHECK_THROWS_AS(operator_commute_check(p, qubit_q(), y), not_orthogonal);

  // Precondition bypassed: non-orthogonal indicators need not commute. The
  // analytic pair misses commutation by exactly 1/8 on Y = chi_P.
  const PrimitiveObservable chi_p = indicator(p);
  const double bypass = observable_distance(
      indicator_product(p, indicator_product(qubit_q(), chi_p)),
      indicator_product(qubit_q(), indicator_product(p, chi_p)));
  CHECK(bypass == doctest::Approx(oracle::kWitnessResidual).epsilon(1e-10));
  CHECK(bypass > 0.1);
}

TEST_CASE("Jordan identity residuals vanish within the ladder") {
  const Model m = Model::quantum(3);
  RngStream rng(19);
  const PrimitiveObservable x = random_primitive(m, 3, rng);

  CHECK(jordan_identity_residual(x, PrimitiveObservable::unit(m)) < 1e-9);
  CHECK(jordan_identity_residual(indicator(random_event(m, 1, rng)), x) < 1e-9);
  for (int t = 0; t < 20; ++t) {
    RngStream inner = RngStream::derive(20, "jordan", t);
    for (const Model& model : {Model::classical(4), Model::quantum(3)}) {
      const PrimitiveObservable a = random_primitive(model, 3, inner);
      const PrimitiveObservable b = random_primitive(model, 3, inner);
      CHECK(jordan_identity_residual(a, b) < 1e-5);
    }
  }
}

TEST_CASE("associativity: exact classically, witnessed quantumly") {
  // Classical residuals are exactly zero on the dyadic grid.
  const Model c = Model::classical(5);
  for (int t = 0; t < 25; ++t) {
    RngStream rng = RngStream::derive(21, "assoc", t);
    const PrimitiveObservable x = random_primitive(c, 4, rng);
    const PrimitiveObservable y = random_primitive(c, 4, rng);
    const PrimitiveObservable z = random_primitive(c, 4, rng);
    CHECK(associativity_residual(x, y, z) == 0.0);
  }

  // The analytic witness triple (chiP, chiP, chiQ): residual exactly 1/8.
  const PrimitiveObservable chi_p = indicator(qubit_p());
  const PrimitiveObservable chi_q = indicator(qubit_q());
  const double witness = associativity_residual(chi_p, chi_p, chi_q);
  CHECK(witness == doctest::Approx(oracle::kWitnessResidual).epsilon(1e-10));
  CHECK(witness > 0.1);

  // (chiP, chiQ, chiP) is identically zero: commutativity alone forces
  // (X o Y) o X = X o (Y o X).
  CHECK(associativity_residual(chi_p, chi_q, chi_p) < 1e-10);
}

TEST_CASE("A1 residual and its operator identity") {
  // E = F: both sides are mu(E) + mu(E').
  const Model m = Model::quantum(2);
  RngStream rng(25);
  const State mu = random_state(m, rng);
  CHECK(a1_residual(mu, qubit_p(), qubit_p()) < 1e-10);

  // Classical: both sides equal mu(E n F) + mu(E' n F').
  const Model c = Model::classical(4);
  for (int t = 0; t < 20; ++t) {
    RngStream inner = RngStream::derive(26, "a1-classical", t);
    const State nu = random_state(c, inner);
    const Event e = random_event(c, inner.uniform_int(0, 4), inner);
    const Event f = random_event(c, inner.uniform_int(0, 4), inner);
    CHECK(a1_residual(nu, e, f) < 1e-12);
    if (evaluate(nu, f) > 1e-3 && evaluate(nu, complement(f)) > 1e-3) {
      const double direct = evaluate(nu, Event::classical_mask(c, e.mask() & f.mask())) +
                            evaluate(nu, Event::classical_mask(c, ~e.mask() & ~f.mask() & 0xF));
      const double lhs = evaluate(conditional(nu, f), e) * evaluate(nu, f) +
                         evaluate(conditional(nu, complement(f)), complement(e)) *
                             evaluate(nu, complement(f));
      CHECK(lhs == doctest::Approx(direct).epsilon(1e-9));
    }
  }

  // Operator identity: EFE + E'F'E' = FEF + F'E'F' = I - E - F + EF + FE.
  for (int t = 0; t < 20; ++t) {
    RngStream inner = RngStream::derive(27, "a1-operator", t);
    const Model q = Model::quantum(2 + t % 3);
    const Event e = random_event(q, inner.uniform_int(0, q.size()), inner);
    const Event f = random_event(q, inner.uniform_int(0, q.size()), inner);
    const auto em = oracle::from_eigen(e.matrix());
    const auto fm = oracle::from_eigen(f.matrix());
    const auto ecm = oracle::from_eigen(complement(e).matrix());
    const auto fcm = oracle::from_eigen(complement(f).matrix());
    const auto lhs = oracle::add(oracle::multiply(oracle::multiply(em, fm), em),
                                 oracle::multiply(oracle::multiply(ecm, fcm), ecm));
    const auto rhs = oracle::add(oracle::multiply(oracle::multiply(fm, em), fm),
                                 oracle::multiply(oracle::multiply(fcm, ecm), fcm));
    CHECK(oracle::max_abs_diff(lhs, rhs) < 1e-13);
    const State nu = random_state(q, inner);
    CHECK(a1_residual(nu, e, f) < 1e-9);
  }
}

TEST_CASE("Cauchy-Schwarz and the functional product law") {
  for (int t = 0; t < 20; ++t) {
    RngStream rng = RngStream::derive(29, "cs", t);
    for (const Model& m : {Model::classical(4), Model::quantum(3)}) {
      const PrimitiveObservable x = random_primitive(m, 3, rng);
      const PrimitiveObservable y = random_primitive(m, 3, rng);
      const State mu = random_state(m, rng);
      const auto square = [](double s) { return s * s; };
      const double cross = expectation(mu, product(x, y));
      const double xx = expectation(mu, functional_calculus(x, square));
      const double yy = expectation(mu, functional_calculus(y, square));
      CHECK(xx >= -1e-12);
      CHECK(cross * cross <= xx * yy + 1e-9);

      // f(X) o g(X) = (fg)(X).
      const auto f = [](double s) { return s * s - 0.25; };
      const auto g = [](double s) { return std::abs(s) + 0.5; };
      CHECK(observable_distance(
                product(functional_calculus(x, f), functional_calculus(x, g)),
                functional_calculus(x, [&](double s) { return f(s) * g(s); })) < 1e-7);
    }
  }
}
