#include "ucpkit/jordan.hpp"

#include <cmath>

#include "ucpkit/errors.hpp"

namespace ucp {

namespace {

// chi_E o Y at the operator level: (A + P A P - P' A P') / 2. Computed
// literally so the construction, not its simplification (P A + A P)/2,
// is what runs; the oracle checks equate the two independently.
linalg::Matrix indicator_product_op(const linalg::Matrix& p, const linalg::Matrix& a) {
  const linalg::Matrix pc = linalg::Matrix::Identity(p.rows(), p.cols()) - p;
  return 0.5 * (a + p * a * p - pc * a * pc);
}

// Classical counterpart on value functions. The literal combination
// (y + 1_E y - 1_{E'} y)/2 collapses to 1_E y exactly in IEEE arithmetic.
std::vector<double> indicator_product_values(std::uint64_t mask,
                                             const std::vector<double>& y) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool inside = mask & (1ULL << i);
    const double compressed = inside ? y[i] : 0.0;
    const double complement_compressed = inside ? 0.0 : y[i];
    out[i] = 0.5 * (y[i] + compressed - complement_compressed);
  }
  return out;
}

}  // namespace

PrimitiveObservable u_map(const Event& e, const Event& f) {
  require_same_model(e.model(), f.model(), "u_map");
  const Model& m = e.model();
  if (m.is_classical()) {
    return indicator(Event::classical_mask(m, e.mask() & f.mask()));
  }
  return from_operator(m, e.matrix() * f.matrix() * e.matrix());
}

PrimitiveObservable u_extend(const Event& e, const PrimitiveObservable& y) {
  require_same_model(e.model(), y.model(), "u_extend");
  const Model& m = e.model();
  if (m.is_classical()) {
    auto values = to_values(y);
    for (int i = 0; i < m.size(); ++i) {
      if (!(e.mask() & (1ULL << i))) values[i] = 0.0;
    }
    return from_values(m, values);
  }
  // sum_l s_l U_E(F_l) collapses to P A(Y) P at the operator level; spectral
  // form is recovered once, at the boundary, to avoid compounding
  // clustering error across the inner sum.
  return from_operator(m, e.matrix() * to_operator(y) * e.matrix());
}

PrimitiveObservable indicator_product(const Event& e, const PrimitiveObservable& y) {
  require_same_model(e.model(), y.model(), "indicator_product");
  const Model& m = e.model();
  if (m.is_classical()) {
    return from_values(m, indicator_product_values(e.mask(), to_values(y)));
  }
  return from_operator(m, indicator_product_op(e.matrix(), to_operator(y)));
}

PrimitiveObservable product_over_decomposition(const Model& m,
                                               std::span<const SpectrumEntry> x_terms,
                                               const PrimitiveObservable& y) {
  require_same_model(m, y.model(), "product");
  if (m.is_classical()) {
    const auto vy = to_values(y);
    std::vector<double> acc(vy.size(), 0.0);
    for (const SpectrumEntry& term : x_terms) {
      const auto part = indicator_product_values(term.event.mask(), vy);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term.value * part[i];
    }
    return from_values(m, acc);
  }
  const linalg::Matrix ay = to_operator(y);
  linalg::Matrix acc = linalg::Matrix::Zero(m.size(), m.size());
  for (const SpectrumEntry& term : x_terms) {
    acc += term.value * indicator_product_op(term.event.matrix(), ay);
  }
  return from_operator(m, acc);
}

PrimitiveObservable product(const PrimitiveObservable& x, const PrimitiveObservable& y,
                            ProductPath path) {
  require_same_model(x.model(), y.model(), "product");
  if (path == ProductPath::UExtension) {
    return product_over_decomposition(x.model(), x.spectrum(), y);
  }
  // Polarization: X o Y = ((X+Y)^2 - X^2 - Y^2)/2, squares via functional
  // calculus. Deliberately routed through add/scale so it stays an
  // independent computation from the U-extension path.
  const auto square = [](double t) { return t * t; };
  const PrimitiveObservable sum_sq = functional_calculus(add(x, y), square);
  const PrimitiveObservable x_sq = functional_calculus(x, square);
  const PrimitiveObservable y_sq = functional_calculus(y, square);
  return scale(0.5, add(add(sum_sq, scale(-1.0, x_sq)), scale(-1.0, y_sq)));
}

ProductTrace product_traced(const PrimitiveObservable& x, const PrimitiveObservable& y) {
  PrimitiveObservable via_u = product(x, y, ProductPath::UExtension);
  PrimitiveObservable via_pol = product(x, y, ProductPath::Polarization);
  const double disc = observable_distance(via_u, via_pol);
  return ProductTrace{x, y, std::move(via_u), std::move(via_pol), disc};
}

double operator_commute_check(const Event& e, const Event& f,
                              const PrimitiveObservable& y) {
  if (!is_orthogonal(e, f)) {
    throw not_orthogonal("operator_commute_check requires orthogonal events");
  }
  const PrimitiveObservable lhs = indicator_product(e, indicator_product(f, y));
  const PrimitiveObservable rhs = indicator_product(f, indicator_product(e, y));
  return observable_distance(lhs, rhs);
}

double jordan_identity_residual(const PrimitiveObservable& x,
                                const PrimitiveObservable& y) {
  require_same_model(x.model(), y.model(), "jordan_identity_residual");
  const PrimitiveObservable x_sq = functional_calculus(x, [](double t) { return t * t; });
  const PrimitiveObservable lhs = product(x, product(x_sq, y));
  const PrimitiveObservable rhs = product(x_sq, product(x, y));
  return observable_distance(lhs, rhs);
}

double associativity_residual(const PrimitiveObservable& x, const PrimitiveObservable& y,
                              const PrimitiveObservable& z) {
  require_same_model(x.model(), y.model(), "associativity_residual");
  require_same_model(x.model(), z.model(), "associativity_residual");
  const PrimitiveObservable lhs = product(product(x, y), z);
  const PrimitiveObservable rhs = product(x, product(y, z));
  return observable_distance(lhs, rhs);
}

double a1_residual(const State& mu, const Event& e, const Event& f) {
  require_same_model(mu.model(), e.model(), "a1_residual");
  require_same_model(mu.model(), f.model(), "a1_residual");
  // mu(X|C) mu(C); falls back to Exp_mu(U_C(X)) when mu(C) is too small to
  // condition on, which is the same quantity and total.
  const auto term = [&mu](const Event& c, const Event& x) {
    const double p = evaluate(mu, c);
    if (p > kConditioningEpsilon) {
      return evaluate(conditional(mu, c), x) * p;
    }
    return expectation(mu, u_map(c, x));
  };
  const Event ec = complement(e);
  const Event fc = complement(f);
  const double lhs = term(f, e) + term(fc, ec);
  const double rhs = term(e, f) + term(ec, fc);
  return std::abs(lhs - rhs);
}

}  // namespace ucp
