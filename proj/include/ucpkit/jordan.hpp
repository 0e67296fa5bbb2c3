#pragma once

#include <span>

#include "ucpkit/observable.hpp"

namespace ucp {

enum class ProductPath { UExtension, Polarization };

/// Cross-validation record for a product computed along both paths.
struct ProductTrace {
  PrimitiveObservable lhs;
  PrimitiveObservable rhs;
  PrimitiveObservable u_extension_result;
  PrimitiveObservable polarization_result;
  double discrepancy;  // ||u_extension_result - polarization_result||
};

/// U_E(F): the observable with Exp_mu(U_E(F)) = mu(F|E) mu(E). Classical:
/// chi_{E into F}; quantum: the spectral decomposition of P_E P_F P_E.
PrimitiveObservable u_map(const Event& e, const Event& f);

/// Linear extension of U_E to primitive observables:
/// Y = sum_l s_l chi_{F_l}  ->  sum_l s_l U_E(F_l). Computed at the operator
/// level (P A(Y) P) and converted back to spectral form once.
PrimitiveObservable u_extend(const Event& e, const PrimitiveObservable& y);

/// chi_E o Y := (Y + U~_E(Y) - U~_{E'}(Y)) / 2.
PrimitiveObservable indicator_product(const Event& e, const PrimitiveObservable& y);

/// The symmetric product on primitive observables. UExtension expands X
/// over its spectrum and applies indicator_product termwise (the
/// constructive definition); Polarization computes
/// ((X+Y)^2 - X^2 - Y^2)/2 through functional calculus (the derived
/// characterization, kept as an independent cross-check).
PrimitiveObservable product(const PrimitiveObservable& x, const PrimitiveObservable& y,
                            ProductPath path = ProductPath::UExtension);

/// Computes both paths and the discrepancy between them.
ProductTrace product_traced(const PrimitiveObservable& x, const PrimitiveObservable& y);

/// UExtension product over an explicit (not necessarily canonical)
/// orthogonal decomposition of X. Used to verify that the product does not
/// depend on the choice of decomposition.
PrimitiveObservable product_over_decomposition(const Model& m,
                                               std::span<const SpectrumEntry> x_terms,
                                               const PrimitiveObservable& y);

/// || chi_E o (chi_F o Y) - chi_F o (chi_E o Y) || for orthogonal E, F.
/// Throws not_orthogonal otherwise.
double operator_commute_check(const Event& e, const Event& f,
                              const PrimitiveObservable& y);

/// || X o (X^2 o Y) - X^2 o (X o Y) ||.
double jordan_identity_residual(const PrimitiveObservable& x,
                                const PrimitiveObservable& y);

/// || (X o Y) o Z - X o (Y o Z) ||. Zero in the classical model; the
/// quantum model admits witnesses well above 0.1.
double associativity_residual(const PrimitiveObservable& x, const PrimitiveObservable& y,
                              const PrimitiveObservable& z);

/// | [mu(E|F)mu(F) + mu(E'|F')mu(F')] - [mu(F|E)mu(E) + mu(F'|E')mu(E')] |.
/// Terms whose conditioning event has probability <= kConditioningEpsilon
/// are evaluated as Exp_mu(U-map) directly, which is total.
double a1_residual(const State& mu, const Event& e, const Event& f);

}  // namespace ucp
