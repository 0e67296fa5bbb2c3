#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ucpkit/state.hpp"

namespace ucp {

/// Finite union of real intervals with open/closed endpoint flags. This is
/// all the Borel structure a finite spectral measure can see: evaluation
/// only ever asks whether a spectrum value is a member.
class BorelSet {
public:
  struct Interval {
    double lo, hi;
    bool lo_closed, hi_closed;
  };

  static BorelSet empty();
  static BorelSet real_line();
  static BorelSet interval(double lo, double hi, bool lo_closed = true,
                           bool hi_closed = true);
  static BorelSet point(double t);

  BorelSet united(const BorelSet& other) const;
  BorelSet complement_set() const;
  bool contains(double t) const;
  const std::vector<Interval>& parts() const { return parts_; }

private:
  explicit BorelSet(std::vector<Interval> parts);
  std::vector<Interval> parts_;  // normalized: disjoint, sorted
};

struct SpectrumEntry {
  double value;
  Event event;
};

struct Distribution {
  std::vector<std::pair<double, double>> points;  // (value, probability)
};

/// A bounded real observable in finite spectral form: sum_j t_j chi_{E_j}
/// with mutually orthogonal nonzero events resolving the identity and
/// strictly increasing values. Construction canonicalizes any raw list:
/// zero events are dropped, values closer than the merge threshold are
/// combined by ortho_sum, and the complement of the covered space is stored
/// explicitly as a 0-valued entry when nonzero.
class PrimitiveObservable {
public:
  PrimitiveObservable(const Model& m, std::vector<SpectrumEntry> raw,
                      std::optional<double> merge_eps = std::nullopt);

  static PrimitiveObservable zero(const Model& m);
  static PrimitiveObservable unit(const Model& m);  // chi_1

  const Model& model() const { return model_; }
  const std::vector<SpectrumEntry>& spectrum() const { return spectrum_; }

private:
  Model model_;
  std::vector<SpectrumEntry> spectrum_;
};

/// chi_E: the two-point spectral measure {(1,E),(0,E')}.
PrimitiveObservable indicator(const Event& e);

/// X(B): ortho-sum of the events whose value lies in B.
Event evaluate_spectral(const PrimitiveObservable& x, const BorelSet& b);

/// max |t_j| over the spectrum; equals inf{r : X([-r,r]) = 1}.
double norm(const PrimitiveObservable& x);

/// The distribution mu^X: (t_j, mu(E_j)) pairs.
Distribution distribution(const State& mu, const PrimitiveObservable& x);

/// Exp_mu(X) = sum_j t_j mu(E_j).
double expectation(const State& mu, const PrimitiveObservable& x);

/// f(X): relabel the spectrum through f and re-canonicalize. f only ever
/// gets sampled at the (finitely many) spectrum values.
PrimitiveObservable functional_calculus(const PrimitiveObservable& x,
                                        const std::function<double(double)>& f);

/// X + Y: pointwise value-function sum (classical) or eigendecomposition of
/// A(X) + A(Y) with eigenvalue clustering (quantum).
PrimitiveObservable add(const PrimitiveObservable& x, const PrimitiveObservable& y);

/// sX via functional calculus.
PrimitiveObservable scale(double s, const PrimitiveObservable& x);

/// Quantizes the spectrum to the grid {r*k/n : |k| <= n}, r = norm(X). The
/// grids nest as n doubles, so the approximation error is non-increasing
/// along n, 2n, 4n, ... and always <= r/(2n).
PrimitiveObservable step_approximate(const PrimitiveObservable& x, int n);

struct ConvexTerm {
  double weight;
  Event pos;  // E in chi_E - chi_F
  Event neg;  // F
};

/// Writes X with norm(X) <= 1 as a convex combination of differences of
/// indicator observables, by layer-peeling over the sorted absolute values.
/// Reconstruction is exact at the spectrum level.
std::vector<ConvexTerm> convex_decompose(const PrimitiveObservable& x);

// Operator realization A(X) = sum_j t_j P_j. Internal representation for
// quantum arithmetic; classical observables realize as value functions.
linalg::Matrix to_operator(const PrimitiveObservable& x);
std::vector<double> to_values(const PrimitiveObservable& x);
PrimitiveObservable from_operator(const Model& m, const linalg::Matrix& a,
                                  std::optional<double> cluster_eps = std::nullopt);
PrimitiveObservable from_values(const Model& m, std::span<const double> values);

/// ||X - Y|| via the operator realization (spectral norm of the difference;
/// classical: max pointwise gap).
double observable_distance(const PrimitiveObservable& x, const PrimitiveObservable& y);

/// Default eigenvalue clustering threshold for recovering spectral form
/// from an operator of the given scale.
double default_cluster_eps(double operator_scale);

/// Canonical value-merge threshold for an observable of the given norm.
double value_merge_eps(double observable_norm);

}  // namespace ucp
