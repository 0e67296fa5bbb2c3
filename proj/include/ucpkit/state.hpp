#pragma once

#include <cstdint>
#include <vector>

#include "ucpkit/model.hpp"

namespace ucp {

/// Probability of the conditioning event below which conditionals are
/// refused rather than computed (division by near-zero destroys every
/// downstream tolerance).
inline constexpr double kConditioningEpsilon = 1e-10;

/// A sigma-additive state: probability vector (classical) or density matrix
/// (quantum). Quantum payloads are re-hermitized and trace-normalized at
/// construction; eigenvalues in [-tol, 0) are clipped to zero, anything
/// below -tol is rejected.
class State {
public:
  static State classical(const Model& m, std::vector<double> probs);
  static State quantum(const Model& m, linalg::Matrix rho);
  static State point_mass(const Model& m, int point);
  static State pure(const Model& m, const linalg::Vector& v);

  const Model& model() const { return model_; }
  const std::vector<double>& probs() const { return probs_; }
  const linalg::Matrix& density() const { return rho_; }

private:
  State(Model m, std::vector<double> p);
  State(Model m, linalg::Matrix rho);

  Model model_;
  std::vector<double> probs_;  // classical
  linalg::Matrix rho_;         // quantum
};

/// mu(E), clamped to [0,1].
double evaluate(const State& mu, const Event& e);

/// The unique conditional state mu_E: restriction + renormalization
/// (classical) or the Lueders compression P rho P / tr(rho P) (quantum).
/// Throws conditioning_on_null when evaluate(mu, e) <= kConditioningEpsilon.
State conditional(const State& mu, const Event& e);

/// Checks that the Lueders state is the unique solution of the linear
/// system tr(sigma F_k) = mu(F_k)/mu(E) over a generated spanning family of
/// rank-1 sub-projections of E (quantum only). `attempts` bounds the family
/// regeneration tries before DegenerateSpanningFamily is raised.
bool conditional_uniqueness_probe(const State& mu, const Event& e, int attempts,
                                  std::uint64_t seed);

State random_state(const Model& m, std::uint64_t seed);
State random_state(const Model& m, RngStream& rng);

/// A state with |mu(E) - mu(F)| > tolerance for unequal events: point mass
/// on the symmetric difference (classical) or the pure state on a top
/// eigenvector of P - Q (quantum). Throws events_equal_error on equal input.
State separating_state(const Event& e, const Event& f);

/// A state with mu(E) = 1 for a nonzero event, realized as
/// conditional(separating_state(E, 0), E).
State certifying_state(const Event& e);

}  // namespace ucp
