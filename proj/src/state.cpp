#include "ucpkit/state.hpp"

#include <algorithm>
#include <cmath>

#include "ucpkit/errors.hpp"

namespace ucp {

State::State(Model m, std::vector<double> p) : model_(m), probs_(std::move(p)) {}
State::State(Model m, linalg::Matrix rho) : model_(m), rho_(std::move(rho)) {}

State State::classical(const Model& m, std::vector<double> probs) {
  if (!m.is_classical()) throw invariant_violation("probability vector in a quantum model");
  if (static_cast<int>(probs.size()) != m.size()) {
    throw invariant_violation("probability vector length does not match the sample space");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw invariant_violation("probability entries must be finite and nonnegative");
    }
    total += p;
  }
  if (total <= 0.0) throw invariant_violation("probability vector sums to zero");
  for (double& p : probs) p /= total;
  return State(m, std::move(probs));
}

State State::quantum(const Model& m, linalg::Matrix rho) {
  if (!m.is_quantum()) throw invariant_violation("density matrix in a classical model");
  if (rho.rows() != m.size() || rho.cols() != m.size()) {
    throw invariant_violation("density matrix dimension does not match the model");
  }
  if (!rho.allFinite()) {
    throw invariant_violation("density matrix contains non-finite entries");
  }
  const double tol = m.tolerance();
  rho = linalg::hermitize(rho);
  if (std::abs(rho.trace().real() - 1.0) > tol) {
    throw invariant_violation("density matrix trace is not 1");
  }
  auto es = linalg::eigh(rho);
  if (es.values.minCoeff() < -tol) {
    throw invariant_violation("density matrix has an eigenvalue below -tolerance");
  }
  // Clip the tiny negatives and renormalize, so the stored payload is PSD
  // with unit trace to machine precision.
  Eigen::VectorXd clipped = es.values.cwiseMax(0.0);
  clipped /= clipped.sum();
  return State(m, es.vectors * clipped.asDiagonal() * es.vectors.adjoint());
}

State State::point_mass(const Model& m, int point) {
  if (point < 0 || point >= m.size()) throw rank_out_of_range("point outside the sample space");
  std::vector<double> p(m.size(), 0.0);
  p[point] = 1.0;
  return classical(m, std::move(p));
}

State State::pure(const Model& m, const linalg::Vector& v) {
  if (v.size() != m.size()) throw invariant_violation("vector dimension does not match the model");
  const double len = v.norm();
  if (len <= 0.0) throw invariant_violation("pure state from the zero vector");
  const linalg::Vector unit = v / len;
  return quantum(m, unit * unit.adjoint());
}

double evaluate(const State& mu, const Event& e) {
  require_same_model(mu.model(), e.model(), "evaluate");
  double value = 0.0;
  if (mu.model().is_classical()) {
    for (int i = 0; i < mu.model().size(); ++i) {
      if (e.mask() & (1ULL << i)) value += mu.probs()[i];
    }
  } else {
    // tr(rho P) without forming the product.
    value = mu.density().cwiseProduct(e.matrix().transpose()).sum().real();
  }
  return std::clamp(value, 0.0, 1.0);
}

State conditional(const State& mu, const Event& e) {
  require_same_model(mu.model(), e.model(), "conditional");
  const double p = evaluate(mu, e);
  if (p <= kConditioningEpsilon) {
    throw conditioning_on_null("conditioning event has probability <= 1e-10");
  }
  if (mu.model().is_classical()) {
    std::vector<double> restricted(mu.model().size(), 0.0);
    for (int i = 0; i < mu.model().size(); ++i) {
      if (e.mask() & (1ULL << i)) restricted[i] = mu.probs()[i];
    }
    return State::classical(mu.model(), std::move(restricted));
  }
  const linalg::Matrix& proj = e.matrix();
  return State::quantum(mu.model(), proj * mu.density() * proj / p);
}

namespace {

// Real parametrization of r x r Hermitian matrices: r diagonal entries,
// then (Re, Im) for every upper-triangular entry.
int herm_param_dim(int r) { return r * r; }

Eigen::VectorXd constraint_row(const linalg::Vector& u) {
  const int r = static_cast<int>(u.size());
  Eigen::VectorXd row(herm_param_dim(r));
  for (int i = 0; i < r; ++i) row(i) = std::norm(u(i));
  int k = r;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const std::complex<double> cross = std::conj(u(i)) * u(j);
      row(k++) = 2.0 * cross.real();
      row(k++) = -2.0 * cross.imag();
    }
  }
  return row;
}

linalg::Matrix unpack_hermitian(const Eigen::VectorXd& x, int r) {
  linalg::Matrix s(r, r);
  for (int i = 0; i < r; ++i) s(i, i) = x(i);
  int k = r;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      s(i, j) = {x(k), x(k + 1)};
      s(j, i) = std::conj(s(i, j));
      k += 2;
    }
  }
  return s;
}

}  // namespace

bool conditional_uniqueness_probe(const State& mu, const Event& e, int attempts,
                                  std::uint64_t seed) {
  require_same_model(mu.model(), e.model(), "conditional_uniqueness_probe");
  const Model& m = mu.model();
  if (!m.is_quantum()) throw model_mismatch("uniqueness probe requires the quantum model");
  const double p = evaluate(mu, e);
  if (p <= kConditioningEpsilon) {
    throw conditioning_on_null("conditioning event has probability <= 1e-10");
  }

  const linalg::Matrix basis = e.range_basis();
  const int r = static_cast<int>(basis.cols());
  const int dim = herm_param_dim(r);
  const linalg::Matrix lueders = e.matrix() * mu.density() * e.matrix() / p;

  for (int attempt = 0; attempt < std::max(attempts, 1); ++attempt) {
    RngStream rng = RngStream::derive(seed, "uniqueness_probe", attempt);
    const int rows = dim + r;  // enough rank-1 constraints to span, generically
    Eigen::MatrixXd a(rows + 1, dim);
    Eigen::VectorXd b(rows + 1);
    for (int k = 0; k < rows; ++k) {
      linalg::Vector u(r);
      for (int i = 0; i < r; ++i) u(i) = rng.complex_gaussian();
      u /= u.norm();
      const linalg::Vector w = basis * u;
      const Event f = Event::quantum(m, w * w.adjoint());
      a.row(k) = constraint_row(u);
      b(k) = evaluate(mu, f) / p;
    }
    // tr(sigma E) = 1 in compressed coordinates.
    a.row(rows).setZero();
    for (int i = 0; i < r; ++i) a(rows, i) = 1.0;
    b(rows) = 1.0;

    const auto ls = linalg::solve_least_squares(a, b);
    if (ls.rank < dim) continue;

    const linalg::Matrix sigma = basis * unpack_hermitian(ls.solution, r) * basis.adjoint();
    return linalg::spectral_norm(sigma - lueders) <= 1e3 * m.tolerance();
  }
  throw degenerate_spanning_family("spanning family failed to reach full rank");
}

State random_state(const Model& m, RngStream& rng) {
  if (m.is_classical()) {
    std::vector<double> p(m.size());
    for (double& v : p) v = rng.uniform01();
    return State::classical(m, std::move(p));
  }
  const linalg::Matrix g = linalg::ginibre(m.size(), m.size(), rng);
  linalg::Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return State::quantum(m, std::move(rho));
}

State random_state(const Model& m, std::uint64_t seed) {
  RngStream rng = RngStream::derive(seed, "random_state", 0);
  return random_state(m, rng);
}

State separating_state(const Event& e, const Event& f) {
  require_same_model(e.model(), f.model(), "separating_state");
  if (events_equal(e, f)) {
    throw events_equal_error("separating_state requires unequal events");
  }
  const Model& m = e.model();
  if (m.is_classical()) {
    const std::uint64_t diff = e.mask() ^ f.mask();
    for (int i = 0; i < m.size(); ++i) {
      if (diff & (1ULL << i)) return State::point_mass(m, i);
    }
    throw events_equal_error("empty symmetric difference");  // unreachable
  }
  const auto es = linalg::eigh(e.matrix() - f.matrix());
  const int last = m.size() - 1;
  const int pick = std::abs(es.values(0)) > std::abs(es.values(last)) ? 0 : last;
  return State::pure(m, es.vectors.col(pick));
}

State certifying_state(const Event& e) {
  if (e.is_zero()) throw events_equal_error("no state certifies the zero event");
  return conditional(separating_state(e, Event::zero(e.model())), e);
}

}  // namespace ucp
