#include "ucpkit/model.hpp"

#include <bit>
#include <cmath>

#include "ucpkit/errors.hpp"

namespace ucp {

namespace {

std::uint64_t universe_mask(int size) {
  return size >= 64 ? ~0ULL : ((1ULL << size) - 1);
}

}  // namespace

Model::Model(ModelKind kind, int size, double tolerance)
    : kind_(kind), size_(size), tolerance_(tolerance) {}

Model Model::classical(int size) {
  if (size < 1 || size > kMaxClassicalSize) {
    throw invariant_violation("classical sample space size must be in [1, 64]");
  }
  return Model(ModelKind::Classical, size, 0.0);
}

Model Model::quantum(int dim, double tolerance) {
  if (dim < 1 || dim > kMaxQuantumDim) {
    throw invariant_violation("quantum dimension must be in [1, 32]");
  }
  if (!(tolerance > 0.0) || !(tolerance < 1e-4)) {
    throw invariant_violation("quantum tolerance must lie in (0, 1e-4)");
  }
  return Model(ModelKind::Quantum, dim, tolerance);
}

void require_same_model(const Model& a, const Model& b, const char* op) {
  if (!(a == b)) throw model_mismatch(std::string(op) + ": operands belong to different models");
}

Event::Event(Model m, std::uint64_t mask) : model_(m), mask_(mask) {}

Event::Event(Model m, linalg::Matrix p) : model_(m), matrix_(std::move(p)) {}

Event Event::classical_mask(const Model& m, std::uint64_t mask) {
  if (!m.is_classical()) throw invariant_violation("classical payload in a quantum model");
  if (mask & ~universe_mask(m.size())) {
    throw invariant_violation("subset contains points outside the sample space");
  }
  return Event(m, mask);
}

Event Event::classical(const Model& m, const std::vector<int>& points) {
  std::uint64_t mask = 0;
  for (int p : points) {
    if (p < 0 || p >= m.size()) {
      throw invariant_violation("subset contains points outside the sample space");
    }
    mask |= 1ULL << p;
  }
  return classical_mask(m, mask);
}

Event Event::quantum(const Model& m, linalg::Matrix projection) {
  if (!m.is_quantum()) throw invariant_violation("quantum payload in a classical model");
  if (projection.rows() != m.size() || projection.cols() != m.size()) {
    throw invariant_violation("projection dimension does not match the model");
  }
  if (!projection.allFinite()) {
    throw invariant_violation("projection contains non-finite entries");
  }
  // Canonicalize exactly once: hermitize, then require idempotency.
  linalg::Matrix p = linalg::hermitize(projection);
  const double idem = linalg::spectral_norm(p * p - p);
  if (!(idem <= m.tolerance())) {
    throw invariant_violation("matrix is not a projection: ||P^2 - P|| = " +
                              std::to_string(idem));
  }
  return Event(m, std::move(p));
}

Event Event::zero(const Model& m) {
  return m.is_classical() ? Event(m, std::uint64_t{0})
                          : Event(m, linalg::Matrix::Zero(m.size(), m.size()));
}

Event Event::one(const Model& m) {
  return m.is_classical() ? Event(m, universe_mask(m.size()))
                          : Event(m, linalg::Matrix::Identity(m.size(), m.size()));
}

int Event::rank() const {
  if (model_.is_classical()) return std::popcount(mask_);
  return static_cast<int>(std::lround(matrix_.trace().real()));
}

std::vector<int> Event::points() const {
  std::vector<int> out;
  for (int i = 0; i < model_.size(); ++i)
    if (mask_ & (1ULL << i)) out.push_back(i);
  return out;
}

linalg::Matrix Event::range_basis() const {
  const auto es = linalg::eigh(matrix_);
  const int d = model_.size();
  linalg::Matrix basis(d, rank());
  int k = 0;
  for (int i = 0; i < d; ++i) {
    if (es.values(i) > 0.5) basis.col(k++) = es.vectors.col(i);
  }
  return basis.leftCols(k);
}

bool is_orthogonal(const Event& e, const Event& f) {
  require_same_model(e.model(), f.model(), "is_orthogonal");
  if (e.model().is_classical()) return (e.mask() & f.mask()) == 0;
  return linalg::spectral_norm(e.matrix() * f.matrix()) <= e.model().tolerance();
}

Event ortho_sum(const Event& e, const Event& f) {
  if (!is_orthogonal(e, f)) {
    throw not_orthogonal("ortho_sum is defined for orthogonal events only");
  }
  if (e.model().is_classical()) return Event::classical_mask(e.model(), e.mask() | f.mask());
  return Event::quantum(e.model(), e.matrix() + f.matrix());
}

Event complement(const Event& e) {
  if (e.model().is_classical()) {
    return Event::classical_mask(e.model(), ~e.mask() & Event::one(e.model()).mask());
  }
  return Event::quantum(e.model(), linalg::Matrix::Identity(e.model().size(), e.model().size()) -
                                       e.matrix());
}

bool precedes(const Event& e, const Event& f) {
  return is_orthogonal(e, complement(f));
}

bool events_equal(const Event& e, const Event& f) {
  require_same_model(e.model(), f.model(), "events_equal");
  if (e.model().is_classical()) return e.mask() == f.mask();
  return linalg::spectral_norm(e.matrix() - f.matrix()) <= e.model().tolerance();
}

Event ortho_diff(const Event& f, const Event& e) {
  if (!precedes(e, f)) throw not_orthogonal("ortho_diff requires precedes(e, f)");
  if (f.model().is_classical()) return Event::classical_mask(f.model(), f.mask() & ~e.mask());
  return Event::quantum(f.model(), f.matrix() - e.matrix());
}

double event_distance(const Event& e, const Event& f) {
  require_same_model(e.model(), f.model(), "event_distance");
  if (e.model().is_classical()) return e.mask() == f.mask() ? 0.0 : 1.0;
  return linalg::spectral_norm(e.matrix() - f.matrix());
}

Event random_event(const Model& m, int rank, RngStream& rng) {
  if (rank < 0 || rank > m.size()) throw rank_out_of_range("event rank must be in [0, size]");
  if (rank == 0) return Event::zero(m);
  if (rank == m.size()) return Event::one(m);
  if (m.is_classical()) {
    // Partial Fisher-Yates: the first `rank` entries are a uniform subset.
    std::vector<int> idx(m.size());
    for (int i = 0; i < m.size(); ++i) idx[i] = i;
    for (int i = 0; i < rank; ++i) {
      std::swap(idx[i], idx[rng.uniform_int(i, m.size() - 1)]);
    }
    std::uint64_t mask = 0;
    for (int i = 0; i < rank; ++i) mask |= 1ULL << idx[i];
    return Event::classical_mask(m, mask);
  }
  const linalg::Matrix u = linalg::haar_unitary(m.size(), rng);
  const linalg::Matrix v = u.leftCols(rank);
  return Event::quantum(m, v * v.adjoint());
}

Event random_event(const Model& m, int rank, std::uint64_t seed) {
  RngStream rng = RngStream::derive(seed, "random_event", 0);
  return random_event(m, rank, rng);
}

}  // namespace ucp
