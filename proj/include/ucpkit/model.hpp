#pragma once

#include <cstdint>
#include <vector>

#include "ucpkit/linalg.hpp"

namespace ucp {

enum class ModelKind { Classical, Quantum };

/// A concrete event algebra: either the Boolean algebra of subsets of a
/// finite sample space, or the projection lattice of a d-dimensional
/// complex matrix algebra.
///
/// `tolerance` is the numerical equality / idempotency threshold used by the
/// quantum model; classical subset arithmetic is exact, so its tolerance is
/// pinned to 0.
class Model {
public:
  static constexpr int kMaxQuantumDim = 32;
  static constexpr int kMaxClassicalSize = 64;
  static constexpr double kDefaultQuantumTolerance = 1e-8;

  static Model classical(int size);
  static Model quantum(int dim, double tolerance = kDefaultQuantumTolerance);

  ModelKind kind() const { return kind_; }
  int size() const { return size_; }
  double tolerance() const { return tolerance_; }
  bool is_classical() const { return kind_ == ModelKind::Classical; }
  bool is_quantum() const { return kind_ == ModelKind::Quantum; }

  bool operator==(const Model& other) const = default;

private:
  Model(ModelKind kind, int size, double tolerance);

  ModelKind kind_;
  int size_;
  double tolerance_;
};

/// Throws model_mismatch unless both operands live in the same model.
void require_same_model(const Model& a, const Model& b, const char* op);

/// An element of the event algebra: a subset (classical, stored as a bit
/// mask) or an orthogonal projection matrix (quantum). Events are immutable
/// values; quantum payloads are hermitized once at construction and checked
/// for idempotency against the model tolerance.
class Event {
public:
  static Event classical_mask(const Model& m, std::uint64_t mask);
  static Event classical(const Model& m, const std::vector<int>& points);
  static Event quantum(const Model& m, linalg::Matrix projection);
  static Event zero(const Model& m);
  static Event one(const Model& m);

  const Model& model() const { return model_; }
  std::uint64_t mask() const { return mask_; }
  const linalg::Matrix& matrix() const { return matrix_; }

  /// Cardinality (classical) or projection rank (quantum, from the trace).
  int rank() const;
  bool is_zero() const { return rank() == 0; }
  bool is_one() const { return rank() == model_.size(); }

  std::vector<int> points() const;  // classical payload as sorted indices

  /// Orthonormal basis of the range (quantum), as matrix columns.
  linalg::Matrix range_basis() const;

private:
  Event(Model m, std::uint64_t mask);
  Event(Model m, linalg::Matrix p);

  Model model_;
  std::uint64_t mask_ = 0;  // classical
  linalg::Matrix matrix_;   // quantum
};

// Orthospace operations. ortho_sum is partial by design: it throws
// not_orthogonal unless is_orthogonal(e, f).
bool is_orthogonal(const Event& e, const Event& f);
Event ortho_sum(const Event& e, const Event& f);
Event complement(const Event& e);
bool precedes(const Event& e, const Event& f);
bool events_equal(const Event& e, const Event& f);

/// The unique d with e + d = f; requires precedes(e, f).
Event ortho_diff(const Event& f, const Event& e);

/// Spectral norm of the payload difference; classical sets are exact, so
/// the distance is 0 or 1 there.
double event_distance(const Event& e, const Event& f);

/// Random event of the given rank: uniformly random subset (classical) or
/// projection onto the first `rank` columns of a Haar unitary (quantum).
/// Deterministic per seed.
Event random_event(const Model& m, int rank, std::uint64_t seed);
Event random_event(const Model& m, int rank, RngStream& rng);

}  // namespace ucp
