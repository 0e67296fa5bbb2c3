#pragma once

#include <vector>

#include "ucpkit/observable.hpp"

namespace ucp {

/// Random resolution of the identity into `parts` nonzero mutually
/// orthogonal events (random composition of the dimension; Haar-rotated
/// subspaces in the quantum model).
std::vector<Event> random_partition(const Model& m, int parts, RngStream& rng);

/// Random primitive observable with `max_values` distinct spectrum values in
/// [-1, 1]. Classical values are drawn from the dyadic grid {k/8 : |k| <= 8}
/// so pointwise algebra on them is exact in double precision; quantum values
/// are continuous with pairwise gaps > 1e-3.
PrimitiveObservable random_primitive(const Model& m, int max_values, RngStream& rng);

/// Random sub-event F with precedes(F, E).
Event random_sub_event(const Event& e, RngStream& rng);

/// Splits one splittable event of X (rank >= 2) into two orthogonal parts
/// and returns the refined, non-canonical decomposition. Falls back to the
/// canonical spectrum when nothing can be split.
std::vector<SpectrumEntry> refine_decomposition(const PrimitiveObservable& x,
                                                RngStream& rng);

/// The bundled non-associativity witness pair: P projecting onto the first
/// basis vector and Q onto (e1+e2)/sqrt(2), embedded in dimension d. The
/// triple (chi_P, chi_P, chi_Q) has associativity residual exactly 1/8.
std::pair<Event, Event> analytic_witness_pair(const Model& m);

}  // namespace ucp
