#include "ucpkit/generate.hpp"

#include <algorithm>
#include <cmath>

#include "ucpkit/errors.hpp"

namespace ucp {

std::vector<Event> random_partition(const Model& m, int parts, RngStream& rng) {
  const int n = m.size();
  if (parts < 1 || parts > n) throw rank_out_of_range("partition size must be in [1, size]");
  // Random composition: every part gets one unit, the rest land uniformly.
  std::vector<int> sizes(parts, 1);
  for (int extra = 0; extra < n - parts; ++extra) {
    ++sizes[rng.uniform_int(0, parts - 1)];
  }
  std::vector<Event> out;
  out.reserve(parts);
  if (m.is_classical()) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(idx[i], idx[rng.uniform_int(0, i)]);
    int cursor = 0;
    for (int s : sizes) {
      std::uint64_t mask = 0;
      for (int k = 0; k < s; ++k) mask |= 1ULL << idx[cursor++];
      out.push_back(Event::classical_mask(m, mask));
    }
  } else {
    const linalg::Matrix u = linalg::haar_unitary(n, rng);
    int cursor = 0;
    for (int s : sizes) {
      const linalg::Matrix cols = u.middleCols(cursor, s);
      out.push_back(Event::quantum(m, cols * cols.adjoint()));
      cursor += s;
    }
  }
  return out;
}

PrimitiveObservable random_primitive(const Model& m, int max_values, RngStream& rng) {
  const int k = std::min(std::max(max_values, 1), m.size()) == 1
                    ? 1
                    : rng.uniform_int(2, std::min(max_values, m.size()));
  std::vector<double> values;
  if (m.is_classical()) {
    // Dyadic grid: sums, products and polarization combinations of these
    // values are exact in double precision.
    std::vector<int> grid;
    for (int v = -8; v <= 8; ++v) grid.push_back(v);
    for (int i = static_cast<int>(grid.size()) - 1; i > 0; --i) {
      std::swap(grid[i], grid[rng.uniform_int(0, i)]);
    }
    for (int i = 0; i < k; ++i) values.push_back(grid[i] / 8.0);
  } else {
    while (static_cast<int>(values.size()) < k) {
      const double v = rng.uniform(-1.0, 1.0);
      bool separated = true;
      for (double w : values) separated = separated && std::abs(v - w) > 1e-3;
      if (separated) values.push_back(v);
    }
  }
  const std::vector<Event> events = random_partition(m, k, rng);
  std::vector<SpectrumEntry> raw;
  for (int i = 0; i < k; ++i) raw.push_back({values[i], events[i]});
  return PrimitiveObservable(m, std::move(raw));
}

Event random_sub_event(const Event& e, RngStream& rng) {
  const Model& m = e.model();
  const int r = e.rank();
  if (r == 0) return Event::zero(m);
  const int sub = rng.uniform_int(0, r);
  if (sub == 0) return Event::zero(m);
  if (m.is_classical()) {
    auto pts = e.points();
    for (int i = static_cast<int>(pts.size()) - 1; i > 0; --i) {
      std::swap(pts[i], pts[rng.uniform_int(0, i)]);
    }
    std::uint64_t mask = 0;
    for (int i = 0; i < sub; ++i) mask |= 1ULL << pts[i];
    return Event::classical_mask(m, mask);
  }
  const linalg::Matrix rotated = e.range_basis() * linalg::haar_unitary(r, rng);
  const linalg::Matrix cols = rotated.leftCols(sub);
  return Event::quantum(m, cols * cols.adjoint());
}

std::vector<SpectrumEntry> refine_decomposition(const PrimitiveObservable& x,
                                                RngStream& rng) {
  const auto& spectrum = x.spectrum();
  std::vector<int> splittable;
  for (int i = 0; i < static_cast<int>(spectrum.size()); ++i) {
    if (spectrum[i].event.rank() >= 2) splittable.push_back(i);
  }
  if (splittable.empty()) return {spectrum.begin(), spectrum.end()};

  const int target = splittable[rng.uniform_int(0, static_cast<int>(splittable.size()) - 1)];
  std::vector<SpectrumEntry> refined;
  const Model& m = x.model();
  for (int i = 0; i < static_cast<int>(spectrum.size()); ++i) {
    if (i != target) {
      refined.push_back(spectrum[i]);
      continue;
    }
    const Event& e = spectrum[i].event;
    const int r = e.rank();
    const int cut = rng.uniform_int(1, r - 1);
    if (m.is_classical()) {
      auto pts = e.points();
      for (int j = static_cast<int>(pts.size()) - 1; j > 0; --j) {
        std::swap(pts[j], pts[rng.uniform_int(0, j)]);
      }
      std::uint64_t first = 0;
      for (int j = 0; j < cut; ++j) first |= 1ULL << pts[j];
      refined.push_back({spectrum[i].value, Event::classical_mask(m, first)});
      refined.push_back({spectrum[i].value, Event::classical_mask(m, e.mask() & ~first)});
    } else {
      const linalg::Matrix rotated = e.range_basis() * linalg::haar_unitary(r, rng);
      const linalg::Matrix left = rotated.leftCols(cut);
      const linalg::Matrix right = rotated.rightCols(r - cut);
      refined.push_back({spectrum[i].value, Event::quantum(m, left * left.adjoint())});
      refined.push_back({spectrum[i].value, Event::quantum(m, right * right.adjoint())});
    }
  }
  return refined;
}

std::pair<Event, Event> analytic_witness_pair(const Model& m) {
  if (!m.is_quantum() || m.size() < 2) {
    throw model_mismatch("the analytic witness pair needs a quantum model of dimension >= 2");
  }
  const int d = m.size();
  linalg::Matrix p = linalg::Matrix::Zero(d, d);
  p(0, 0) = 1.0;
  linalg::Matrix q = linalg::Matrix::Zero(d, d);
  q(0, 0) = q(0, 1) = q(1, 0) = q(1, 1) = 0.5;
  return {Event::quantum(m, p), Event::quantum(m, q)};
}

}  // namespace ucp
