#include "ucpkit/observable.hpp"

#include <algorithm>
#include <cmath>

#include "ucpkit/errors.hpp"

namespace ucp {

// BorelSet --------------------------------------------------------------

namespace {

bool interval_empty(const BorelSet::Interval& i) {
  if (i.lo > i.hi) return true;
  if (i.lo == i.hi) return !(i.lo_closed && i.hi_closed);
  return false;
}

// Two normalized intervals merge when they overlap or touch with at least
// one closed endpoint at the junction.
bool intervals_mergeable(const BorelSet::Interval& a, const BorelSet::Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

}  // namespace

BorelSet::BorelSet(std::vector<Interval> parts) {
  std::erase_if(parts, interval_empty);
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  for (const Interval& next : parts) {
    if (!parts_.empty() && intervals_mergeable(parts_.back(), next)) {
      Interval& cur = parts_.back();
      if (next.hi > cur.hi || (next.hi == cur.hi && next.hi_closed)) {
        cur.hi = next.hi;
        cur.hi_closed = next.hi_closed;
      }
    } else {
      parts_.push_back(next);
    }
  }
}

BorelSet BorelSet::empty() { return BorelSet({}); }

BorelSet BorelSet::real_line() {
  return interval(-std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(), false, false);
}

BorelSet BorelSet::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  return BorelSet({{lo, hi, lo_closed, hi_closed}});
}

BorelSet BorelSet::point(double t) { return interval(t, t, true, true); }

BorelSet BorelSet::united(const BorelSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return BorelSet(std::move(all));
}

BorelSet BorelSet::complement_set() const {
  std::vector<Interval> out;
  double cursor = -std::numeric_limits<double>::infinity();
  bool cursor_closed = false;
  for (const Interval& i : parts_) {
    out.push_back({cursor, i.lo, cursor_closed, !i.lo_closed});
    cursor = i.hi;
    cursor_closed = !i.hi_closed;
  }
  out.push_back({cursor, std::numeric_limits<double>::infinity(), cursor_closed, false});
  return BorelSet(std::move(out));
}

bool BorelSet::contains(double t) const {
  for (const Interval& i : parts_) {
    const bool above = t > i.lo || (t == i.lo && i.lo_closed);
    const bool below = t < i.hi || (t == i.hi && i.hi_closed);
    if (above && below) return true;
  }
  return false;
}

// Thresholds ------------------------------------------------------------

double value_merge_eps(double observable_norm) {
  return 1e-9 * std::max(1.0, observable_norm);
}

double default_cluster_eps(double operator_scale) {
  return std::max(1e-7, 1e-9 * operator_scale);
}

// PrimitiveObservable ----------------------------------------------------

PrimitiveObservable::PrimitiveObservable(const Model& m, std::vector<SpectrumEntry> raw,
                                         std::optional<double> merge_eps)
    : model_(m) {
  for (const SpectrumEntry& entry : raw) {
    require_same_model(m, entry.event.model(), "observable spectrum");
  }
  std::erase_if(raw, [](const SpectrumEntry& e) { return e.event.is_zero(); });

  double max_abs = 0.0;
  for (const SpectrumEntry& e : raw) max_abs = std::max(max_abs, std::abs(e.value));
  const double eps = merge_eps.value_or(value_merge_eps(max_abs));

  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!is_orthogonal(raw[i].event, raw[j].event)) {
        throw invariant_violation("spectrum events are not mutually orthogonal");
      }
    }
  }

  for (SpectrumEntry& entry : raw) {
    if (std::abs(entry.value) <= eps) entry.value = 0.0;
  }
  std::sort(raw.begin(), raw.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
  for (const SpectrumEntry& entry : raw) {
    if (!spectrum_.empty() && entry.value - spectrum_.back().value <= eps) {
      spectrum_.back().event = ortho_sum(spectrum_.back().event, entry.event);
    } else {
      spectrum_.push_back(entry);
    }
  }

  Event covered = Event::zero(m);
  for (const SpectrumEntry& entry : spectrum_) covered = ortho_sum(covered, entry.event);
  const Event residual = complement(covered);
  if (!residual.is_zero()) {
    auto zero_entry = std::find_if(spectrum_.begin(), spectrum_.end(),
                                   [](const SpectrumEntry& e) { return e.value == 0.0; });
    if (zero_entry != spectrum_.end()) {
      zero_entry->event = ortho_sum(zero_entry->event, residual);
    } else {
      spectrum_.push_back({0.0, residual});
      std::sort(spectrum_.begin(), spectrum_.end(),
                [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    }
  }
}

PrimitiveObservable PrimitiveObservable::zero(const Model& m) {
  return PrimitiveObservable(m, {});
}

PrimitiveObservable PrimitiveObservable::unit(const Model& m) {
  return PrimitiveObservable(m, {{1.0, Event::one(m)}});
}

PrimitiveObservable indicator(const Event& e) {
  return PrimitiveObservable(e.model(), {{1.0, e}, {0.0, complement(e)}});
}

Event evaluate_spectral(const PrimitiveObservable& x, const BorelSet& b) {
  Event out = Event::zero(x.model());
  for (const SpectrumEntry& entry : x.spectrum()) {
    if (b.contains(entry.value)) out = ortho_sum(out, entry.event);
  }
  return out;
}

double norm(const PrimitiveObservable& x) {
  double r = 0.0;
  for (const SpectrumEntry& entry : x.spectrum()) r = std::max(r, std::abs(entry.value));
  return r;
}

Distribution distribution(const State& mu, const PrimitiveObservable& x) {
  require_same_model(mu.model(), x.model(), "distribution");
  Distribution d;
  for (const SpectrumEntry& entry : x.spectrum()) {
    d.points.emplace_back(entry.value, evaluate(mu, entry.event));
  }
  return d;
}

double expectation(const State& mu, const PrimitiveObservable& x) {
  require_same_model(mu.model(), x.model(), "expectation");
  double acc = 0.0;
  for (const SpectrumEntry& entry : x.spectrum()) {
    acc += entry.value * evaluate(mu, entry.event);
  }
  return acc;
}

PrimitiveObservable functional_calculus(const PrimitiveObservable& x,
                                        const std::function<double(double)>& f) {
  std::vector<SpectrumEntry> raw;
  raw.reserve(x.spectrum().size());
  for (const SpectrumEntry& entry : x.spectrum()) {
    raw.push_back({f(entry.value), entry.event});
  }
  return PrimitiveObservable(x.model(), std::move(raw), value_merge_eps(norm(x)));
}

PrimitiveObservable scale(double s, const PrimitiveObservable& x) {
  return functional_calculus(x, [s](double t) { return s * t; });
}

// Operator realization ----------------------------------------------------

linalg::Matrix to_operator(const PrimitiveObservable& x) {
  if (!x.model().is_quantum()) throw model_mismatch("to_operator requires the quantum model");
  linalg::Matrix a = linalg::Matrix::Zero(x.model().size(), x.model().size());
  for (const SpectrumEntry& entry : x.spectrum()) a += entry.value * entry.event.matrix();
  return a;
}

std::vector<double> to_values(const PrimitiveObservable& x) {
  if (!x.model().is_classical()) throw model_mismatch("to_values requires the classical model");
  std::vector<double> v(x.model().size(), 0.0);
  for (const SpectrumEntry& entry : x.spectrum()) {
    for (int i = 0; i < x.model().size(); ++i) {
      if (entry.event.mask() & (1ULL << i)) v[i] = entry.value;
    }
  }
  return v;
}

PrimitiveObservable from_operator(const Model& m, const linalg::Matrix& a,
                                  std::optional<double> cluster_eps) {
  if (!m.is_quantum()) throw model_mismatch("from_operator requires the quantum model");
  const auto es = linalg::eigh(a);
  const double scale = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  const double eps = cluster_eps.value_or(default_cluster_eps(scale));
  std::vector<SpectrumEntry> raw;
  for (const auto& cluster : linalg::cluster_spectrum(es, eps)) {
    raw.push_back({cluster.value, Event::quantum(m, cluster.projector)});
  }
  return PrimitiveObservable(m, std::move(raw));
}

PrimitiveObservable from_values(const Model& m, std::span<const double> values) {
  if (!m.is_classical()) throw model_mismatch("from_values requires the classical model");
  if (static_cast<int>(values.size()) != m.size()) {
    throw invariant_violation("value function length does not match the sample space");
  }
  std::vector<SpectrumEntry> raw;
  for (int i = 0; i < m.size(); ++i) {
    auto it = std::find_if(raw.begin(), raw.end(),
                           [&](const SpectrumEntry& e) { return e.value == values[i]; });
    if (it == raw.end()) {
      raw.push_back({values[i], Event::classical_mask(m, 1ULL << i)});
    } else {
      it->event = Event::classical_mask(m, it->event.mask() | (1ULL << i));
    }
  }
  return PrimitiveObservable(m, std::move(raw));
}

double observable_distance(const PrimitiveObservable& x, const PrimitiveObservable& y) {
  require_same_model(x.model(), y.model(), "observable_distance");
  if (x.model().is_classical()) {
    const auto vx = to_values(x);
    const auto vy = to_values(y);
    double d = 0.0;
    for (int i = 0; i < x.model().size(); ++i) d = std::max(d, std::abs(vx[i] - vy[i]));
    return d;
  }
  return linalg::spectral_norm(to_operator(x) - to_operator(y));
}

PrimitiveObservable add(const PrimitiveObservable& x, const PrimitiveObservable& y) {
  require_same_model(x.model(), y.model(), "add");
  if (x.model().is_classical()) {
    auto vx = to_values(x);
    const auto vy = to_values(y);
    for (std::size_t i = 0; i < vx.size(); ++i) vx[i] += vy[i];
    return from_values(x.model(), vx);
  }
  const double eps = std::max(1e-7, 1e-9 * (norm(x) + norm(y)));
  return from_operator(x.model(), to_operator(x) + to_operator(y), eps);
}

PrimitiveObservable step_approximate(const PrimitiveObservable& x, int n) {
  if (n < 1) throw error("step_approximate requires n >= 1");
  const double r = norm(x);
  if (r == 0.0) return x;
  // Nearest point of the grid {r*k/n}. The grids nest as n doubles, which
  // makes the error non-increasing along n, 2n, 4n, ...
  return functional_calculus(x, [r, n](double s) {
    const double q = r * std::round(n * s / r) / n;
    return std::clamp(q, -r, r);
  });
}

std::vector<ConvexTerm> convex_decompose(const PrimitiveObservable& x) {
  const double r = norm(x);
  if (r > 1.0 + 1e-12) throw norm_exceeds_one("convex_decompose requires norm(X) <= 1");
  const Model& m = x.model();
  const Event zero_event = Event::zero(m);

  std::vector<double> layers;  // distinct absolute values, ascending
  for (const SpectrumEntry& entry : x.spectrum()) {
    const double a = std::abs(entry.value);
    if (a > 0.0) layers.push_back(a);
  }
  std::sort(layers.begin(), layers.end());
  layers.erase(std::unique(layers.begin(), layers.end()), layers.end());

  std::vector<ConvexTerm> terms;
  double previous = 0.0;
  for (double a : layers) {
    Event pos = zero_event;
    Event neg = zero_event;
    for (const SpectrumEntry& entry : x.spectrum()) {
      if (entry.value >= a) pos = ortho_sum(pos, entry.event);
      if (entry.value <= -a) neg = ortho_sum(neg, entry.event);
    }
    terms.push_back({a - previous, pos, neg});
    previous = a;
  }
  if (terms.empty() || previous < 1.0) {
    terms.push_back({1.0 - previous, zero_event, zero_event});
  }
  return terms;
}

}  // namespace ucp
