#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace ucp {

/// Deterministic random stream (splitmix64 core, hand-rolled distributions).
///
/// Every consumer derives its own stream from (seed, tag, index), so trials
/// are order-independent: running them serially, in parallel, or in isolation
/// produces identical draws. Standard-library distributions are avoided on
/// purpose; their output is implementation-defined and would break report
/// reproducibility across toolchains.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static RngStream derive(std::uint64_t seed, std::string_view tag, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform in [0,1) with 53 random bits.
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);
  /// Standard normal (Box-Muller, pair cached).
  double gaussian();
  /// Complex standard normal: (g1 + i*g2)/sqrt(2).
  std::complex<double> complex_gaussian();

  std::uint64_t seed_value() const { return state_; }

private:
  std::uint64_t state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

/// 64-bit FNV-1a, used to fold check ids into stream seeds.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace ucp
