#pragma once

#include <cstdint>
#include <random>

namespace spherebounds {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so every
/// conversion to a real or integer value is done here with explicit formulas.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Derive an independent stream from (seed, stream) via SplitMix64.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n), rejection-sampled so it is unbiased.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller (one value per call, cached pair).
  double normal();
  /// Unit-rate exponential.
  double exponential();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace spherebounds
