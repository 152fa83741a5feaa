#pragma once

#include <cstdint>
#include <random>

namespace mbeon {

/// Seeded generator with fixed, portable mappings. std::mt19937_64 output is
/// bit-specified by the standard; the distribution helpers below avoid
/// std::uniform_*_distribution on purpose, since those are
/// implementation-defined and would break bit-reproducibility guarantees.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [0, n). Plain modulo mapping; the bias is ~n/2^64 and
  /// determinism matters more here than perfect uniformity.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mbeon
