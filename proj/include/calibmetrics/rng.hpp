#pragma once

#include <cstdint>

#include "calibmetrics/rational.hpp"

namespace calib {

// SplitMix64 (Steele, Lea & Flood's mix of Stafford's variant 13). Chosen as
// the corpus generator because the algorithm is a dozen lines, fully
// specified, and produces identical streams on every platform and toolchain.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Plain modulo: the tiny bias is irrelevant next to
  // the portability of a fixed reduction rule.
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

  // Uniform integer in [low, high], inclusive.
  std::int64_t uniform(std::int64_t low, std::int64_t high) {
    return low + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(high - low) + 1));
  }

  // True with probability p (exact rational compare; consumes no draw when
  // p == 0 or p == 1).
  bool bernoulli(const Rational& p);

  // Failures before the first success: P(k) = (1-p)^k * p, k = 0, 1, ...
  std::int64_t geometric(const Rational& p);

 private:
  std::uint64_t state_;
};

}  // namespace calib
