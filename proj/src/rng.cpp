#include "calibmetrics/rng.hpp"

#include <stdexcept>

namespace calib {

bool SplitMix64::bernoulli(const Rational& p) {
  if (p.is_negative() || p > Rational(1)) throw std::domain_error("probability out of [0, 1]");
  if (p.is_zero()) return false;
  if (p == Rational(1)) return true;
  // accept iff draw/2^64 < num/den, compared exactly in 128-bit
  std::uint64_t draw = next();
  auto lhs = static_cast<unsigned __int128>(draw) * static_cast<std::uint64_t>(p.den());
  auto rhs = static_cast<unsigned __int128>(static_cast<std::uint64_t>(p.num())) << 64;
  return lhs < rhs;
}

std::int64_t SplitMix64::geometric(const Rational& p) {
  if (p <= Rational(0) || p > Rational(1)) throw std::domain_error("probability out of (0, 1]");
  std::int64_t failures = 0;
  while (!bernoulli(p)) ++failures;
  return failures;
}

}  // namespace calib
