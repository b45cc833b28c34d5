#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace calib {

// Exact rational with int64 numerator/denominator, always normalized:
// gcd(|num|, den) == 1 and den > 0. Intermediates run through 128-bit
// arithmetic; results that do not reduce back into int64 throw
// std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  bool is_zero() const { return num_ == 0; }

  // Largest integer <= value.
  std::int64_t floor() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws std::domain_error on /0
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

  // Fixed-point decimal rendering ("54.4000"), round half to even at `places`.
  std::string to_decimal(int places = 4) const;
  // "num/den" form, mainly for test diagnostics.
  std::string to_fraction() const;

  // Parses "[+-]digits[.digits]" exactly (e.g. "0.1" -> 1/10).
  static Rational from_decimal(const std::string& text);
  // Exact value of the IEEE double (binary expansion), not a nearby decimal.
  static Rational from_double(double value);

 private:
  static Rational normalized(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace calib
