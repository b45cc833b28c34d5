#include "calibmetrics/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace calib {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational out of 64-bit range");
  }
  return static_cast<std::int64_t>(x);
}

}  // namespace

Rational Rational::normalized(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  u128 g = gcd128(uabs(num), static_cast<u128>(den));
  num /= static_cast<i128>(g);
  den /= static_cast<i128>(g);
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = normalized(num, den);
}

std::int64_t Rational::floor() const {
  if (num_ >= 0) return num_ / den_;
  return -((-num_ + den_ - 1) / den_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return normalized(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                    static_cast<i128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return normalized(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return normalized(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  i128 lhs = static_cast<i128>(num_) * o.den_;
  i128 rhs = static_cast<i128>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_decimal(int places) const {
  if (places < 0 || places > 18) throw std::domain_error("unsupported decimal places");
  u128 pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;

  u128 scaled = uabs(static_cast<i128>(num_)) * pow10;
  u128 den = static_cast<u128>(den_);
  u128 q = scaled / den;
  u128 r = scaled % den;
  // round half to even on the last kept digit
  if (2 * r > den || (2 * r == den && (q & 1) != 0)) ++q;

  u128 whole = q / pow10;
  u128 frac = q % pow10;

  auto digits = [](u128 v) {
    if (v == 0) return std::string("0");
    std::string s;
    while (v != 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  };

  std::string out;
  if (num_ < 0 && q != 0) out += '-';
  out += digits(whole);
  if (places > 0) {
    std::string f = digits(frac);
    out += '.';
    out += std::string(static_cast<std::size_t>(places) - f.size(), '0');
    out += f;
  }
  return out;
}

std::string Rational::to_fraction() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::from_decimal(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  i128 num = 0;
  i128 den = 1;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed decimal: " + text);
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed decimal: " + text);
    }
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
    any_digit = true;
    if (den > static_cast<i128>(1) << 100) throw std::overflow_error("decimal too long: " + text);
  }
  if (!any_digit) throw std::invalid_argument("malformed decimal: " + text);
  return normalized(negative ? -num : num, den);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value");
  int exp = 0;
  double mant = std::frexp(value, &exp);  // value = mant * 2^exp, |mant| in [0.5, 1)
  // 53 mantissa bits make the scaled value an exact integer
  i128 num = static_cast<i128>(std::ldexp(mant, 53));
  exp -= 53;
  i128 den = 1;
  while (exp > 0) {
    num *= 2;
    --exp;
  }
  while (exp < 0) {
    den *= 2;
    ++exp;
    if (den > (static_cast<i128>(1) << 126) / 2) throw std::overflow_error("double exponent out of range");
  }
  return normalized(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_decimal(4);
}

}  // namespace calib
