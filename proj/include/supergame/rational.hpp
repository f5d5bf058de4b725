#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace supergame {

// Exact rational arithmetic on 64-bit numerator/denominator. Every value is
// stored in lowest terms with a positive denominator, so equality is plain
// field comparison. Intermediates are widened to 128 bits; a reduced result
// that no longer fits in 64 bits throws std::overflow_error instead of
// silently wrapping. Strict order comparisons are what drive the solver, so
// there is no floating-point anywhere on this path.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    *this = make(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  using i128 = __int128;

  static Rational make(i128 num, i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("Rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

inline std::string to_string(const Rational& r) {
  std::string s = std::to_string(r.num());
  if (r.den() != 1) s += "/" + std::to_string(r.den());
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << to_string(r);
}

// Accepts "p/q", plain integers ("-3"), and decimal strings ("1.5", "-0.25").
// Decimal text converts exactly: "1.5" becomes 3/2, never a rounded double.
inline Rational parse_rational(const std::string& text) {
  using i128 = __int128;
  const char* p = text.c_str();
  const char* end = p + text.size();
  auto fail = [&text]() -> Rational {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  };

  bool negative = false;
  if (p < end && (*p == '+' || *p == '-')) {
    negative = (*p == '-');
    ++p;
  }
  if (p == end) return fail();

  auto read_digits = [&](i128& out) -> int {
    int count = 0;
    while (p < end && *p >= '0' && *p <= '9') {
      out = out * 10 + (*p - '0');
      if (out > i128(INT64_MAX) * 1000000) throw std::overflow_error("rational literal too large: '" + std::string(p) + "'");
      ++p;
      ++count;
    }
    return count;
  };

  i128 integral = 0;
  int int_digits = read_digits(integral);

  if (p < end && *p == '/') {
    ++p;
    if (int_digits == 0) return fail();
    i128 denom = 0;
    if (read_digits(denom) == 0 || p != end) return fail();
    if (denom == 0) throw std::domain_error("Rational: zero denominator");
    if (integral > INT64_MAX || denom > INT64_MAX)
      throw std::overflow_error("rational literal too large: '" + text + "'");
    Rational r(static_cast<std::int64_t>(integral), static_cast<std::int64_t>(denom));
    return negative ? -r : r;
  }

  i128 scale = 1;
  i128 frac = 0;
  int frac_digits = 0;
  if (p < end && *p == '.') {
    ++p;
    frac_digits = read_digits(frac);
    for (int i = 0; i < frac_digits && scale <= i128(INT64_MAX); ++i) scale *= 10;
  }
  if (p != end || (int_digits == 0 && frac_digits == 0)) return fail();

  i128 num = integral * scale + frac;
  if (num > INT64_MAX || scale > INT64_MAX)
    throw std::overflow_error("rational literal too large: '" + text + "'");
  Rational r(static_cast<std::int64_t>(num), static_cast<std::int64_t>(scale));
  return negative ? -r : r;
}

}  // namespace supergame
