#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <ostream>
#include <string>

#include "slopes/errors.hpp"

namespace slopes {

using i64 = std::int64_t;

namespace checked {

inline i64 add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
  return r;
}

inline i64 sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
  return r;
}

inline i64 mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
  return r;
}

inline i64 pow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = mul(r, base);
  return r;
}

}  // namespace checked

/// Exact rational number p/q with q > 0 and gcd(p, q) = 1.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i64 num) : num_(num), den_(1) {}  // NOLINT: implicit from integers
  Rational(i64 num, i64 den) : num_(num), den_(den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    normalize();
  }

  i64 num() const { return num_; }
  i64 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(checked::sub(0, num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    i64 g = std::gcd(a.den_, b.den_);
    i64 l = checked::mul(a.den_ / g, b.den_);
    return Rational(checked::add(checked::mul(a.num_, l / a.den_), checked::mul(b.num_, l / b.den_)), l);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    i64 g1 = std::gcd(a.num_, b.den_);
    i64 g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked::mul(a.num_ / g1, b.num_ / g2), checked::mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational inverse() const { return Rational(1) / *this; }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p", "p/q" or "-p/q".
  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(text));
      return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw InputError("not a rational: '" + text + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = checked::sub(0, num_);
      den_ = checked::sub(0, den_);
    }
    i64 g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  i64 num_ = 0;
  i64 den_ = 1;
};

/// A rational that may also be +infinity; slopes gamma = 1/alpha use it when alpha = 0.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational value) : value_(value) {}  // NOLINT
  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }
  /// 1/x with 1/0 = infinity.
  static ExtRational reciprocal(const Rational& x) {
    if (x.is_zero()) return infinity();
    return ExtRational(x.inverse());
  }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const {
    if (infinite_) throw InfiniteSlope("value requested from an infinite slope");
    return value_;
  }
  std::string str() const { return infinite_ ? std::string("inf") : value_.str(); }
  static ExtRational parse(const std::string& text) { return text == "inf" ? infinity() : ExtRational(Rational::parse(text)); }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  Rational value_;
  bool infinite_ = false;
};

}  // namespace slopes
