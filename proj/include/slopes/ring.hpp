#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "slopes/errors.hpp"
#include "slopes/rational.hpp"

namespace slopes {

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Canonical representative of a mod m in [0, m).
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

/// Inverse of a modulo m, or -1 when gcd(a, m) != 1.
inline i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, r = mod(a, m);
  while (r != 0) {
    i64 q = g / r;
    i64 t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) return -1;
  return mod(x, m);
}

/// ell-adic valuation of a nonzero integer; -1 for zero (stands for +infinity).
inline int valuation(i64 a, i64 ell) {
  if (a == 0) return -1;
  int v = 0;
  while (a % ell == 0) {
    a /= ell;
    ++v;
  }
  return v;
}

/// The coefficient domains used across the library.
class ModulusRing {
 public:
  enum class Kind { prime_field, prime_power, integers, rationals };

  static ModulusRing prime_field(i64 ell) { return ModulusRing(Kind::prime_field, ell, 1); }
  static ModulusRing prime_power(i64 ell, int m) { return ModulusRing(Kind::prime_power, ell, m); }
  static ModulusRing integers() { return ModulusRing(Kind::integers, 0, 0); }
  static ModulusRing rationals() { return ModulusRing(Kind::rationals, 0, 0); }

  Kind kind() const { return kind_; }
  i64 ell() const { return ell_; }
  int exponent() const { return m_; }
  /// ell^m for the finite kinds.
  i64 modulus() const { return modulus_; }
  bool is_field() const {
    return kind_ == Kind::prime_field || kind_ == Kind::rationals || (kind_ == Kind::prime_power && m_ == 1);
  }
  bool is_finite() const { return kind_ == Kind::prime_field || kind_ == Kind::prime_power; }

  std::string str() const {
    switch (kind_) {
      case Kind::prime_field: return "F_" + std::to_string(ell_);
      case Kind::prime_power: return "Z/" + std::to_string(ell_) + "^" + std::to_string(m_);
      case Kind::integers: return "Z";
      case Kind::rationals: return "Q";
    }
    return "?";
  }

  friend bool operator==(const ModulusRing&, const ModulusRing&) = default;

 private:
  ModulusRing(Kind kind, i64 ell, int m) : kind_(kind), ell_(ell), m_(m) {
    if (kind == Kind::prime_field || kind == Kind::prime_power) {
      if (!is_prime(ell)) throw InputError("ell = " + std::to_string(ell) + " is not prime");
      if (m < 1) throw InputError("modulus exponent must be >= 1");
      modulus_ = checked::pow(ell, m);
    }
  }

  Kind kind_;
  i64 ell_;
  int m_;
  i64 modulus_ = 0;
};

/// Finite field F_p or F_{p^2}; elements are integer codes a + b*p in [0, q).
///
/// The quadratic extension is F_p[x]/(x^2 - c1 x - c0) with the least
/// non-square c0 for odd p and x^2 = x + 1 for p = 2.
class Field {
 public:
  using value_type = i64;

  static Field prime(i64 p) {
    if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    return Field(p, 1, 0, 0);
  }

  static Field quadratic(i64 p) {
    if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    if (p == 2) return Field(2, 2, 1, 1);
    for (i64 c = 2; c < p; ++c) {
      bool square = false;
      for (i64 y = 1; y < p && !square; ++y) square = mulmod(y, y, p) == c;
      if (!square) return Field(p, 2, c, 0);
    }
    throw DomainError("no quadratic non-residue found");
  }

  i64 characteristic() const { return p_; }
  int degree() const { return degree_; }
  i64 size() const { return q_; }
  bool is_prime_field() const { return degree_ == 1; }
  /// The degree-1 field underneath.
  Field base() const { return prime(p_); }
  Field extension() const { return quadratic(p_); }

  i64 zero() const { return 0; }
  i64 one() const { return 1; }
  bool is_zero(i64 a) const { return a == 0; }
  /// Image of an integer in the prime subfield.
  i64 from_integer(i64 a) const { return mod(a, p_); }
  /// Canonical code of an input entry: integers for the prime field, codes in [0, q)
  /// or negative integers (read in the prime subfield) for the extension.
  i64 normalize(i64 x) const {
    if (degree_ == 1 || x < 0) return mod(x, p_);
    if (x >= q_) throw InputError("entry " + std::to_string(x) + " is not an element code of " + str());
    return x;
  }
  /// The element x generating the extension (degree 2 only).
  i64 generator() const { return degree_ == 2 ? p_ : 0; }
  i64 make(i64 a, i64 b) const { return mod(a, p_) + (degree_ == 2 ? mod(b, p_) * p_ : 0); }

  i64 add(i64 a, i64 b) const {
    if (degree_ == 1) {
      i64 r = a + b;
      return r >= p_ ? r - p_ : r;
    }
    return make(a % p_ + b % p_, a / p_ + b / p_);
  }
  i64 neg(i64 a) const {
    if (degree_ == 1) return a == 0 ? 0 : p_ - a;
    return make(-(a % p_), -(a / p_));
  }
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 mul(i64 a, i64 b) const {
    if (degree_ == 1) return a * b % p_;
    i64 a0 = a % p_, a1 = a / p_, b0 = b % p_, b1 = b / p_;
    i64 hi = a1 * b1 % p_;
    return make(a0 * b0 + hi * c0_, a0 * b1 + a1 * b0 + hi * c1_);
  }
  i64 inv(i64 a) const {
    if (a == 0) throw DomainError("inverse of zero in " + str());
    if (degree_ == 1) return invmod(a, p_);
    // a^(q-2)
    i64 result = 1, base = a, e = q_ - 2;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  std::string str() const { return degree_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^2"; }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_ && a.degree_ == b.degree_; }

 private:
  Field(i64 p, int degree, i64 c0, i64 c1) : p_(p), degree_(degree), q_(degree == 1 ? p : p * p), c0_(c0), c1_(c1) {}

  i64 p_;
  int degree_;
  i64 q_;
  i64 c0_;
  i64 c1_;
};

/// Field operations on Rational, with the same interface as Field.
struct RationalField {
  using value_type = Rational;
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  bool is_zero(const Rational& a) const { return a.is_zero(); }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational inv(const Rational& a) const { return a.inverse(); }
};

/// The finite field attached to a ModulusRing; DomainError if the ring is not a finite field.
inline Field field_of(const ModulusRing& ring) {
  if (!ring.is_field() || !ring.is_finite()) throw DomainError(ring.str() + " is not a finite field");
  return Field::prime(ring.ell());
}

/// Arithmetic in Z/ell^m.
class ResidueRing {
 public:
  ResidueRing(i64 ell, int m) : ell_(ell), m_(m), modulus_(checked::pow(ell, m)) {
    if (!is_prime(ell)) throw InputError("ell = " + std::to_string(ell) + " is not prime");
    if (m < 1) throw InputError("modulus exponent must be >= 1");
  }
  explicit ResidueRing(const ModulusRing& ring) : ResidueRing(ring.ell(), ring.exponent()) {
    if (!ring.is_finite()) throw DomainError(ring.str() + " is not a residue ring");
  }

  i64 ell() const { return ell_; }
  int exponent() const { return m_; }
  i64 modulus() const { return modulus_; }

  i64 reduce(i64 a) const { return mod(a, modulus_); }
  i64 add(i64 a, i64 b) const { return mod(a + b, modulus_); }
  i64 sub(i64 a, i64 b) const { return mod(a - b, modulus_); }
  i64 mul(i64 a, i64 b) const { return mulmod(a, b, modulus_); }
  bool is_unit(i64 a) const { return mod(a, ell_) != 0; }
  i64 inv(i64 a) const {
    i64 r = invmod(a, modulus_);
    if (r < 0) throw DomainError("non-unit " + std::to_string(a) + " in Z/" + std::to_string(modulus_));
    return r;
  }
  /// Valuation of a residue, capped at m (so zero has valuation m).
  int valuation(i64 a) const {
    a = reduce(a);
    if (a == 0) return m_;
    return slopes::valuation(a, ell_);
  }

 private:
  i64 ell_;
  int m_;
  i64 modulus_;
};

}  // namespace slopes
