#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/rational.hpp"
#include "slopes/ring.hpp"

namespace slopes {

/// Sparse multivariate polynomial with int64 coefficients; terms kept in a sorted map.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(std::size_t nvars = 0) : n_(nvars) {}

  static Polynomial constant(std::size_t nvars, i64 c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw InputError("variable index out of range");
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
  }

  std::size_t nvars() const { return n_; }
  const std::map<Exponents, i64>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, i64 c) {
    if (e.size() != n_) throw InputError("exponent vector has length " + std::to_string(e.size()) + ", expected " + std::to_string(n_));
    for (int x : e)
      if (x < 0) throw InputError("negative exponent");
    if (c == 0) return;
    i64 v = checked::add(terms_[e], c);
    if (v == 0)
      terms_.erase(e);
    else
      terms_[e] = v;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * -1; }
  friend Polynomial operator*(const Polynomial& a, i64 s) {
    Polynomial r(a.n_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, checked::mul(c, s));
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, checked::mul(ca, cb));
      }
    return r;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int k) const {
    Polynomial r = constant(n_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Value modulo M of the polynomial at x (entries are reduced first).
  i64 eval_mod(std::span<const i64> x, i64 M) const {
    i64 s = 0;
    for (const auto& [e, c] : terms_) {
      i64 t = mod(c, M);
      for (std::size_t i = 0; i < n_ && t != 0; ++i)
        for (int k = 0; k < e[i]; ++k) t = mulmod(t, x[i], M);
      s = mod(s + t, M);
    }
    return s;
  }

  /// Exact integer value, overflow-checked.
  i64 eval_exact(std::span<const i64> x) const {
    i64 s = 0;
    for (const auto& [e, c] : terms_) {
      i64 t = c;
      for (std::size_t i = 0; i < n_; ++i) t = checked::mul(t, checked::pow(x[i], e[i]));
      s = checked::add(s, t);
    }
    return s;
  }

  Polynomial derivative(std::size_t var) const {
    Polynomial r(n_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      --d[var];
      r.add_term(d, checked::mul(c, e[var]));
    }
    return r;
  }

  /// Same polynomial in a ring with more variables (new ones appended).
  Polynomial extended(std::size_t nvars) const {
    if (nvars < n_) throw InputError("cannot shrink the variable set");
    Polynomial r(nvars);
    for (const auto& [e, c] : terms_) {
      Exponents d = e;
      d.resize(nvars, 0);
      r.add_term(d, c);
    }
    return r;
  }

  /// Human-readable form using x1..xn.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      i64 a = c < 0 ? -c : c;
      std::string term = mono.empty() ? std::to_string(a) : (a == 1 ? mono : std::to_string(a) + "*" + mono);
      if (s.empty())
        s = (c < 0 ? "-" : "") + term;
      else
        s += (c < 0 ? " - " : " + ") + term;
    }
    return s;
  }

 private:
  void check_same(const Polynomial& o) const {
    if (n_ != o.n_) throw InputError("polynomials in different numbers of variables");
  }

  std::size_t n_;
  std::map<Exponents, i64> terms_;
};

}  // namespace slopes
