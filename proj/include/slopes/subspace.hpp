#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/matrix.hpp"
#include "slopes/ring.hpp"

namespace slopes {

/// Default cap on enumerated items (subspaces, group elements, scan points).
inline constexpr i64 kDefaultCap = 10'000'000;

/// Subspace W of F^n held by its reduced row-echelon basis (unique per subspace).
class Subspace {
 public:
  Subspace(Field field, std::size_t ambient_dim)
      : field_(field), n_(ambient_dim), basis_(0, ambient_dim, 0) {}

  /// The span of the rows of `generators`.
  static Subspace span(Field field, const IntMatrix& generators) {
    Subspace s(field, generators.cols());
    IntMatrix m = generators;
    for (auto& x : m.data()) x = field.normalize(x);
    auto r = rref(m, field);
    s.basis_ = std::move(r.reduced);
    s.pivots_ = std::move(r.pivots);
    return s;
  }
  static Subspace span(Field field, std::size_t n, const std::vector<std::vector<i64>>& vectors) {
    IntMatrix m(0, n, 0);
    for (const auto& v : vectors) m.append_row(v);
    return span(field, m);
  }
  static Subspace full(Field field, std::size_t n) { return span(field, IntMatrix::identity(n)); }
  /// Trusts that `reduced` is already in reduced row-echelon form without zero rows.
  static Subspace from_rref(Field field, IntMatrix reduced, std::vector<std::size_t> pivots) {
    Subspace s(field, reduced.cols());
    s.basis_ = std::move(reduced);
    s.pivots_ = std::move(pivots);
    return s;
  }

  const Field& field() const { return field_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return basis_.rows() == 0; }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(std::span<const i64> v) const {
    std::vector<i64> w(v.begin(), v.end());
    for (auto& x : w) x = field_.normalize(x);
    auto r = reduce_against(std::move(w), basis_, pivots_, field_);
    return std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; });
  }
  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis().row(i))) return false;
    return true;
  }

  /// Coordinates of a vector of W in the RREF basis: its entries at the pivot columns.
  std::vector<i64> coordinates(std::span<const i64> v) const {
    std::vector<i64> c;
    for (auto p : pivots_) c.push_back(field_.normalize(v[p]));
    return c;
  }

  Subspace operator+(const Subspace& o) const {
    check_compatible(o);
    IntMatrix m = basis_;
    for (std::size_t i = 0; i < o.dim(); ++i) m.append_row(o.basis().row(i));
    if (m.rows() == 0) return Subspace(field_, n_);
    return span(field_, m);
  }

  Subspace intersect(const Subspace& o) const {
    check_compatible(o);
    if (is_zero() || o.is_zero()) return Subspace(field_, n_);
    // (a, b) with a*W + b*W' = 0; intersection spanned by a*W.
    IntMatrix stacked = basis_;
    for (std::size_t i = 0; i < o.dim(); ++i) stacked.append_row(o.basis().row(i));
    auto left_kernel = rref(stacked.transposed(), field_).kernel;
    IntMatrix gens(0, n_, 0);
    for (std::size_t k = 0; k < left_kernel.rows(); ++k) {
      std::vector<i64> v(n_, 0);
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < n_; ++j) v[j] = field_.add(v[j], field_.mul(left_kernel(k, i), basis_(i, j)));
      gens.append_row(v);
    }
    if (gens.rows() == 0) return Subspace(field_, n_);
    return span(field_, gens);
  }

  /// The same basis viewed over a field containing this one (codes of the prime field embed unchanged).
  Subspace extend_to(const Field& bigger) const {
    if (bigger.characteristic() != field_.characteristic() || bigger.degree() < field_.degree())
      throw DomainError("cannot extend " + field_.str() + " to " + bigger.str());
    return from_rref(bigger, basis_, pivots_);
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < dim(); ++i) {
      s += i ? ",(" : "(";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string(basis_(i, j));
      s += ")";
    }
    return s + "]";
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  /// Dimension first, then row-major lexicographic order of the RREF basis.
  friend bool canonical_less(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis_.data() < b.basis_.data();
  }

 private:
  void check_compatible(const Subspace& o) const {
    if (!(field_ == o.field_) || n_ != o.n_) throw InputError("subspaces live in different ambient spaces");
  }

  Field field_;
  std::size_t n_;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Gaussian binomial [n choose d]_q, overflow-checked.
inline i64 gaussian_binomial(int n, int d, i64 q) {
  if (d < 0 || d > n) return 0;
  // product formula evaluated in __int128 then divided exactly
  __int128 num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    __int128 a = 1, b = 1;
    for (int k = 0; k < n - i; ++k) a *= q;
    for (int k = 0; k < i + 1; ++k) b *= q;
    num *= (a - 1);
    den *= (b - 1);
    __int128 g = num, h = den;
    while (h != 0) {
      __int128 t = g % h;
      g = h;
      h = t;
    }
    num /= g;
    den /= g;
    if (num > static_cast<__int128>(INT64_MAX)) throw ArithmeticOverflow("Gaussian binomial overflow");
  }
  return static_cast<i64>(num / den);
}

/// One block of the Grassmannian: the Schubert cell of a fixed pivot set.
struct PivotBlock {
  std::vector<std::size_t> pivots;
  std::vector<std::pair<std::size_t, std::size_t>> free_positions;  ///< (row, col) of free entries
  i64 size = 1;                                                     ///< q^{#free}
};

/// All pivot sets of d-subsets of {0..n-1}, in lexicographic order, with their free entries.
inline std::vector<PivotBlock> pivot_blocks(std::size_t n, std::size_t d, i64 q) {
  std::vector<PivotBlock> blocks;
  std::vector<std::size_t> comb(d);
  for (std::size_t i = 0; i < d; ++i) comb[i] = i;
  while (true) {
    PivotBlock b;
    b.pivots = comb;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = comb[r] + 1; c < n; ++c)
        if (std::find(comb.begin(), comb.end(), c) == comb.end()) b.free_positions.emplace_back(r, c);
    b.size = checked::pow(q, static_cast<int>(b.free_positions.size()));
    blocks.push_back(std::move(b));
    if (d == 0) break;
    std::size_t i = d;
    while (i > 0 && comb[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < d; ++j) comb[j] = comb[j - 1] + 1;
  }
  return blocks;
}

/// The index-th subspace of a pivot block (free entries in odometer order, last position fastest).
inline Subspace block_subspace(const Field& f, std::size_t n, const PivotBlock& block, i64 index) {
  const std::size_t d = block.pivots.size();
  IntMatrix m(d, n, 0);
  for (std::size_t r = 0; r < d; ++r) m(r, block.pivots[r]) = 1;
  for (std::size_t k = block.free_positions.size(); k-- > 0;) {
    auto [r, c] = block.free_positions[k];
    m(r, c) = index % f.size();
    index /= f.size();
  }
  return Subspace::from_rref(f, std::move(m), block.pivots);
}

/// Calls `visit` on every d-dimensional subspace of F^n exactly once.
/// Throws EnumerationTooLarge if the Gaussian binomial exceeds `cap`.
inline void enumerate_subspaces(const Field& f, std::size_t n, std::size_t d, const std::function<void(const Subspace&)>& visit,
                                i64 cap = kDefaultCap) {
  if (d > n) throw InputError("subspace dimension exceeds ambient dimension");
  i64 total = gaussian_binomial(static_cast<int>(n), static_cast<int>(d), f.size());
  if (total > cap)
    throw EnumerationTooLarge("Grassmannian Gr(" + std::to_string(d) + "," + std::to_string(n) + ") over " + f.str() +
                              " has " + std::to_string(total) + " points, cap is " + std::to_string(cap));
  for (const auto& block : pivot_blocks(n, d, f.size()))
    for (i64 i = 0; i < block.size; ++i) visit(block_subspace(f, n, block, i));
}

inline std::vector<Subspace> all_subspaces(const Field& f, std::size_t n, std::size_t d, i64 cap = kDefaultCap) {
  std::vector<Subspace> out;
  enumerate_subspaces(f, n, d, [&](const Subspace& s) { out.push_back(s); }, cap);
  return out;
}

/// Number of nonzero subspaces of F^n, overflow-checked.
inline i64 count_nonzero_subspaces(std::size_t n, i64 q) {
  i64 total = 0;
  for (std::size_t d = 1; d <= n; ++d) total = checked::add(total, gaussian_binomial(static_cast<int>(n), static_cast<int>(d), q));
  return total;
}

/// A saturated free submodule of (Z/ell^m)^n: the quotient is free of rank n - d.
class SaturatedSubmodule {
 public:
  SaturatedSubmodule(const ResidueRing& ring, IntMatrix basis) : ring_(ring), basis_(std::move(basis)) {
    for (auto& x : basis_.data()) x = ring_.reduce(x);
    if (basis_.rows() > 0) {
      auto snf = smith_normal_form(basis_, ring_);
      for (auto d : snf.divisors)
        if (d != 1) throw InputError("basis does not span a saturated free submodule");
    }
  }
  /// Lift of a subspace of F_ell^n through its canonical RREF basis.
  static SaturatedSubmodule lift(const ResidueRing& ring, const Subspace& w) {
    if (w.field().degree() != 1 || w.field().characteristic() != ring.ell())
      throw InputError("subspace does not live over F_ell");
    IntMatrix b = w.basis();
    if (b.rows() == 0) b = IntMatrix(0, w.ambient_dim(), 0);
    return SaturatedSubmodule(ring, b);
  }

  const ResidueRing& ring() const { return ring_; }
  std::size_t rank() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

 private:
  ResidueRing ring_;
  IntMatrix basis_;
};

/// A subgroup H of (Z/ell^m)^n written as the direct sum of <ell^{m - m_i} e_i>.
struct SnfSubgroup {
  i64 ell = 0;
  int m = 0;
  IntMatrix adapted_basis;       ///< rows e_1..e_n, invertible modulo ell^m
  std::vector<int> exponents;    ///< m >= m_1 >= ... >= m_r >= 1

  std::size_t ambient_dim() const { return adapted_basis.cols(); }
  std::size_t rank() const { return exponents.size(); }
  i64 modulus() const { return checked::pow(ell, m); }

  /// |H| = prod ell^{m_i}.
  i64 order() const {
    i64 o = 1;
    for (int e : exponents) o = checked::mul(o, checked::pow(ell, e));
    return o;
  }

  /// The cyclic generators ell^{m - m_i} e_i.
  std::vector<std::vector<i64>> generators() const {
    std::vector<std::vector<i64>> gens;
    const i64 N = modulus();
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      i64 scale = checked::pow(ell, m - exponents[i]);
      std::vector<i64> g(ambient_dim());
      for (std::size_t j = 0; j < g.size(); ++j) g[j] = mulmod(scale, adapted_basis(i, j), N);
      gens.push_back(std::move(g));
    }
    return gens;
  }

  /// Every element, in lexicographic order.
  std::vector<std::vector<i64>> elements() const {
    const i64 N = modulus();
    auto gens = generators();
    std::vector<std::vector<i64>> out{std::vector<i64>(ambient_dim(), 0)};
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<std::vector<i64>> next;
      i64 cyc = checked::pow(ell, exponents[i]);
      for (const auto& base : out)
        for (i64 k = 0; k < cyc; ++k) {
          std::vector<i64> v = base;
          for (std::size_t j = 0; j < v.size(); ++j) v[j] = mod(v[j] + mulmod(k, gens[i][j], N), N);
          next.push_back(std::move(v));
        }
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// SNF decomposition of the subgroup of (Z/ell^m)^n generated by `generators`.
inline SnfSubgroup snf_decompose(const ResidueRing& ring, std::size_t n, const std::vector<std::vector<i64>>& generators) {
  SnfSubgroup h;
  h.ell = ring.ell();
  h.m = ring.exponent();
  IntMatrix G(0, n, 0);
  for (const auto& g : generators) {
    if (g.size() != n) throw InputError("generator length does not match ambient dimension");
    std::vector<i64> r(g.begin(), g.end());
    for (auto& x : r) x = ring.reduce(x);
    G.append_row(r);
  }
  if (G.rows() == 0) {
    h.adapted_basis = IntMatrix::identity(n);
    return h;
  }
  auto snf = smith_normal_form(G, ring);
  // U G V = D, so H V = span(d_i e_i) and H = span(d_i * row_i(V^{-1})).
  h.adapted_basis = inverse_mod(snf.V, ring);
  for (auto d : snf.divisors) {
    int a = ring.valuation(d);
    if (a < ring.exponent()) h.exponents.push_back(ring.exponent() - a);
  }
  return h;
}

}  // namespace slopes
