#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/matrix.hpp"
#include "slopes/parallel.hpp"
#include "slopes/polynomial.hpp"
#include "slopes/rational.hpp"
#include "slopes/ring.hpp"

namespace slopes {

using Point = std::vector<i64>;

/// A closed subscheme of affine space over Z, optionally with unit constraints.
///
/// Each unit constraint u becomes an auxiliary variable y with y*u - 1 = 0,
/// appended after the n base variables.
class AffineSchemeMod {
 public:
  AffineSchemeMod(std::size_t n, std::vector<Polynomial> polys, std::vector<Polynomial> units = {})
      : n_(n), polys_(std::move(polys)), units_(std::move(units)) {
    for (const auto& p : polys_)
      if (p.nvars() != n_) throw InputError("polynomial has " + std::to_string(p.nvars()) + " variables, expected " + std::to_string(n_));
    for (const auto& u : units_)
      if (u.nvars() != n_) throw InputError("unit constraint has the wrong number of variables");
    const std::size_t N = num_vars();
    for (const auto& p : polys_) equations_.push_back(p.extended(N));
    for (std::size_t k = 0; k < units_.size(); ++k)
      equations_.push_back(Polynomial::variable(N, n_ + k) * units_[k].extended(N) - Polynomial::constant(N, 1));
    for (const auto& eq : equations_) {
      std::vector<Polynomial> row;
      for (std::size_t v = 0; v < N; ++v) row.push_back(eq.derivative(v));
      jacobian_.push_back(std::move(row));
    }
  }

  std::size_t base_vars() const { return n_; }
  std::size_t num_vars() const { return n_ + units_.size(); }
  const std::vector<Polynomial>& polys() const { return polys_; }
  const std::vector<Polynomial>& unit_constraints() const { return units_; }
  /// All equations in the full variable set, user polynomials first.
  const std::vector<Polynomial>& equations() const { return equations_; }

  friend bool operator==(const AffineSchemeMod& a, const AffineSchemeMod& b) {
    return a.n_ == b.n_ && a.polys_ == b.polys_ && a.units_ == b.units_;
  }

  /// The scheme cut out by additional equations in the base variables.
  AffineSchemeMod with_equations(const std::vector<Polynomial>& extra) const {
    auto p = polys_;
    p.insert(p.end(), extra.begin(), extra.end());
    return AffineSchemeMod(n_, p, units_);
  }

  bool is_point_mod(std::span<const i64> x, i64 M) const {
    if (x.size() != num_vars()) throw InputError("point has the wrong number of coordinates");
    for (const auto& eq : equations_)
      if (eq.eval_mod(x, M) != 0) return false;
    return true;
  }

  std::vector<i64> values_mod(std::span<const i64> x, i64 M) const {
    std::vector<i64> v;
    for (const auto& eq : equations_) v.push_back(eq.eval_mod(x, M));
    return v;
  }

  IntMatrix jacobian_mod(std::span<const i64> x, i64 M) const {
    IntMatrix J(equations_.size(), num_vars(), 0);
    for (std::size_t r = 0; r < equations_.size(); ++r)
      for (std::size_t c = 0; c < num_vars(); ++c) J(r, c) = jacobian_[r][c].eval_mod(x, M);
    return J;
  }

  IntMatrix jacobian_exact(std::span<const i64> x) const {
    IntMatrix J(equations_.size(), num_vars(), 0);
    for (std::size_t r = 0; r < equations_.size(); ++r)
      for (std::size_t c = 0; c < num_vars(); ++c) J(r, c) = jacobian_[r][c].eval_exact(x);
    return J;
  }

  /// Appends the auxiliary coordinates y = u^{-1} mod M; nullopt when some u is not a unit.
  std::optional<Point> complete(std::span<const i64> base, i64 ell, i64 M) const {
    if (base.size() != n_) throw InputError("base point has the wrong number of coordinates");
    Point x(base.begin(), base.end());
    for (auto& v : x) v = mod(v, M);
    for (const auto& u : units_) {
      i64 val = u.eval_mod(x, M);
      if (val % ell == 0) return std::nullopt;
      x.push_back(invmod(val, M));
    }
    return x;
  }

 private:
  std::size_t n_;
  std::vector<Polynomial> polys_;
  std::vector<Polynomial> units_;
  std::vector<Polynomial> equations_;
  std::vector<std::vector<Polynomial>> jacobian_;
};

/// Statistics of one Hensel enumeration.
struct LiftStats {
  i64 nodes = 0;
  i64 singular_nodes = 0;  ///< nodes where the Jacobian mod ell had rank below the number of equations
  i64 scanned_nodes = 0;   ///< singular nodes resolved by scanning all ell^N lifts
};

namespace detail {

/// Maximum ell^N for the per-node scan at singular nodes.
inline constexpr i64 kSingularScanLimit = 100'000;

inline bool power_at_most(i64 base, std::size_t exp, i64 limit) {
  i64 v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > limit / base) return false;
    v *= base;
  }
  return v <= limit;
}

inline void guard_count(std::size_t have, const ScanOptions& opt, const char* what) {
  if (static_cast<i64>(have) > opt.cap) throw EnumerationTooLarge(std::string(what) + " exceeds the cap of " + std::to_string(opt.cap));
}

/// All t in F_ell^N with J t = b (mod ell), given as particular solution plus kernel.
inline std::vector<std::vector<i64>> affine_solutions(const IntMatrix& J, const std::vector<i64>& b, i64 ell, const ScanOptions& opt) {
  const std::size_t N = J.cols();
  Field f = Field::prime(ell);
  IntMatrix Jm(J.rows(), N, 0), aug(J.rows(), N + 1, 0);
  for (std::size_t r = 0; r < J.rows(); ++r) {
    for (std::size_t c = 0; c < N; ++c) aug(r, c) = Jm(r, c) = mod(J(r, c), ell);
    aug(r, N) = mod(b[r], ell);
  }
  auto red = rref(aug, f);
  if (!red.pivots.empty() && red.pivots.back() == N) return {};
  std::vector<i64> part(N, 0);
  for (std::size_t i = 0; i < red.rank; ++i) part[red.pivots[i]] = red.reduced(i, N);
  IntMatrix ker = J.rows() == 0 ? IntMatrix::identity(N) : rref(Jm, f).kernel;
  i64 total = checked::pow(ell, static_cast<int>(ker.rows()));
  if (total > opt.cap) throw EnumerationTooLarge("fiber of size " + std::to_string(total) + " exceeds the cap");
  std::vector<std::vector<i64>> out;
  out.reserve(static_cast<std::size_t>(total));
  for (i64 idx = 0; idx < total; ++idx) {
    std::vector<i64> t = part;
    i64 rem = idx;
    for (std::size_t k = ker.rows(); k-- > 0;) {
      i64 c = rem % ell;
      rem /= ell;
      if (c == 0) continue;
      for (std::size_t j = 0; j < N; ++j) t[j] = (t[j] + c * ker(k, j)) % ell;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

/// Every point modulo ell^{k+1} above a point x modulo ell^k (k >= 1), sorted.
///
/// Since P(x + ell^k t) = P(x) + ell^k J(x) t mod ell^{k+1} for k >= 1, the lifts
/// solve an affine system over F_ell. At singular nodes the ell^N candidates are
/// scanned directly when that is small enough.
inline std::vector<Point> lifts(const AffineSchemeMod& S, i64 ell, int k, const Point& x, const ScanOptions& opt = {},
                                LiftStats* stats = nullptr) {
  if (k < 1) throw InputError("lifting starts at level 1");
  const i64 Mk = checked::pow(ell, k), M = checked::mul(Mk, ell);
  const std::size_t N = S.num_vars();
  Point base(x);
  for (auto& v : base) v = mod(v, Mk);
  IntMatrix J = S.jacobian_mod(base, ell);
  const std::size_t rows = S.equations().size();
  bool singular = rank(J, Field::prime(ell)) < rows;
  if (stats) {
    ++stats->nodes;
    if (singular) ++stats->singular_nodes;
  }
  std::vector<Point> out;
  if (singular && detail::power_at_most(ell, N, detail::kSingularScanLimit)) {
    if (stats) ++stats->scanned_nodes;
    const i64 total = checked::pow(ell, static_cast<int>(N));
    Point y(N);
    for (i64 idx = 0; idx < total; ++idx) {
      i64 rem = idx;
      for (std::size_t j = N; j-- > 0;) {
        y[j] = base[j] + Mk * (rem % ell);
        rem /= ell;
      }
      if (S.is_point_mod(y, M)) out.push_back(y);
    }
    return out;
  }
  auto vals = S.values_mod(base, M);
  std::vector<i64> b(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (vals[r] % Mk != 0) throw InputError("lifting from a non-point");
    b[r] = mod(-(vals[r] / Mk), ell);
  }
  for (auto& t : detail::affine_solutions(J, b, ell, opt)) {
    Point y(N);
    for (std::size_t j = 0; j < N; ++j) y[j] = base[j] + Mk * t[j];
    out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Points modulo ell by a scan of the base variables (auxiliaries are solved for), sorted.
///
/// Equations of degree at most one are solved first, so only their affine solution space is scanned.
inline std::vector<Point> level_one_points(const AffineSchemeMod& S, i64 ell, const ScanOptions& opt = {}) {
  const std::size_t n = S.base_vars();
  const Field f = Field::prime(ell);
  IntMatrix lin(0, n + 1, 0);
  for (const auto& P : S.polys()) {
    bool affine = true;
    std::vector<i64> row(n + 1, 0);
    for (const auto& [e, c] : P.terms()) {
      int deg = 0;
      for (int x : e) deg += x;
      if (deg > 1) {
        affine = false;
        break;
      }
      auto it = std::find(e.begin(), e.end(), 1);
      if (it == e.end())
        row[n] = mod(-c, ell);
      else
        row[static_cast<std::size_t>(it - e.begin())] = mod(c, ell);
    }
    if (affine) lin.append_row(row);
  }
  std::vector<i64> part(n, 0);
  IntMatrix ker = IntMatrix::identity(n);
  if (lin.rows() > 0) {
    auto red = rref(lin, f);
    if (!red.pivots.empty() && red.pivots.back() == n) return {};
    for (std::size_t i = 0; i < red.rank; ++i) part[red.pivots[i]] = red.reduced(i, n);
    IntMatrix A(lin.rows(), n, 0);
    for (std::size_t r = 0; r < lin.rows(); ++r)
      for (std::size_t c = 0; c < n; ++c) A(r, c) = lin(r, c);
    ker = rref(A, f).kernel;
  }
  if (!detail::power_at_most(ell, ker.rows(), opt.cap))
    throw EnumerationTooLarge("level-1 scan of " + std::to_string(ell) + "^" + std::to_string(ker.rows()) + " exceeds the cap");
  const i64 total = checked::pow(ell, static_cast<int>(ker.rows()));
  std::vector<Point> out;
  Point base(n, 0);
  for (i64 idx = 0; idx < total; ++idx) {
    base = part;
    i64 rem = idx;
    for (std::size_t k = ker.rows(); k-- > 0;) {
      i64 c = rem % ell;
      rem /= ell;
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) base[j] = (base[j] + c * ker(k, j)) % ell;
    }
    auto x = S.complete(base, ell, ell);
    if (x && S.is_point_mod(*x, ell)) out.push_back(std::move(*x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All points above `x` (a point modulo ell^from) at level `to`, sorted.
inline std::vector<Point> fiber_points(const AffineSchemeMod& S, i64 ell, const Point& x, int from, int to, const ScanOptions& opt = {},
                                       LiftStats* stats = nullptr) {
  if (from < 1 || to < from) throw InputError("fiber levels must satisfy 1 <= from <= to");
  const i64 Mf = checked::pow(ell, from);
  Point base(x);
  for (auto& v : base) v = mod(v, Mf);
  if (!S.is_point_mod(base, Mf)) throw InputError("base of the fiber is not a point");
  std::vector<Point> layer{base};
  for (int k = from; k < to; ++k) {
    std::vector<Point> next;
    for (const auto& p : layer) {
      auto ls = lifts(S, ell, k, p, opt, stats);
      next.insert(next.end(), std::make_move_iterator(ls.begin()), std::make_move_iterator(ls.end()));
      detail::guard_count(next.size(), opt, "fiber enumeration");
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

/// All points modulo ell^m by a Hensel tree over the level-1 points, sorted.
inline std::vector<Point> enumerate_points(const AffineSchemeMod& S, i64 ell, int m, const ScanOptions& opt = {},
                                           LiftStats* stats = nullptr) {
  if (m < 1) throw InputError("modulus exponent must be >= 1");
  if (!is_prime(ell)) throw InputError("ell = " + std::to_string(ell) + " is not prime");
  auto roots = level_one_points(S, ell, opt);
  std::vector<LiftStats> branch_stats(roots.size());
  auto branches = parallel_map<std::vector<Point>>(roots.size(), opt.resolved_workers(), [&](std::size_t i) {
    return fiber_points(S, ell, roots[i], 1, m, opt, &branch_stats[i]);
  });
  std::vector<Point> out;
  for (auto& b : branches) {
    out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    detail::guard_count(out.size(), opt, "point enumeration");
  }
  if (stats)
    for (const auto& s : branch_stats) {
      stats->nodes += s.nodes;
      stats->singular_nodes += s.singular_nodes;
      stats->scanned_nodes += s.scanned_nodes;
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Independent count by scanning (Z/ell^m)^n over the base variables.
inline i64 count_points_exhaustive(const AffineSchemeMod& S, i64 ell, int m, const ScanOptions& opt = {}) {
  const i64 M = checked::pow(ell, m);
  const std::size_t n = S.base_vars();
  i64 total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total = checked::mul(total, M);
    if (total > opt.cap) throw EnumerationTooLarge("exhaustive scan exceeds the cap");
  }
  if (n == 0) {
    auto x = S.complete(Point{}, ell, M);
    return x && S.is_point_mod(*x, M) ? 1 : 0;
  }
  auto counts = parallel_map<i64>(static_cast<std::size_t>(M), opt.resolved_workers(), [&](std::size_t first) {
    i64 c = 0;
    const i64 inner = total / M;
    Point base(n, 0);
    for (i64 idx = 0; idx < inner; ++idx) {
      i64 rem = idx;
      for (std::size_t j = n; j-- > 1;) {
        base[j] = rem % M;
        rem /= M;
      }
      base[0] = static_cast<i64>(first);
      auto x = S.complete(base, ell, M);
      if (x && S.is_point_mod(*x, M)) ++c;
    }
    return c;
  });
  i64 s = 0;
  for (auto c : counts) s += c;
  return s;
}

/// True when x (a point modulo ell^from) lifts to a point modulo ell^to.
inline bool lifts_to(const AffineSchemeMod& S, i64 ell, const Point& x, int from, int to, const ScanOptions& opt = {}) {
  if (!S.is_point_mod(x, checked::pow(ell, from))) return false;
  if (to <= from) return true;
  // full row rank mod ell: Hensel lifts x to every level
  if (from >= 1 && rank(S.jacobian_mod(x, ell), Field::prime(ell)) == S.equations().size()) return true;
  for (const auto& y : lifts(S, ell, from, x, opt))
    if (lifts_to(S, ell, y, from + 1, to, opt)) return true;
  return false;
}

/// The cotangent module at a section: Z_ell^N / (rows of the Jacobian),
/// i.e. (+)_i Z/ell^{e_i} (+) Z_ell^{free_rank}.
struct KaehlerModuleAtSection {
  i64 ell = 0;
  Point section;
  std::size_t num_vars = 0;
  std::vector<int> exponents;  ///< torsion exponents e_i > 0, decreasing
  std::size_t free_rank = 0;
  std::vector<i64> divisors;   ///< elementary divisors of the Jacobian over Z

  int max_exponent() const { return exponents.empty() ? 0 : exponents.front(); }

  /// Minimal number of generators of ell^e times the module.
  std::size_t min_generators_after_scaling(int e) const {
    std::size_t d = free_rank;
    for (int x : exponents)
      if (x > e) ++d;
    return d;
  }

  /// |Hom(module, Z/ell^k)| = prod ell^{min(e_i, k)} * ell^{free_rank k}.
  i64 hom_count(int k) const {
    i64 c = checked::pow(ell, static_cast<int>(free_rank) * k);
    for (int x : exponents) c = checked::mul(c, checked::pow(ell, std::min(x, k)));
    return c;
  }
};

/// Kahler data at an integer section, which must vanish modulo ell^precision.
inline KaehlerModuleAtSection kaehler_module(const AffineSchemeMod& S, i64 ell, const Point& section, int precision) {
  if (section.size() != S.num_vars()) throw InputError("section has the wrong number of coordinates");
  if (!S.is_point_mod(section, checked::pow(ell, precision)))
    throw InputError("section does not vanish modulo " + std::to_string(ell) + "^" + std::to_string(precision));
  KaehlerModuleAtSection k;
  k.ell = ell;
  k.section = section;
  k.num_vars = S.num_vars();
  std::size_t nonzero = 0;
  if (!S.equations().empty()) {
    auto snf = smith_normal_form(S.jacobian_exact(section));
    k.divisors = snf.divisors;
    for (auto d : snf.divisors) {
      if (d == 0) continue;
      ++nonzero;
      int v = valuation(d, ell);
      if (v > 0) k.exponents.push_back(v);
    }
  }
  std::sort(k.exponents.rbegin(), k.exponents.rend());
  k.free_rank = S.num_vars() - nonzero;
  return k;
}

/// Outcome of a counting check.
struct CountVerdict {
  i64 observed = 0;
  i64 expected = 0;  ///< exact value or upper bound, depending on the check
  bool holds = false;
  std::string detail;
};

/// |fiber of S(Z/ell^m) -> S(Z/ell^m') over the section| = |Hom(module, Z/ell^{m-m'})| for m' < m <= 2m'.
inline CountVerdict verify_kaehler_count(const AffineSchemeMod& S, i64 ell, const Point& section, int m, int m_prime,
                                         const ScanOptions& opt = {}) {
  if (!(0 < m_prime && m_prime < m && m <= 2 * m_prime))
    throw HypothesisError("Kahler count needs m' < m <= 2m', got m=" + std::to_string(m) + " m'=" + std::to_string(m_prime));
  auto K = kaehler_module(S, ell, section, m + 2);
  CountVerdict v;
  v.observed = static_cast<i64>(fiber_points(S, ell, section, m_prime, m, opt).size());
  v.expected = K.hom_count(m - m_prime);
  v.holds = v.observed == v.expected;
  return v;
}

/// Syntactic check of the implicit-function shape: A_i - X_i has all coefficients divisible by ell.
inline void check_implicit_shape(std::size_t n, std::size_t d, const std::vector<Polynomial>& A, i64 ell) {
  if (A.size() + d != n) throw InputError("need exactly n - d equations A_{d+1}..A_n");
  for (std::size_t k = 0; k < A.size(); ++k) {
    Polynomial R = A[k] - Polynomial::variable(n, d + k);
    for (const auto& [e, c] : R.terms())
      if (c % ell != 0) throw HypothesisError("A_" + std::to_string(d + k + 1) + " - X_" + std::to_string(d + k + 1) + " has a coefficient not divisible by ell");
  }
}

/// Checks that the projection to the first d coordinates is bijective on Z/ell^m-points
/// and that every fiber of the level-m' reduction has ell^{d(m-m')} elements.
inline CountVerdict verify_implicit_function(std::size_t n, std::size_t d, const std::vector<Polynomial>& A, i64 ell, int m, int m_prime,
                                             const ScanOptions& opt = {}) {
  check_implicit_shape(n, d, A, ell);
  if (!(m >= m_prime && m_prime >= 1)) throw HypothesisError("need m >= m' >= 1");
  AffineSchemeMod S(n, A);
  auto pts = enumerate_points(S, ell, m, opt);
  const i64 M = checked::pow(ell, m);
  CountVerdict v;
  v.expected = checked::pow(ell, static_cast<int>(d) * (m - m_prime));
  std::vector<Point> heads;
  for (const auto& p : pts) heads.emplace_back(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(d));
  std::sort(heads.begin(), heads.end());
  bool injective = std::adjacent_find(heads.begin(), heads.end()) == heads.end();
  bool surjective = static_cast<i64>(heads.size()) == checked::pow(M, static_cast<int>(d));
  auto low = enumerate_points(S, ell, m_prime, opt);
  bool fibers_ok = true;
  i64 worst = v.expected;
  for (const auto& q : low) {
    i64 sz = static_cast<i64>(fiber_points(S, ell, q, m_prime, m, opt).size());
    if (sz != v.expected) {
      fibers_ok = false;
      worst = sz;
    }
  }
  v.observed = fibers_ok ? v.expected : worst;
  v.holds = injective && surjective && fibers_ok;
  v.detail = std::string(injective && surjective ? "projection bijective" : "projection not bijective") + "; " +
             std::to_string(low.size()) + " fibers checked";
  return v;
}

/// Both clauses of the main counting bound at a section.
struct MainCountingVerdict {
  int e = 0;
  std::size_t d = 0;
  std::size_t n = 0;
  std::optional<CountVerdict> clause_i;   ///< m >= m' > e: fiber <= ell^{n(e+1)} ell^{d(m-m')}
  std::optional<CountVerdict> clause_ii;  ///< e = 0, 0 < m' <= m <= 2m': fiber <= ell^{d(m-m')}
  bool holds() const { return (!clause_i || clause_i->holds) && (!clause_ii || clause_ii->holds); }
};

/// `d` defaults to the minimal generator count of ell^e times the cotangent module; a supplied d
/// below that is outside the hypothesis.
inline MainCountingVerdict verify_main_counting(const AffineSchemeMod& S, i64 ell, const Point& section, int m, int m_prime, int e,
                                                std::optional<std::size_t> d = std::nullopt, const ScanOptions& opt = {}) {
  auto K = kaehler_module(S, ell, section, m + 2);
  if (e < 0) throw HypothesisError("e must be nonnegative");
  if (e < K.max_exponent()) throw HypothesisError("e = " + std::to_string(e) + " does not kill the torsion (max exponent " + std::to_string(K.max_exponent()) + ")");
  std::size_t d_min = K.min_generators_after_scaling(e);
  if (d && *d < d_min) throw HypothesisError("d = " + std::to_string(*d) + " is below the generator count " + std::to_string(d_min));
  MainCountingVerdict out;
  out.e = e;
  out.d = d.value_or(d_min);
  out.n = S.num_vars();
  bool window_i = m >= m_prime && m_prime > e;
  bool window_ii = e == 0 && 0 < m_prime && m_prime <= m && m <= 2 * m_prime;
  if (!window_i && !window_ii) throw HypothesisError("(m, m', e) outside both windows of the counting bound");
  i64 fiber = static_cast<i64>(fiber_points(S, ell, section, m_prime, m, opt).size());
  if (window_i) {
    CountVerdict v;
    v.observed = fiber;
    v.expected = checked::mul(checked::pow(ell, static_cast<int>(out.n) * (e + 1)), checked::pow(ell, static_cast<int>(out.d) * (m - m_prime)));
    v.holds = v.observed <= v.expected;
    out.clause_i = v;
  }
  if (window_ii) {
    CountVerdict v;
    v.observed = fiber;
    v.expected = checked::pow(ell, static_cast<int>(out.d) * (m - m_prime));
    v.holds = v.observed <= v.expected;
    out.clause_ii = v;
  }
  return out;
}

/// Growth of |image of S(Z_ell) in S(Z/ell^m)|, approximated by points that lift two more levels.
struct GrowthRow {
  int level = 0;
  i64 liftable = 0;
  std::optional<Rational> ratio;  ///< liftable(level) / liftable(level - 1)
  std::optional<int> increment;   ///< log_ell of the ratio when it is a power of ell
};

inline std::vector<GrowthRow> lower_bound_probe(const AffineSchemeMod& S, i64 ell, int depth, const ScanOptions& opt = {}) {
  std::vector<GrowthRow> rows;
  for (int m = 1; m <= depth; ++m) {
    auto pts = enumerate_points(S, ell, m, opt);
    auto ok = parallel_map<char>(pts.size(), opt.resolved_workers(), [&](std::size_t i) { return lifts_to(S, ell, pts[i], m, m + 2, opt) ? 1 : 0; });
    GrowthRow row;
    row.level = m;
    for (char c : ok) row.liftable += c;
    if (!rows.empty() && rows.back().liftable > 0) {
      row.ratio = Rational(row.liftable, rows.back().liftable);
      if (row.ratio->is_integer()) {
        i64 r = row.ratio->num();
        int k = 0;
        while (r > 1 && r % ell == 0) {
          r /= ell;
          ++k;
        }
        if (r == 1) row.increment = k;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace slopes
