#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "slopes/catalog.hpp"
#include "slopes/errors.hpp"
#include "slopes/matrix.hpp"
#include "slopes/polynomial.hpp"
#include "slopes/scheme.hpp"
#include "slopes/slope.hpp"
#include "slopes/subspace.hpp"

namespace slopes {

/// A matrix group scheme: base variables are the n^2 entries x_ij (row-major).
struct GroupScheme {
  std::string name;
  std::size_t n = 0;
  AffineSchemeMod scheme;

  /// The matrix part of a point.
  IntMatrix element(const Point& x) const { return IntMatrix(n, n, std::vector<i64>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n * n))); }

  /// The identity with its auxiliary coordinates modulo M.
  Point identity(i64 ell, i64 M) const {
    auto I = IntMatrix::identity(n);
    auto x = scheme.complete(I.data(), ell, M);
    if (!x || !scheme.is_point_mod(*x, M)) throw DomainError("identity is not a point of " + name);
    return *x;
  }

  /// The identity as an integral point; every unit constraint must be +-1 there.
  Point exact_identity() const {
    auto I = IntMatrix::identity(n).data();
    Point x(I.begin(), I.end());
    for (const auto& u : scheme.unit_constraints()) {
      i64 v = u.eval_exact(I);
      if (v != 1 && v != -1) throw DomainError("unit constraint is not +-1 at the identity of " + name);
      x.push_back(v);
    }
    for (const auto& eq : scheme.equations())
      if (eq.eval_exact(x) != 0) throw DomainError("identity is not a point of " + name);
    return x;
  }

  /// Point of the scheme lying over a matrix (auxiliaries solved), or nullopt.
  std::optional<Point> point_of(const IntMatrix& X, i64 ell, i64 M) const {
    auto x = scheme.complete(X.data(), ell, M);
    if (!x || !scheme.is_point_mod(*x, M)) return std::nullopt;
    return x;
  }

  /// The pointwise stabilizer of the lattice spanned by the rows of `W` (integer vectors): X w = w.
  GroupScheme stabilizer(const IntMatrix& W) const {
    if (W.cols() != n) throw InputError("stabilized vectors have the wrong length");
    std::vector<Polynomial> extra;
    for (std::size_t k = 0; k < W.rows(); ++k)
      for (std::size_t r = 0; r < n; ++r) {
        Polynomial p = Polynomial::constant(n * n, -W(k, r));
        for (std::size_t c = 0; c < n; ++c)
          if (W(k, c) != 0) p = p + Polynomial::variable(n * n, r * n + c) * W(k, c);
        if (!p.is_zero()) extra.push_back(p);
      }
    return GroupScheme{name + "_W", n, scheme.with_equations(extra)};
  }

  friend bool operator==(const GroupScheme&, const GroupScheme&) = default;
};

namespace detail {

/// Matrices from tangent vectors: keep the n^2 base coordinates (auxiliaries are determined by them).
inline std::vector<IntMatrix> tangent_matrices(const IntMatrix& vectors, std::size_t n, i64 ell) {
  std::vector<IntMatrix> out;
  for (std::size_t t = 0; t < vectors.rows(); ++t) {
    auto r = vectors.row(t);
    std::vector<i64> e(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n * n));
    for (auto& x : e) x = mod(x, ell);
    out.emplace_back(n, n, std::move(e));
  }
  return out;
}

}  // namespace detail

/// Tangent space at the identity mod ell: kernel of the Jacobian over F_ell.
inline LieAlgebraRep tangent_lie_algebra(const GroupScheme& G, i64 ell) {
  const Field f = Field::prime(ell);
  const Point id = G.exact_identity();
  IntMatrix J = G.scheme.jacobian_mod(id, ell);
  IntMatrix ker = J.rows() == 0 ? IntMatrix::identity(G.scheme.num_vars()) : rref(J, f).kernel;
  return LieAlgebraRep::span(f, G.n, detail::tangent_matrices(ker, G.n, ell));
}

/// Saturated tangent lattice: the Z-kernel of the Jacobian at the identity (a direct summand), reduced mod ell.
inline LieAlgebraRep saturated_tangent(const GroupScheme& G, i64 ell) {
  const Field f = Field::prime(ell);
  const Point id = G.exact_identity();
  const std::size_t N = G.scheme.num_vars();
  IntMatrix ker(0, N, 0);
  if (G.scheme.equations().empty()) {
    ker = IntMatrix::identity(N);
  } else {
    auto snf = smith_normal_form(G.scheme.jacobian_exact(id));
    std::size_t rank = 0;
    for (auto d : snf.divisors)
      if (d != 0) ++rank;
    for (std::size_t c = rank; c < N; ++c) {
      std::vector<i64> col(N);
      for (std::size_t r = 0; r < N; ++r) col[r] = snf.V(r, c);
      ker.append_row(col);
    }
  }
  return LieAlgebraRep::span(f, G.n, detail::tangent_matrices(ker, G.n, ell));
}

/// Level-i tangent vectors B (over all coordinates) whose point id + ell^i B mod ell^{i+1} lifts to ell^depth.
///
/// They form a subgroup, being the image of a kernel of reduction; when every basis vector of the
/// Jacobian kernel lifts the answer is the whole kernel, otherwise all ell^t combinations are scanned.
struct LiftableTangent {
  std::size_t tangent_dim = 0;  ///< dim of the Jacobian kernel mod ell, all coordinates
  IntMatrix liftable;           ///< canonical basis of the liftable subspace, all coordinates
  IntMatrix graded;             ///< the same subspace projected to the n^2 matrix entries

  std::size_t dim() const { return liftable.rows(); }
};

inline LiftableTangent liftable_tangent(const GroupScheme& G, i64 ell, int level, int depth, const ScanOptions& opt = {}) {
  if (level < 1 || depth <= level) throw InputError("need 1 <= level < depth");
  const Field f = Field::prime(ell);
  const Point id = G.exact_identity();
  const std::size_t N = G.scheme.num_vars(), nn = G.n * G.n;
  IntMatrix J = G.scheme.jacobian_mod(id, ell);
  IntMatrix ker = J.rows() == 0 ? IntMatrix::identity(N) : rref(J, f).kernel;
  const i64 step = checked::pow(ell, level), M = checked::pow(ell, level + 1);
  auto lifts = [&](std::span<const i64> t) {
    Point x(N);
    for (std::size_t k = 0; k < N; ++k) x[k] = mod(id[k] + step * t[k], M);
    if (!G.scheme.is_point_mod(x, M)) throw VerificationFailure("tangent vector does not give a point at the next level");
    return lifts_to(G.scheme, ell, x, level + 1, depth, opt);
  };
  LiftableTangent rep;
  rep.tangent_dim = ker.rows();
  bool all = true;
  for (std::size_t r = 0; r < ker.rows() && all; ++r) all = lifts(ker.row(r));
  IntMatrix span_rows(0, N, 0);
  if (all) {
    span_rows = ker;
  } else {
    const std::size_t t = ker.rows();
    if (!detail::power_at_most(ell, t, opt.cap)) throw EnumerationTooLarge("liftable tangent scan over ell^" + std::to_string(t) + " vectors");
    const i64 total = checked::pow(ell, static_cast<int>(t));
    auto ok = parallel_map<char>(static_cast<std::size_t>(total), opt.resolved_workers(), [&](std::size_t idx) {
      std::vector<i64> v(N, 0);
      i64 rest = static_cast<i64>(idx);
      for (std::size_t r = 0; r < t; ++r, rest /= ell) {
        i64 c = rest % ell;
        if (c == 0) continue;
        for (std::size_t k = 0; k < N; ++k) v[k] = mod(v[k] + c * ker(r, k), ell);
      }
      return static_cast<char>(lifts(v));
    });
    for (i64 idx = 0; idx < total; ++idx) {
      if (!ok[static_cast<std::size_t>(idx)]) continue;
      std::vector<i64> v(N, 0);
      i64 rest = idx;
      for (std::size_t r = 0; r < t; ++r, rest /= ell)
        for (std::size_t k = 0; k < N; ++k) v[k] = mod(v[k] + (rest % ell) * ker(r, k), ell);
      span_rows.append_row(v);
    }
  }
  rep.liftable = span_rows.rows() == 0 ? IntMatrix(0, N, 0) : rref(span_rows, f).reduced;
  IntMatrix proj(0, nn, 0);
  for (std::size_t r = 0; r < rep.liftable.rows(); ++r) {
    auto row = rep.liftable.row(r);
    proj.append_row(std::vector<i64>(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(nn)));
  }
  rep.graded = proj.rows() == 0 ? IntMatrix(0, nn, 0) : rref(proj, f).reduced;
  return rep;
}

/// Kernel of G(Z/ell^m) -> G(Z/ell^m') against ell^{d(m-m')}, d from the cotangent data at the identity.
struct KernelVerdict {
  i64 kernel = 0;
  i64 bound = 0;
  std::size_t d = 0;
  int e = 0;
  bool holds = false;  ///< kernel <= bound
  bool exact = false;  ///< kernel == bound
};

inline KernelVerdict verify_group_kernel_bound(const GroupScheme& G, i64 ell, int m, int m_prime, const ScanOptions& opt = {}) {
  if (!(1 <= m_prime && m_prime <= m)) throw HypothesisError("need 1 <= m' <= m");
  const Point id = G.identity(ell, checked::pow(ell, m + 2));
  // the identity is an exact integral point, so any precision works
  auto K = kaehler_module(G.scheme, ell, id, m + 2);
  KernelVerdict v;
  v.e = K.max_exponent();
  v.d = K.min_generators_after_scaling(v.e);
  v.kernel = static_cast<i64>(fiber_points(G.scheme, ell, id, m_prime, m, opt).size());
  v.bound = checked::pow(ell, static_cast<int>(v.d) * (m - m_prime));
  v.holds = v.kernel <= v.bound;
  v.exact = v.kernel == v.bound;
  return v;
}

namespace group_schemes {

inline Polynomial entry(std::size_t n, std::size_t i, std::size_t j) { return Polynomial::variable(n * n, i * n + j); }

inline Polynomial determinant(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial det(n * n);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Polynomial term = Polynomial::constant(n * n, inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term = term * entry(n, i, perm[i]);
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Entries of X^T J X as polynomials.
inline std::vector<std::vector<Polynomial>> symplectic_gram(std::size_t g) {
  const std::size_t n = 2 * g;
  const IntMatrix J = catalog::symplectic_form(g);
  std::vector<std::vector<Polynomial>> G(n, std::vector<Polynomial>(n, Polynomial(n * n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (J(a, b) != 0) G[i][j] = G[i][j] + entry(n, a, i) * entry(n, b, j) * J(a, b);
  return G;
}

inline GroupScheme gl(std::size_t n) { return {"gl" + std::to_string(n), n, AffineSchemeMod(n * n, {}, {determinant(n)})}; }

inline GroupScheme sl(std::size_t n) {
  return {"sl" + std::to_string(n), n, AffineSchemeMod(n * n, {determinant(n) - Polynomial::constant(n * n, 1)})};
}

inline GroupScheme sp(std::size_t g) {
  const std::size_t n = 2 * g;
  const IntMatrix J = catalog::symplectic_form(g);
  auto G = symplectic_gram(g);
  std::vector<Polynomial> eqs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) eqs.push_back(G[i][j] - Polynomial::constant(n * n, J(i, j)));
  return {"sp" + std::to_string(n), n, AffineSchemeMod(n * n, eqs)};
}

/// X^T J X = nu J with nu = (X^T J X)_{1,g+1} a unit.
inline GroupScheme gsp(std::size_t g) {
  const std::size_t n = 2 * g;
  const IntMatrix J = catalog::symplectic_form(g);
  auto G = symplectic_gram(g);
  const Polynomial nu = G[0][g];
  std::vector<Polynomial> eqs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(i == 0 && j == g)) eqs.push_back(G[i][j] - nu * J(i, j));
  return {"gsp" + std::to_string(n), n, AffineSchemeMod(n * n, eqs, {nu})};
}

inline GroupScheme split_torus(std::size_t n) {
  std::vector<Polynomial> eqs, units;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) eqs.push_back(entry(n, i, j));
  for (std::size_t i = 0; i < n; ++i) units.push_back(entry(n, i, i));
  return {"split_torus" + std::to_string(n), n, AffineSchemeMod(n * n, eqs, units)};
}

/// {a I + b J : J = [[0, -D], [1, 0]], a^2 + D b^2 a unit}.
inline GroupScheme nonsplit_torus(i64 D = 1) {
  const std::size_t n = 2;
  return {"nonsplit_torus", n,
          AffineSchemeMod(4, {entry(n, 0, 0) - entry(n, 1, 1), entry(n, 0, 1) + entry(n, 1, 0) * D}, {determinant(2)})};
}

/// {diag(x^p, x)}.
inline GroupScheme mu_p(i64 p) {
  const std::size_t n = 2;
  return {"mu_p", n, AffineSchemeMod(4, {entry(n, 0, 1), entry(n, 1, 0), entry(n, 0, 0) - entry(n, 1, 1).pow(static_cast<int>(p))}, {entry(n, 1, 1)})};
}

inline GroupScheme trivial(std::size_t n) {
  std::vector<Polynomial> eqs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eqs.push_back(entry(n, i, j) - Polynomial::constant(n * n, i == j ? 1 : 0));
  return {"trivial" + std::to_string(n), n, AffineSchemeMod(n * n, eqs)};
}

/// {diag(A, c)} with A in GL_2.
inline GroupScheme gl2_plus_scalar() {
  const std::size_t n = 3;
  std::vector<Polynomial> eqs{entry(n, 0, 2), entry(n, 1, 2), entry(n, 2, 0), entry(n, 2, 1)};
  Polynomial detA = entry(n, 0, 0) * entry(n, 1, 1) - entry(n, 0, 1) * entry(n, 1, 0);
  return {"gl2_plus_scalar", n, AffineSchemeMod(9, eqs, {detA, entry(n, 2, 2)})};
}

inline std::vector<std::string> names() { return {"gl", "sl", "sp", "gsp", "split_torus", "nonsplit_torus", "mu_p", "trivial", "gl2_plus_scalar"}; }

/// Catalog lookup; `size` is n for gl/sl/split_torus/trivial, g for sp/gsp, D for nonsplit_torus, p for mu_p.
inline GroupScheme by_name(const std::string& name, std::size_t size) {
  if (name == "gl") return gl(size);
  if (name == "sl") return sl(size);
  if (name == "sp") return sp(size);
  if (name == "gsp") return gsp(size);
  if (name == "split_torus") return split_torus(size);
  if (name == "nonsplit_torus") return nonsplit_torus(static_cast<i64>(size));
  if (name == "mu_p") return mu_p(static_cast<i64>(size));
  if (name == "trivial") return trivial(size);
  if (name == "gl2_plus_scalar") return gl2_plus_scalar();
  throw InputError("unknown group scheme '" + name + "'");
}

}  // namespace group_schemes

}  // namespace slopes
