#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/matrix.hpp"
#include "slopes/slope.hpp"

/// Integral Lie algebra models used as finite-field surrogates.
namespace slopes::catalog {

inline IntMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  IntMatrix m(n, n, 0);
  m(i, j) = 1;
  return m;
}

/// J = [[0, I_g], [-I_g, 0]].
inline IntMatrix symplectic_form(std::size_t g) {
  IntMatrix J(2 * g, 2 * g, 0);
  for (std::size_t i = 0; i < g; ++i) {
    J(i, g + i) = 1;
    J(g + i, i) = -1;
  }
  return J;
}

/// Matrices X in gl_n with L(X) = 0 for a linear map L given on matrices.
inline std::vector<IntMatrix> linear_kernel(const Field& f, std::size_t n, const std::function<IntMatrix(const IntMatrix&)>& L) {
  IntMatrix columns(0, 0, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto img = L(unit_matrix(n, i, j)).data();
      for (auto& x : img) x = f.from_integer(x);
      columns.append_row(img);
    }
  auto ker = rref(columns.transposed(), f).kernel;
  std::vector<IntMatrix> out;
  for (std::size_t t = 0; t < ker.rows(); ++t) {
    auto r = ker.row(t);
    out.emplace_back(n, n, std::vector<i64>(r.begin(), r.end()));
  }
  return out;
}

inline LieAlgebraRep gl(const Field& f, std::size_t n) {
  std::vector<IntMatrix> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.push_back(unit_matrix(n, i, j));
  return LieAlgebraRep(f, n, b);
}

inline LieAlgebraRep sl(const Field& f, std::size_t n) {
  std::vector<IntMatrix> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) b.push_back(unit_matrix(n, i, j));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    IntMatrix h = unit_matrix(n, i, i);
    h(n - 1, n - 1) = -1;
    b.push_back(h);
  }
  return LieAlgebraRep(f, n, b);
}

/// sp_{2g} = {X : X^T J + J X = 0}.
inline LieAlgebraRep sp(const Field& f, std::size_t g) {
  const IntMatrix J = symplectic_form(g);
  auto basis = linear_kernel(f, 2 * g, [&](const IntMatrix& X) {
    IntMatrix a = multiply(X.transposed(), J), b = multiply(J, X);
    for (std::size_t k = 0; k < a.data().size(); ++k) a.data()[k] += b.data()[k];
    return a;
  });
  return LieAlgebraRep(f, 2 * g, basis);
}

/// gsp_{2g} = sp_{2g} + scalars.
inline LieAlgebraRep gsp(const Field& f, std::size_t g) {
  auto b = sp(f, g).basis();
  b.push_back(IntMatrix::identity(2 * g));
  return LieAlgebraRep::span(f, 2 * g, b);
}

/// Diagonal matrices in gl_n.
inline LieAlgebraRep split_torus(const Field& f, std::size_t n) {
  std::vector<IntMatrix> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(unit_matrix(n, i, i));
  return LieAlgebraRep(f, n, b);
}

/// span(I, J) with J = [[0, -D], [1, 0]], so J^2 = -D; irreducible exactly when -D is a non-square.
inline LieAlgebraRep nonsplit_torus(const Field& f, i64 D = 1) {
  return LieAlgebraRep(f, 2, {IntMatrix::identity(2), IntMatrix{{0, -D}, {1, 0}}});
}

/// {diag(A, c) : A in gl_2, c scalar} on F^3.
inline LieAlgebraRep gl2_plus_scalar(const Field& f) {
  return LieAlgebraRep(f, 3, {unit_matrix(3, 0, 0), unit_matrix(3, 0, 1), unit_matrix(3, 1, 0), unit_matrix(3, 1, 1), unit_matrix(3, 2, 2)});
}

/// {diag(0, *)}: the Lie algebra of {diag(x^p, x)} in characteristic p.
inline LieAlgebraRep mu_p_lie(const Field& f) { return LieAlgebraRep(f, 2, {unit_matrix(2, 1, 1)}); }

/// The torus {diag(a, b, c - a, c - b)} on F^4.
inline LieAlgebraRep cm_surface(const Field& f) {
  return LieAlgebraRep(f, 4, {IntMatrix{{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 0}},
                              IntMatrix{{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}},
                              IntMatrix{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
}

/// Block-diagonal embedding of a matrix at offset `at` of an n x n matrix.
inline IntMatrix embed_block(const IntMatrix& X, std::size_t n, std::size_t at) {
  IntMatrix out(n, n, 0);
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j) out(at + i, at + j) = X(i, j);
  return out;
}

inline LieAlgebraRep direct_sum(const LieAlgebraRep& a, const LieAlgebraRep& b) {
  if (!(a.field() == b.field())) throw InputError("direct sum of algebras over different fields");
  const std::size_t n = a.n() + b.n();
  std::vector<IntMatrix> basis;
  for (const auto& x : a.basis()) basis.push_back(embed_block(x, n, 0));
  for (const auto& y : b.basis()) basis.push_back(embed_block(y, n, a.n()));
  return LieAlgebraRep(a.field(), n, basis);
}

/// The multiplier nu(X) with X^T J + J X = nu J; throws if X is not a symplectic similitude.
inline i64 similitude_multiplier(const Field& f, const IntMatrix& X) {
  const std::size_t n = X.rows();
  if (n % 2 != 0) throw InputError("similitude needs an even dimension");
  if (f.degree() != 1) throw DomainError("similitude multipliers are computed over prime fields");
  const IntMatrix J = symplectic_form(n / 2);
  IntMatrix a = multiply(X.transposed(), J), b = multiply(J, X);
  i64 nu = mod(a(0, n / 2) + b(0, n / 2), f.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (mod(a(i, j) + b(i, j) - nu * J(i, j), f.size()) != 0) throw InputError("matrix is not a symplectic similitude");
  return nu;
}

/// {(X, Y) in a + b : nu(X) = nu(Y)}, the product of two models sharing the similitude character.
inline LieAlgebraRep similitude_fiber_product(const LieAlgebraRep& a, const LieAlgebraRep& b) {
  if (!(a.field() == b.field())) throw InputError("fiber product of algebras over different fields");
  const Field& f = a.field();
  const std::size_t n = a.n() + b.n();
  auto ba = a.basis(), bb = b.basis();
  IntMatrix nu(1, ba.size() + bb.size(), 0);
  for (std::size_t j = 0; j < ba.size(); ++j) nu(0, j) = similitude_multiplier(f, ba[j]);
  for (std::size_t j = 0; j < bb.size(); ++j) nu(0, ba.size() + j) = f.neg(similitude_multiplier(f, bb[j]));
  auto ker = rref(nu, f).kernel;
  std::vector<IntMatrix> basis;
  for (std::size_t t = 0; t < ker.rows(); ++t) {
    IntMatrix X(n, n, 0);
    for (std::size_t j = 0; j < ba.size() + bb.size(); ++j) {
      i64 c = ker(t, j);
      if (c == 0) continue;
      IntMatrix E = j < ba.size() ? embed_block(ba[j], n, 0) : embed_block(bb[j - ba.size()], n, a.n());
      for (std::size_t e = 0; e < E.data().size(); ++e) X.data()[e] = f.add(X.data()[e], f.mul(c, f.normalize(E.data()[e])));
    }
    basis.push_back(std::move(X));
  }
  return LieAlgebraRep(f, n, basis);
}

/// Two non-isogenous CM elliptic curves: tori with J^2 = -1 and J^2 = -2 sharing the multiplier.
inline LieAlgebraRep cm_pair(const Field& f) { return similitude_fiber_product(nonsplit_torus(f, 1), nonsplit_torus(f, 2)); }

/// A non-CM elliptic curve times a CM one.
inline LieAlgebraRep gl2_times_cm(const Field& f) { return similitude_fiber_product(gl(f, 2), nonsplit_torus(f, 1)); }

/// Names accepted by lie_by_name, with their ambient dimension for the default parameters.
inline std::vector<std::string> lie_catalog_names() {
  return {"gl", "sl", "sp", "gsp", "split_torus", "nonsplit_torus", "gl2_plus_scalar", "mu_p", "cm_surface", "cm_pair", "gl2_times_cm"};
}

/// Catalog lookup; `size` is n for gl/sl/split_torus, g for sp/gsp, D for nonsplit_torus, ignored otherwise.
inline LieAlgebraRep lie_by_name(const std::string& name, const Field& f, std::size_t size) {
  if (name == "gl") return gl(f, size);
  if (name == "sl") return sl(f, size);
  if (name == "sp") return sp(f, size);
  if (name == "gsp") return gsp(f, size);
  if (name == "split_torus") return split_torus(f, size);
  if (name == "nonsplit_torus") return nonsplit_torus(f, static_cast<i64>(size));
  if (name == "gl2_plus_scalar") return gl2_plus_scalar(f);
  if (name == "mu_p") return mu_p_lie(f);
  if (name == "cm_surface") return cm_surface(f);
  if (name == "cm_pair") return cm_pair(f);
  if (name == "gl2_times_cm") return gl2_times_cm(f);
  throw InputError("unknown catalog entry '" + name + "'");
}

}  // namespace slopes::catalog
