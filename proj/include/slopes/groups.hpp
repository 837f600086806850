#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/group_schemes.hpp"
#include "slopes/matrix.hpp"
#include "slopes/parallel.hpp"
#include "slopes/ring.hpp"
#include "slopes/scheme.hpp"
#include "slopes/slope.hpp"
#include "slopes/subspace.hpp"

namespace slopes {

/// A matrix flattened row-major; entries are canonical residues.
using Element = std::vector<i64>;

struct ElementHash {
  std::size_t operator()(const Element& e) const {
    std::uint64_t h = 1469598103934665603ull;
    for (i64 x : e) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

inline Element mat_mul(const Element& a, const Element& b, std::size_t n, i64 N) {
  Element c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      i64 aik = a[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = mod(c[i * n + j] + mulmod(aik, b[k * n + j], N), N);
    }
  return c;
}

inline std::vector<i64> mat_apply(const Element& a, std::span<const i64> v, std::size_t n, i64 N) {
  std::vector<i64> out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] = mod(out[i] + mulmod(a[i * n + j], v[j], N), N);
  return out;
}

inline Element identity_element(std::size_t n) {
  Element e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return e;
}

}  // namespace detail

/// An explicitly enumerated subgroup of GL_n(Z/ell^m); elements sorted lexicographically.
class FiniteMatrixGroup {
 public:
  FiniteMatrixGroup(ResidueRing ring, std::size_t n) : ring_(ring), n_(n), elements_{detail::identity_element(n)} {}

  /// Breadth-first closure of the generators under right multiplication.
  static FiniteMatrixGroup generate(const ResidueRing& ring, std::size_t n, const std::vector<IntMatrix>& generators, i64 cap = kDefaultCap) {
    FiniteMatrixGroup G(ring, n);
    const i64 N = ring.modulus();
    std::vector<Element> gens;
    for (const auto& g : generators) {
      if (g.rows() != n || g.cols() != n) throw InputError("generator has the wrong shape");
      Element e = g.data();
      for (auto& x : e) x = mod(x, N);
      IntMatrix red(n, n, e);
      if (mod(determinant(red), ring.ell()) == 0) throw InputError("generator is not invertible modulo " + std::to_string(ring.ell()));
      gens.push_back(e);
      G.generators_.emplace_back(n, n, e);
    }
    std::unordered_set<Element, ElementHash> seen{detail::identity_element(n)};
    std::deque<Element> frontier{detail::identity_element(n)};
    while (!frontier.empty()) {
      Element x = std::move(frontier.front());
      frontier.pop_front();
      for (const auto& g : gens) {
        Element y = detail::mat_mul(x, g, n, N);
        if (seen.insert(y).second) {
          if (static_cast<i64>(seen.size()) > cap)
            throw EnumerationTooLarge("group generation exceeded the cap of " + std::to_string(cap) + " elements");
          frontier.push_back(std::move(y));
        }
      }
    }
    G.elements_.assign(seen.begin(), seen.end());
    std::sort(G.elements_.begin(), G.elements_.end());
    return G;
  }

  /// A group given by its element list (closure is the caller's responsibility; identity is checked).
  static FiniteMatrixGroup from_elements(const ResidueRing& ring, std::size_t n, std::vector<Element> elements) {
    FiniteMatrixGroup G(ring, n);
    for (auto& e : elements) {
      if (e.size() != n * n) throw InputError("element has the wrong size");
      for (auto& x : e) x = ring.reduce(x);
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    G.elements_ = std::move(elements);
    if (!G.contains(detail::identity_element(n))) throw InputError("element list does not contain the identity");
    return G;
  }

  /// The points G(Z/ell^m) of a matrix group scheme.
  static FiniteMatrixGroup from_scheme(const GroupScheme& S, i64 ell, int m, const ScanOptions& opt = {}) {
    const std::size_t nn = S.n * S.n;
    std::vector<Element> els;
    for (const auto& p : enumerate_points(S.scheme, ell, m, opt)) els.emplace_back(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(nn));
    return from_elements(ResidueRing(ell, m), S.n, std::move(els));
  }

  const ResidueRing& ring() const { return ring_; }
  std::size_t n() const { return n_; }
  i64 order() const { return static_cast<i64>(elements_.size()); }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<IntMatrix>& generators() const { return generators_; }

  /// Matrices to test invariance against: the generators when known, otherwise every element.
  std::vector<IntMatrix> acting_set() const {
    if (!generators_.empty()) return generators_;
    std::vector<IntMatrix> out;
    for (const auto& e : elements_) out.emplace_back(n_, n_, e);
    return out;
  }

  bool contains(const Element& e) const { return std::binary_search(elements_.begin(), elements_.end(), e); }

  Element multiply(const Element& a, const Element& b) const { return detail::mat_mul(a, b, n_, ring_.modulus()); }
  std::vector<i64> apply(const Element& a, std::span<const i64> v) const { return detail::mat_apply(a, v, n_, ring_.modulus()); }

  /// Image under reduction modulo ell^k.
  FiniteMatrixGroup reduce(int k) const {
    if (k < 1 || k > ring_.exponent()) throw InputError("reduction level out of range");
    ResidueRing r(ring_.ell(), k);
    std::vector<Element> els;
    els.reserve(elements_.size());
    for (const auto& e : elements_) {
      Element x = e;
      for (auto& v : x) v = r.reduce(v);
      els.push_back(std::move(x));
    }
    auto G = from_elements(r, n_, std::move(els));
    for (const auto& g : generators_) {
      IntMatrix h = g;
      for (auto& v : h.data()) v = r.reduce(v);
      G.generators_.push_back(std::move(h));
    }
    return G;
  }

 private:
  ResidueRing ring_;
  std::size_t n_;
  std::vector<IntMatrix> generators_;
  std::vector<Element> elements_;
};

/// The elements of a parent group that act trivially on a target.
struct FixerSubgroup {
  FiniteMatrixGroup group;
  i64 parent_order = 0;
  i64 index = 0;
  std::string target;

  i64 order() const { return group.order(); }
};

/// Elements fixing every listed vector.
inline FixerSubgroup fixer_of_vectors(const FiniteMatrixGroup& G, const std::vector<std::vector<i64>>& vectors, std::string target,
                                      const ScanOptions& opt = {}) {
  for (const auto& v : vectors)
    if (v.size() != G.n()) throw InputError("target vector has the wrong length");
  std::vector<std::vector<i64>> vs;
  for (auto v : vectors) {
    for (auto& x : v) x = G.ring().reduce(x);
    vs.push_back(std::move(v));
  }
  const auto& els = G.elements();
  std::vector<char> keep(els.size(), 0);
  parallel_for(els.size(), opt.resolved_workers(), [&](std::size_t i) {
    bool ok = true;
    for (const auto& v : vs)
      if (G.apply(els[i], v) != v) {
        ok = false;
        break;
      }
    keep[i] = ok;
  });
  std::vector<Element> fixed;
  for (std::size_t i = 0; i < els.size(); ++i)
    if (keep[i]) fixed.push_back(els[i]);
  FixerSubgroup F{FiniteMatrixGroup::from_elements(G.ring(), G.n(), std::move(fixed)), G.order(), 0, std::move(target)};
  if (G.order() % F.order() != 0) throw VerificationFailure("fixer order does not divide the group order");
  F.index = G.order() / F.order();
  return F;
}

inline FixerSubgroup fixer(const FiniteMatrixGroup& G, const Subspace& W, const ScanOptions& opt = {}) {
  if (G.ring().exponent() != 1 || W.field().degree() != 1 || W.field().characteristic() != G.ring().ell())
    throw InputError("a subspace target needs a group over the same prime field");
  std::vector<std::vector<i64>> rows;
  for (std::size_t i = 0; i < W.dim(); ++i) rows.emplace_back(W.basis().row(i).begin(), W.basis().row(i).end());
  return fixer_of_vectors(G, rows, W.str(), opt);
}

inline FixerSubgroup fixer(const FiniteMatrixGroup& G, const SaturatedSubmodule& W, const ScanOptions& opt = {}) {
  if (W.ring().modulus() != G.ring().modulus()) throw InputError("submodule and group live over different rings");
  std::vector<std::vector<i64>> rows;
  for (std::size_t i = 0; i < W.rank(); ++i) rows.emplace_back(W.basis().row(i).begin(), W.basis().row(i).end());
  return fixer_of_vectors(G, rows, "saturated submodule of rank " + std::to_string(W.rank()), opt);
}

/// Membership is tested on the SNF generators only, which suffices by linearity.
inline FixerSubgroup fixer(const FiniteMatrixGroup& G, const SnfSubgroup& H, const ScanOptions& opt = {}) {
  if (H.modulus() != G.ring().modulus()) throw InputError("subgroup and group live over different rings");
  return fixer_of_vectors(G, H.generators(), "subgroup of order " + std::to_string(H.order()), opt);
}

struct OrbitReport {
  std::vector<std::vector<i64>> orbit;  ///< sorted
  FixerSubgroup stabilizer;
};

inline OrbitReport orbit(const FiniteMatrixGroup& G, std::vector<i64> v, const ScanOptions& opt = {}) {
  if (v.size() != G.n()) throw InputError("vector has the wrong length");
  for (auto& x : v) x = G.ring().reduce(x);
  const auto& els = G.elements();
  auto images = parallel_map<std::vector<i64>>(els.size(), opt.resolved_workers(), [&](std::size_t i) { return G.apply(els[i], v); });
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  OrbitReport rep{std::move(images), fixer_of_vectors(G, {v}, "point", opt)};
  if (static_cast<i64>(rep.orbit.size()) * rep.stabilizer.order() != G.order()) throw VerificationFailure("orbit-stabilizer product mismatch");
  return rep;
}

enum class BracketVerdict { holds, fails, not_applicable };

inline const char* to_string(BracketVerdict v) {
  switch (v) {
    case BracketVerdict::holds: return "holds";
    case BracketVerdict::fails: return "fails";
    default: return "not applicable";
  }
}

/// (ell-1)^d <= |G_W(F_ell)| <= c (ell+1)^d with d = dim of the Lie stabilizer.
struct BracketReport {
  i64 count = 0;
  std::size_t d = 0;               ///< dim of the stabilizer in the tangent Lie algebra
  std::size_t tangent_dim = 0;     ///< tangent space of the stabilizer scheme at the identity
  i64 identity_fiber = 0;          ///< |ker(G_W(ell^3) -> G_W(ell))|
  bool smooth = false;             ///< identity_fiber = ell^{2 tangent_dim} and tangent_dim = d
  i64 lower = 0;
  i64 upper = 0;
  i64 c = 1;
  BracketVerdict verdict = BracketVerdict::not_applicable;
};

inline BracketReport point_count_bracket(const GroupScheme& G, i64 ell, const Subspace& W, i64 c = 1, const ScanOptions& opt = {}) {
  if (W.field().degree() != 1 || W.field().characteristic() != ell || W.ambient_dim() != G.n)
    throw InputError("subspace does not live in F_ell^n");
  const auto lie = tangent_lie_algebra(G, ell);
  BracketReport rep;
  rep.c = c;
  rep.d = stabilizer_dim(lie, W);
  const GroupScheme S = G.stabilizer(W.basis());
  rep.count = static_cast<i64>(enumerate_points(S.scheme, ell, 1, opt).size());
  const auto lift = liftable_tangent(S, ell, 1, 3, opt);
  rep.tangent_dim = lift.tangent_dim;
  rep.identity_fiber = checked::mul(checked::pow(ell, static_cast<int>(lift.dim())), checked::pow(ell, static_cast<int>(lift.tangent_dim)));
  rep.smooth = rep.tangent_dim == rep.d && lift.dim() == lift.tangent_dim;
  rep.lower = checked::pow(ell - 1, static_cast<int>(rep.d));
  rep.upper = checked::mul(c, checked::pow(ell + 1, static_cast<int>(rep.d)));
  if (rep.smooth) rep.verdict = rep.lower <= rep.count && rep.count <= rep.upper ? BracketVerdict::holds : BracketVerdict::fails;
  return rep;
}

namespace detail {

/// g v over the field, for g given with canonical entries.
inline std::vector<i64> field_apply(const Field& f, const IntMatrix& g, std::span<const i64> v) {
  std::vector<i64> out(g.rows(), 0);
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) out[r] = f.add(out[r], f.mul(f.normalize(g(r, c)), v[c]));
  return out;
}

inline bool is_invariant(const Field& f, const std::vector<IntMatrix>& acting, const Subspace& W) {
  for (const auto& g : acting)
    for (std::size_t i = 0; i < W.dim(); ++i)
      if (!W.contains(field_apply(f, g, W.basis().row(i)))) return false;
  return true;
}

/// Matrix of g restricted to W in the basis of W: column c holds the coordinates of g b_c.
inline IntMatrix restricted(const Field& f, const IntMatrix& g, const Subspace& W) {
  const std::size_t d = W.dim();
  IntMatrix R(d, d, 0);
  for (std::size_t c = 0; c < d; ++c) {
    auto coords = W.coordinates(field_apply(f, g, W.basis().row(c)));
    for (std::size_t r = 0; r < d; ++r) R(r, c) = coords[r];
  }
  return R;
}

}  // namespace detail

/// All invariant subspaces of the requested dimensions (default 1..n), in Grassmannian order.
inline std::vector<Subspace> invariant_subspaces(const Field& f, std::size_t n, const std::vector<IntMatrix>& acting,
                                                 std::vector<std::size_t> dims = {}, const ScanOptions& opt = {}) {
  if (dims.empty())
    for (std::size_t d = 1; d <= n; ++d) dims.push_back(d);
  i64 total = 0;
  for (auto d : dims) {
    if (d > n) throw InputError("subspace dimension exceeds the ambient dimension");
    total = checked::add(total, gaussian_binomial(static_cast<int>(n), static_cast<int>(d), f.size()));
  }
  if (total > opt.cap) throw EnumerationTooLarge("invariant subspace scan needs " + std::to_string(total) + " subspaces");
  std::vector<Subspace> out;
  for (auto d : dims)
    enumerate_subspaces(f, n, d, [&](const Subspace& W) {
      if (detail::is_invariant(f, acting, W)) out.push_back(W);
    }, opt.cap);
  return out;
}

inline std::vector<Subspace> invariant_subspaces(const FiniteMatrixGroup& G, std::vector<std::size_t> dims = {}, const ScanOptions& opt = {}) {
  if (G.ring().exponent() != 1) throw InputError("invariant subspaces need a group over a prime field");
  return invariant_subspaces(Field::prime(G.ring().ell()), G.n(), G.acting_set(), std::move(dims), opt);
}

inline std::vector<Subspace> invariant_subspaces(const LieAlgebraRep& g, std::vector<std::size_t> dims = {}, const ScanOptions& opt = {}) {
  return invariant_subspaces(g.field(), g.n(), g.basis(), std::move(dims), opt);
}

/// Whether two invariant subspaces carry isomorphic irreducible actions: a nonzero intertwiner exists.
inline bool isomorphic_irreducibles(const Field& f, const std::vector<IntMatrix>& acting, const Subspace& A, const Subspace& B) {
  if (A.dim() != B.dim()) return false;
  const std::size_t d = A.dim();
  // unknown T (d x d, row-major) with T rho_A(g) - rho_B(g) T = 0
  IntMatrix sys(0, d * d, 0);
  for (const auto& g : acting) {
    IntMatrix ra = detail::restricted(f, g, A), rb = detail::restricted(f, g, B);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t c = 0; c < d; ++c) {
        std::vector<i64> row(d * d, 0);
        for (std::size_t b = 0; b < d; ++b) {
          row[a * d + b] = f.add(row[a * d + b], ra(b, c));
          row[b * d + c] = f.sub(row[b * d + c], rb(a, b));
        }
        sys.append_row(row);
      }
  }
  if (sys.rows() == 0) return true;
  return rank(sys, f) < d * d;
}

struct IsotypicDecomposition {
  std::vector<Subspace> minimal;        ///< minimal nonzero invariant subspaces
  std::vector<std::size_t> class_of;    ///< isomorphism class of each minimal subspace
  std::vector<Subspace> components;     ///< one per class: the sum of its members
  bool semisimple = false;              ///< the components span the whole space
};

inline IsotypicDecomposition isotypic_components(const Field& f, std::size_t n, const std::vector<IntMatrix>& acting, const ScanOptions& opt = {}) {
  auto inv = invariant_subspaces(f, n, acting, {}, opt);
  IsotypicDecomposition rep;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < inv.size() && minimal; ++j)
      if (inv[j].dim() < inv[i].dim() && inv[i].contains(inv[j])) minimal = false;
    if (minimal) rep.minimal.push_back(inv[i]);
  }
  std::vector<std::size_t> parent(rep.minimal.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < rep.minimal.size(); ++i)
    for (std::size_t j = i + 1; j < rep.minimal.size(); ++j)
      if (find(i) != find(j) && isomorphic_irreducibles(f, acting, rep.minimal[i], rep.minimal[j])) parent[find(j)] = find(i);
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < rep.minimal.size(); ++i) {
    std::size_t r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    rep.class_of.push_back(static_cast<std::size_t>(it - roots.begin()));
    if (it == roots.end()) {
      roots.push_back(r);
      rep.components.emplace_back(f, n);
    }
    rep.components[rep.class_of.back()] = rep.components[rep.class_of.back()] + rep.minimal[i];
  }
  std::size_t total = 0;
  Subspace sum(f, n);
  for (const auto& c : rep.components) {
    total += c.dim();
    sum = sum + c;
  }
  rep.semisimple = total == n && sum.dim() == n;
  return rep;
}

inline IsotypicDecomposition isotypic_components(const LieAlgebraRep& g, const ScanOptions& opt = {}) {
  return isotypic_components(g.field(), g.n(), g.basis(), opt);
}

inline IsotypicDecomposition isotypic_components(const FiniteMatrixGroup& G, const ScanOptions& opt = {}) {
  if (G.ring().exponent() != 1) throw InputError("isotypic components need a group over a prime field");
  return isotypic_components(Field::prime(G.ring().ell()), G.n(), G.acting_set(), opt);
}

/// Dimension of the generic fiber of a scheme, read off from point-count growth between the last two levels.
inline std::size_t growth_dimension(const AffineSchemeMod& S, i64 ell, int depth, const ScanOptions& opt = {}) {
  if (depth < 2) throw InputError("growth dimension needs depth >= 2");
  i64 lo = static_cast<i64>(enumerate_points(S, ell, depth - 1, opt).size());
  i64 hi = static_cast<i64>(enumerate_points(S, ell, depth, opt).size());
  if (lo == 0) throw DomainError("scheme has no points modulo ell^" + std::to_string(depth - 1));
  if (hi % lo != 0) throw VerificationFailure("point counts do not grow by a power of ell");
  i64 r = hi / lo;
  std::size_t d = 0;
  while (r % ell == 0) {
    r /= ell;
    ++d;
  }
  if (r != 1) throw VerificationFailure("point counts do not grow by a power of ell");
  return d;
}

/// Slope of the group scheme itself, with stabilizer dimensions from point-count growth.
struct GroupSlopeReport {
  std::size_t dim = 0;
  Rational alpha;
  Subspace witness;
  std::vector<std::pair<Subspace, std::size_t>> stabilizer_dims;  ///< every nonzero W with dim G_W
};

inline GroupSlopeReport group_slope(const GroupScheme& G, i64 ell, int depth = 3, const ScanOptions& opt = {}) {
  const Field f = Field::prime(ell);
  if (count_nonzero_subspaces(G.n, ell) > 10'000) throw EnumerationTooLarge("group slope scan is limited to 10000 subspaces");
  GroupSlopeReport rep{growth_dimension(G.scheme, ell, depth, opt), Rational(0), Subspace(f, G.n), {}};
  std::optional<Rational> best;
  for (std::size_t d = 1; d <= G.n; ++d)
    for (const auto& W : all_subspaces(f, G.n, d, opt.cap)) {
      std::size_t dw = growth_dimension(G.stabilizer(W.basis()).scheme, ell, depth, opt);
      rep.stabilizer_dims.emplace_back(W, dw);
      Rational v(static_cast<i64>(rep.dim) - static_cast<i64>(dw), static_cast<i64>(d));
      if (!best || v < *best) {
        best = v;
        rep.witness = W;
      }
    }
  rep.alpha = *best;
  return rep;
}

/// The slope of the tangent Lie algebra through its isotypic decomposition, beside the slope of the group.
inline IsotypicSlopeReport lie_group_comparison(const GroupScheme& G, i64 ell, int depth = 3, const ScanOptions& opt = {}) {
  const auto lie = tangent_lie_algebra(G, ell);
  const auto iso = isotypic_components(lie, opt);
  IsotypicSlopeReport rep;
  if (iso.semisimple) {
    rep = alpha_via_isotypic(lie, iso.components, true, opt);
  } else {
    rep.alpha_isotypic = alpha(lie, opt).alpha;
    rep.alpha_brute = rep.alpha_isotypic;
    rep.gamma = ExtRational::reciprocal(rep.alpha_isotypic);
    rep.degenerate = rep.alpha_isotypic.is_zero();
  }
  rep.alpha_group = group_slope(G, ell, depth, opt).alpha;
  rep.lie_group_divergence = *rep.alpha_group != rep.alpha_isotypic;
  return rep;
}

}  // namespace slopes
