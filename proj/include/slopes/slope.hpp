#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/matrix.hpp"
#include "slopes/parallel.hpp"
#include "slopes/rational.hpp"
#include "slopes/subspace.hpp"

namespace slopes {

/// A Lie subalgebra of gl_n over a finite field, held by a canonical basis
/// (the RREF of the flattened basis matrices).
class LieAlgebraRep {
 public:
  LieAlgebraRep(Field field, std::size_t n, const std::vector<IntMatrix>& basis, bool check_closure = true)
      : field_(field), n_(n), flat_(0, n * n, 0) {
    IntMatrix m(0, n * n, 0);
    for (const auto& b : basis) {
      if (b.rows() != n || b.cols() != n) throw InputError("basis matrix is not " + std::to_string(n) + "x" + std::to_string(n));
      std::vector<i64> row(b.data());
      for (auto& x : row) x = field.normalize(x);
      m.append_row(row);
    }
    if (m.rows() > 0) {
      auto r = rref(m, field_);
      if (r.rank != basis.size()) throw InputError("basis matrices are linearly dependent");
      flat_ = std::move(r.reduced);
      pivots_ = std::move(r.pivots);
    }
    if (check_closure && !is_closed()) throw InputError("span is not closed under the commutator");
  }

  /// Span of arbitrary (possibly dependent) matrices.
  static LieAlgebraRep span(Field field, std::size_t n, const std::vector<IntMatrix>& mats, bool check_closure = true) {
    IntMatrix m(0, n * n, 0);
    for (const auto& b : mats) {
      if (b.rows() != n || b.cols() != n) throw InputError("matrix is not " + std::to_string(n) + "x" + std::to_string(n));
      std::vector<i64> row(b.data());
      for (auto& x : row) x = field.normalize(x);
      m.append_row(row);
    }
    std::vector<IntMatrix> basis;
    if (m.rows() > 0) {
      auto r = rref(m, field);
      for (std::size_t i = 0; i < r.rank; ++i) {
        auto row = r.reduced.row(i);
        basis.emplace_back(n, n, std::vector<i64>(row.begin(), row.end()));
      }
    }
    return LieAlgebraRep(field, n, basis, check_closure);
  }

  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return flat_.rows(); }
  /// Canonical basis, row-major flattened, one matrix per row.
  const IntMatrix& flat() const { return flat_; }

  IntMatrix basis_matrix(std::size_t j) const {
    auto r = flat_.row(j);
    return IntMatrix(n_, n_, std::vector<i64>(r.begin(), r.end()));
  }
  std::vector<IntMatrix> basis() const {
    std::vector<IntMatrix> out;
    for (std::size_t j = 0; j < dim(); ++j) out.push_back(basis_matrix(j));
    return out;
  }

  bool contains(const IntMatrix& X) const {
    std::vector<i64> v(X.data());
    for (auto& x : v) x = field_.normalize(x);
    auto r = reduce_against(std::move(v), flat_, pivots_, field_);
    return std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; });
  }

  bool is_closed() const {
    auto b = basis();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        IntMatrix xy = multiply(b[i], b[j], field_), yx = multiply(b[j], b[i], field_);
        for (std::size_t k = 0; k < xy.data().size(); ++k) xy.data()[k] = field_.sub(xy.data()[k], yx.data()[k]);
        if (!contains(xy)) return false;
      }
    return true;
  }

  /// P g P^{-1}.
  LieAlgebraRep conjugate(const IntMatrix& P, const IntMatrix& P_inv) const {
    std::vector<IntMatrix> out;
    for (const auto& b : basis()) out.push_back(multiply(multiply(P, b, field_), P_inv, field_));
    return LieAlgebraRep(field_, n_, out);
  }

  /// The same basis over a field extension.
  LieAlgebraRep extend_to(const Field& bigger) const {
    if (bigger.characteristic() != field_.characteristic()) throw DomainError("characteristic mismatch in base change");
    return LieAlgebraRep(bigger, n_, basis(), false);
  }

  friend bool operator==(const LieAlgebraRep& a, const LieAlgebraRep& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.flat_ == b.flat_;
  }

 private:
  Field field_;
  std::size_t n_;
  IntMatrix flat_;
  std::vector<std::size_t> pivots_;
};

namespace detail {

/// Rows: (basis vector i of W, coordinate r); columns: basis element j of g; entry (B_j w_i)_r.
inline IntMatrix stabilizer_system(const LieAlgebraRep& g, const Subspace& W) {
  if (W.ambient_dim() != g.n()) throw InputError("subspace and Lie algebra live in different dimensions");
  if (!(W.field() == g.field())) throw InputError("subspace and Lie algebra live over different fields");
  const Field& f = g.field();
  const std::size_t n = g.n(), k = g.dim();
  IntMatrix A(W.dim() * n, k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    auto B = g.flat().row(j);
    for (std::size_t i = 0; i < W.dim(); ++i) {
      auto w = W.basis().row(i);
      for (std::size_t r = 0; r < n; ++r) {
        i64 s = 0;
        for (std::size_t c = 0; c < n; ++c)
          if (B[r * n + c] != 0 && w[c] != 0) s = f.add(s, f.mul(B[r * n + c], w[c]));
        A(i * n + r, j) = s;
      }
    }
  }
  return A;
}

}  // namespace detail

/// dim g_W, where g_W = {B in g : Bw = 0 for all w in W}.
inline std::size_t stabilizer_dim(const LieAlgebraRep& g, const Subspace& W) {
  if (W.is_zero()) return g.dim();
  if (g.dim() == 0) return 0;
  return g.dim() - rref(detail::stabilizer_system(g, W), g.field()).rank;
}

inline LieAlgebraRep stabilizer_subalgebra(const LieAlgebraRep& g, const Subspace& W) {
  if (W.ambient_dim() != g.n()) throw InputError("subspace and Lie algebra live in different dimensions");
  if (W.is_zero() || g.dim() == 0) return g;
  const Field& f = g.field();
  auto ker = rref(detail::stabilizer_system(g, W), f).kernel;
  std::vector<IntMatrix> mats;
  for (std::size_t t = 0; t < ker.rows(); ++t) {
    IntMatrix X(g.n(), g.n(), 0);
    for (std::size_t j = 0; j < g.dim(); ++j) {
      i64 c = ker(t, j);
      if (c == 0) continue;
      auto B = g.flat().row(j);
      for (std::size_t e = 0; e < B.size(); ++e) X.data()[e] = f.add(X.data()[e], f.mul(c, B[e]));
    }
    mats.push_back(std::move(X));
  }
  return LieAlgebraRep(f, g.n(), mats, true);
}

/// alpha(g, W) = (dim g - dim g_W) / dim W, with alpha(g, 0) = 0.
inline Rational slope_at(const LieAlgebraRep& g, const Subspace& W) {
  if (W.is_zero()) return Rational(0);
  return Rational(static_cast<i64>(g.dim() - stabilizer_dim(g, W)), static_cast<i64>(W.dim()));
}

struct SlopeReport {
  std::size_t lie_dim = 0;
  std::size_t n = 0;
  Rational alpha;
  ExtRational gamma;
  Subspace witness;
  Subspace maximal_U;
  std::vector<std::size_t> d;  ///< d[r] = max dim g_W over r-dimensional W, for r = 0..n
  i64 subspaces_scanned = 0;
  i64 minimizer_count = 0;

  SlopeReport(const Field& f, std::size_t ambient) : witness(f, ambient), maximal_U(f, ambient) {}
};

/// Stabilizer dimension of every subspace in the given pivot blocks, in enumeration order.
inline std::vector<int> stabilizer_dims_of_grassmannian(const LieAlgebraRep& g, const std::vector<PivotBlock>& blocks,
                                                         const ScanOptions& opt) {
  std::vector<i64> offsets{0};
  for (const auto& b : blocks) offsets.push_back(checked::add(offsets.back(), b.size));
  const std::size_t total = static_cast<std::size_t>(offsets.back());
  return parallel_map<int>(total, opt.resolved_workers(), [&](std::size_t idx) {
    auto it = std::upper_bound(offsets.begin(), offsets.end(), static_cast<i64>(idx));
    std::size_t b = static_cast<std::size_t>(it - offsets.begin()) - 1;
    auto W = block_subspace(g.field(), g.n(), blocks[b], static_cast<i64>(idx) - offsets[b]);
    return static_cast<int>(stabilizer_dim(g, W));
  });
}

inline void guard_grassmannian(const LieAlgebraRep& g, const ScanOptions& opt) {
  i64 total = count_nonzero_subspaces(g.n(), g.field().size());
  if (total > opt.cap)
    throw EnumerationTooLarge("slope scan needs " + std::to_string(total) + " subspaces of " + g.field().str() + "^" +
                              std::to_string(g.n()) + ", cap is " + std::to_string(opt.cap));
}

/// Exact alpha(g) by a full scan of all nonzero subspaces.
///
/// The witness is the least-dimensional minimizer that is least in row-major
/// order of its RREF; maximal_U is the sum of all minimizers.
inline SlopeReport alpha(const LieAlgebraRep& g, const ScanOptions& opt = {}) {
  guard_grassmannian(g, opt);
  const std::size_t n = g.n();
  const i64 k = static_cast<i64>(g.dim());
  SlopeReport rep(g.field(), n);
  rep.lie_dim = g.dim();
  rep.n = n;
  rep.d.assign(n + 1, 0);
  rep.d[0] = g.dim();

  std::vector<std::vector<PivotBlock>> blocks(n + 1);
  std::vector<std::vector<int>> dims(n + 1);
  for (std::size_t r = 1; r <= n; ++r) {
    blocks[r] = pivot_blocks(n, r, g.field().size());
    dims[r] = stabilizer_dims_of_grassmannian(g, blocks[r], opt);
    rep.subspaces_scanned += static_cast<i64>(dims[r].size());
    rep.d[r] = static_cast<std::size_t>(*std::max_element(dims[r].begin(), dims[r].end()));
  }
  std::optional<Rational> best;
  std::size_t best_r = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    Rational v(k - static_cast<i64>(rep.d[r]), static_cast<i64>(r));
    if (!best || v < *best) {
      best = v;
      best_r = r;
    }
  }
  rep.alpha = *best;
  rep.gamma = ExtRational::reciprocal(rep.alpha);

  std::optional<Subspace> witness;
  Subspace U(g.field(), n);
  for (std::size_t r = 1; r <= n; ++r) {
    if (Rational(k - static_cast<i64>(rep.d[r]), static_cast<i64>(r)) != rep.alpha) continue;
    std::size_t idx = 0;
    for (const auto& block : blocks[r])
      for (i64 i = 0; i < block.size; ++i, ++idx) {
        if (dims[r][idx] != static_cast<int>(rep.d[r])) continue;
        auto W = block_subspace(g.field(), n, block, i);
        ++rep.minimizer_count;
        if (r == best_r && (!witness || canonical_less(W, *witness))) witness = W;
        if (!U.contains(W)) U = U + W;
      }
  }
  rep.witness = *witness;
  rep.maximal_U = U;
  if (slope_at(g, U) != rep.alpha)
    throw VerificationFailure("sum of all minimizers has slope " + slope_at(g, U).str() + ", expected " + rep.alpha.str());
  return rep;
}

/// d_r for r = 0..n.
inline std::vector<std::size_t> partial_slopes(const LieAlgebraRep& g, const ScanOptions& opt = {}) { return alpha(g, opt).d; }

/// Pairwise checks of the slope axioms over every pair of nonzero subspaces.
struct SlopeAxiomReport {
  i64 subspaces = 0;
  i64 pairs_checked = 0;
  i64 submodularity_violations = 0;
  i64 minimizer_pairs = 0;
  i64 closure_violations = 0;
  bool maximal_U_is_unique = false;
  std::string first_violation;

  bool ok() const { return submodularity_violations == 0 && closure_violations == 0 && maximal_U_is_unique; }
};

/// Submodularity of W -> dim g - dim g_W and closure of minimizers under sums.
inline SlopeAxiomReport verify_slope_axioms(const LieAlgebraRep& g, const ScanOptions& opt = {}) {
  guard_grassmannian(g, opt);
  const std::size_t n = g.n();
  std::vector<Subspace> subs;
  for (std::size_t r = 1; r <= n; ++r)
    enumerate_subspaces(g.field(), n, r, [&](const Subspace& s) { subs.push_back(s); }, opt.cap);
  const i64 count = static_cast<i64>(subs.size());
  if (checked::mul(count, count) > opt.cap) throw EnumerationTooLarge("pair scan of " + std::to_string(count) + " subspaces exceeds cap");
  const i64 k = static_cast<i64>(g.dim());
  std::vector<i64> codim = parallel_map<i64>(subs.size(), opt.resolved_workers(),
                                             [&](std::size_t i) { return k - static_cast<i64>(stabilizer_dim(g, subs[i])); });
  auto rep_alpha = alpha(g, opt);

  SlopeAxiomReport out;
  out.subspaces = count;
  struct Row {
    i64 checked = 0, violations = 0, min_pairs = 0, closure = 0;
    std::string first;
  };
  auto rows = parallel_map<Row>(subs.size(), opt.resolved_workers(), [&](std::size_t a) {
    Row row;
    for (std::size_t b = 0; b < subs.size(); ++b) {
      auto sum = subs[a] + subs[b];
      auto cap = subs[a].intersect(subs[b]);
      // alpha(W) dim W = dim g - dim g_W, so the inequality is about codimensions of stabilizers
      i64 lhs = k - static_cast<i64>(stabilizer_dim(g, sum));
      if (!cap.is_zero()) lhs += k - static_cast<i64>(stabilizer_dim(g, cap));
      ++row.checked;
      if (lhs > codim[a] + codim[b]) {
        ++row.violations;
        if (row.first.empty()) row.first = subs[a].str() + " + " + subs[b].str();
      }
      bool min_a = Rational(codim[a], static_cast<i64>(subs[a].dim())) == rep_alpha.alpha;
      bool min_b = Rational(codim[b], static_cast<i64>(subs[b].dim())) == rep_alpha.alpha;
      if (min_a && min_b) {
        ++row.min_pairs;
        if (slope_at(g, sum) != rep_alpha.alpha) ++row.closure;
      }
    }
    return row;
  });
  for (const auto& r : rows) {
    out.pairs_checked += r.checked;
    out.submodularity_violations += r.violations;
    out.minimizer_pairs += r.min_pairs;
    out.closure_violations += r.closure;
    if (out.first_violation.empty()) out.first_violation = r.first;
  }
  // every minimizer lies in U and U is itself a minimizer, so U is the unique maximal one
  bool contains_all = true;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (Rational(codim[i], static_cast<i64>(subs[i].dim())) == rep_alpha.alpha && !rep_alpha.maximal_U.contains(subs[i]))
      contains_all = false;
  out.maximal_U_is_unique = contains_all && slope_at(g, rep_alpha.maximal_U) == rep_alpha.alpha;
  return out;
}

/// Result of the min-over-subsets formula on a decomposition V = V_1 + ... + V_s.
struct IsotypicSlopeReport {
  Rational alpha_isotypic;
  std::vector<std::size_t> witness_I;  ///< 1-based component indices
  std::vector<std::pair<std::vector<std::size_t>, Rational>> subset_table;
  std::optional<Rational> alpha_brute;
  bool agrees = true;
  bool degenerate = false;  ///< alpha = 0, gamma infinite
  ExtRational gamma;
  /// Filled by the finite_groups layer when a group model is available.
  std::optional<Rational> alpha_group;
  bool lie_group_divergence = false;
};

/// Checks that the components are g-invariant, independent, and span F^n.
inline void check_decomposition(const LieAlgebraRep& g, const std::vector<Subspace>& comps) {
  if (comps.empty()) throw InputError("empty decomposition");
  const Field& f = g.field();
  std::size_t total = 0;
  Subspace sum(f, g.n());
  for (const auto& V : comps) {
    if (V.ambient_dim() != g.n() || !(V.field() == f)) throw InputError("component lives in a different space");
    if (V.is_zero()) throw InputError("zero component in decomposition");
    for (const auto& B : g.basis())
      for (std::size_t i = 0; i < V.dim(); ++i) {
        std::vector<i64> img(g.n(), 0);
        auto v = V.basis().row(i);
        for (std::size_t r = 0; r < g.n(); ++r)
          for (std::size_t c = 0; c < g.n(); ++c) img[r] = f.add(img[r], f.mul(B(r, c), v[c]));
        if (!V.contains(img)) throw InputError("component " + V.str() + " is not invariant");
      }
    total += V.dim();
    sum = sum + V;
  }
  if (sum.dim() != g.n()) throw InputError("components do not span the ambient space");
  if (total != g.n()) throw InputError("components are not independent");
}

/// min over nonempty I of (dim g - dim g_{V_I}) / dim V_I.
inline IsotypicSlopeReport alpha_via_isotypic(const LieAlgebraRep& g, const std::vector<Subspace>& comps, bool compare_brute = true,
                                              const ScanOptions& opt = {}) {
  check_decomposition(g, comps);
  const std::size_t s = comps.size();
  if (s > 20) throw EnumerationTooLarge("too many components for the subset formula");
  IsotypicSlopeReport rep;
  std::optional<Rational> best;
  for (std::size_t mask = 1; mask < (std::size_t{1} << s); ++mask) {
    std::vector<std::size_t> I;
    Subspace VI(g.field(), g.n());
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1) {
        I.push_back(i + 1);
        VI = VI + comps[i];
      }
    Rational v = slope_at(g, VI);
    rep.subset_table.emplace_back(I, v);
    if (!best || v < *best || (v == *best && I < rep.witness_I)) {
      best = v;
      rep.witness_I = I;
    }
  }
  std::sort(rep.subset_table.begin(), rep.subset_table.end());
  rep.alpha_isotypic = *best;
  rep.gamma = ExtRational::reciprocal(*best);
  rep.degenerate = best->is_zero();
  if (compare_brute) {
    rep.alpha_brute = alpha(g, opt).alpha;
    rep.agrees = *rep.alpha_brute == rep.alpha_isotypic;
  }
  return rep;
}

/// alpha and U over F_ell versus over F_{ell^2}.
struct BaseChangeReport {
  Rational alpha_base;
  Rational alpha_extended;
  std::size_t U_dim_base = 0;
  std::size_t U_dim_extended = 0;
  bool U_matches = false;

  bool ok() const { return alpha_base == alpha_extended && U_matches; }
};

inline BaseChangeReport base_change_check(const LieAlgebraRep& g, const ScanOptions& opt = {}) {
  if (g.field().degree() != 1) throw DomainError("base change check starts from a prime field");
  Field big = g.field().extension();
  auto base = alpha(g, opt);
  auto ext = alpha(g.extend_to(big), opt);
  BaseChangeReport rep;
  rep.alpha_base = base.alpha;
  rep.alpha_extended = ext.alpha;
  rep.U_dim_base = base.maximal_U.dim();
  rep.U_dim_extended = ext.maximal_U.dim();
  rep.U_matches = ext.maximal_U == base.maximal_U.extend_to(big);
  return rep;
}

}  // namespace slopes
