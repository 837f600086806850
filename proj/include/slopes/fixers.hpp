#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/group_schemes.hpp"
#include "slopes/groups.hpp"
#include "slopes/parallel.hpp"
#include "slopes/slope.hpp"
#include "slopes/subspace.hpp"

namespace slopes {

/// A positive real of the form power^(1/root), kept exact.
struct RootRatio {
  Rational power{1};
  i64 root = 1;

  std::string str() const { return root == 1 ? power.str() : "(" + power.str() + ")^(1/" + std::to_string(root) + ")"; }
  friend bool operator==(const RootRatio&, const RootRatio&) = default;
};

namespace detail {

inline Rational rational_pow(const Rational& x, i64 e) {
  Rational r(1);
  for (i64 i = 0; i < e; ++i) r *= x;
  return r;
}

/// index / |H|^exponent as power^(1/q) with exponent = p/q.
inline RootRatio ratio_to_power(i64 index, i64 order, const Rational& exponent) {
  const i64 p = exponent.num(), q = exponent.den();
  return {Rational(checked::pow(index, static_cast<int>(q))) / rational_pow(Rational(order), p), q};
}

}  // namespace detail

/// x^(1/a.root) < y^(1/b.root), compared after raising both sides to a.root * b.root.
inline bool operator<(const RootRatio& a, const RootRatio& b) {
  return detail::rational_pow(a.power, b.root) < detail::rational_pow(b.power, a.root);
}

/// A finite point group together with the slope data of its Lie algebra.
struct FixerContext {
  std::string id;
  FiniteMatrixGroup group;
  LieAlgebraRep lie;
  SlopeReport slope;
  std::optional<GroupScheme> scheme;  ///< needed for the devissage, which enumerates stabilizer schemes

  i64 ell() const { return group.ring().ell(); }
  int depth() const { return group.ring().exponent(); }
  /// dim G - d_1.
  i64 delta() const { return static_cast<i64>(lie.dim()) - static_cast<i64>(slope.d.at(1)); }

  static FixerContext from_scheme(const GroupScheme& S, i64 ell, int m, const ScanOptions& opt = {}) {
    auto lie = tangent_lie_algebra(S, ell);
    auto slope = alpha(lie, opt);
    return {S.name, FiniteMatrixGroup::from_scheme(S, ell, m, opt), std::move(lie), std::move(slope), S};
  }

  static FixerContext from_group(std::string id, FiniteMatrixGroup group, LieAlgebraRep lie, const ScanOptions& opt = {}) {
    if (lie.n() != group.n() || lie.field().characteristic() != group.ring().ell() || lie.field().degree() != 1)
      throw InputError("Lie algebra does not match the group's ambient space");
    auto slope = alpha(lie, opt);
    return {std::move(id), std::move(group), std::move(lie), std::move(slope), std::nullopt};
  }
};

/// Every cyclic subgroup of (Z/ell^m)^n, the trivial one included, ordered by canonical generator.
///
/// The canonical generator of <v> is the least u v over units u.
inline std::vector<SnfSubgroup> cyclic_subgroups(const ResidueRing& ring, std::size_t n, const ScanOptions& opt = {}) {
  const i64 N = ring.modulus();
  i64 total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total = checked::mul(total, N);
    if (total > opt.cap) throw EnumerationTooLarge("cyclic sweep needs " + std::to_string(N) + "^" + std::to_string(n) + " vectors");
  }
  std::set<std::vector<i64>> canon;
  std::vector<i64> v(n, 0);
  for (i64 idx = 0; idx < total; ++idx) {
    i64 t = idx;
    for (std::size_t j = n; j-- > 0;) {
      v[j] = t % N;
      t /= N;
    }
    std::vector<i64> best = v;
    for (i64 u = 2; u < N; ++u) {
      if (!ring.is_unit(u)) continue;
      std::vector<i64> w(n);
      for (std::size_t j = 0; j < n; ++j) w[j] = ring.mul(u, v[j]);
      if (w < best) best = std::move(w);
    }
    canon.insert(std::move(best));
  }
  std::vector<SnfSubgroup> out;
  for (const auto& g : canon) out.push_back(snf_decompose(ring, n, {g}));
  return out;
}

/// Every subgroup of (Z/ell^m)^2, one per Hermite normal form [[a, b], [0, d]] of a lattice containing N Z^2.
inline std::vector<SnfSubgroup> all_subgroups_rank2(const ResidueRing& ring) {
  const i64 N = ring.modulus();
  if (N > 27) throw EnumerationTooLarge("the all-subgroups sweep is limited to ell^m <= 27, got " + std::to_string(N));
  std::vector<SnfSubgroup> out;
  for (i64 a = 1; a <= N; ++a) {
    if (N % a != 0) continue;
    for (i64 d = 1; d <= N; ++d) {
      if (N % d != 0) continue;
      for (i64 b = 0; b < d; ++b)
        if (((N / a) * b) % d == 0) out.push_back(snf_decompose(ring, 2, {{a % N, b}, {0, d % N}}));
    }
  }
  return out;
}

enum class SubgroupFamily { cyclic, all, supplied };

inline const char* to_string(SubgroupFamily f) {
  switch (f) {
    case SubgroupFamily::cyclic: return "cyclic";
    case SubgroupFamily::all: return "all";
    case SubgroupFamily::supplied: return "supplied";
  }
  return "?";
}

struct FixIndexReport {
  std::string group_id;
  SnfSubgroup H;
  i64 fixer_order = 0;
  i64 index = 0;
  Rational exponent_target;  ///< delta for cyclic H, alpha = 1/gamma otherwise
  RootRatio observed_ratio;  ///< index / |H|^exponent_target
  RootRatio gamma_ratio;     ///< index / |H|^alpha, the quantity the sweep floor is taken over
};

struct FixSweepReport {
  std::string group_id;
  SubgroupFamily family = SubgroupFamily::cyclic;
  Rational alpha;
  i64 delta = 0;
  std::vector<FixIndexReport> reports;
  RootRatio ratio_floor;                 ///< min gamma_ratio over the sweep
  std::optional<RootRatio> cyclic_floor; ///< min observed_ratio over cyclic H
  std::optional<Rational> expected_floor;
  bool meets_expectation = true;
};

inline FixIndexReport fix_index(const FixerContext& ctx, const SnfSubgroup& H, const ScanOptions& opt = {}) {
  auto F = fixer(ctx.group, H, opt);
  if (checked::mul(F.index, F.order()) != ctx.group.order()) throw VerificationFailure("index times fixer order is not |G|");
  FixIndexReport r;
  r.group_id = ctx.id;
  r.H = H;
  r.fixer_order = F.order();
  r.index = F.index;
  r.exponent_target = H.rank() <= 1 ? Rational(ctx.delta()) : ctx.slope.alpha;
  r.observed_ratio = detail::ratio_to_power(r.index, H.order(), r.exponent_target);
  r.gamma_ratio = detail::ratio_to_power(r.index, H.order(), ctx.slope.alpha);
  return r;
}

/// Fixer indices over a family of subgroups of (Z/ell^m)^n, with the empirical constant in index >= c |H|^alpha.
inline FixSweepReport fix_index_sweep(const FixerContext& ctx, SubgroupFamily family, const std::vector<SnfSubgroup>& supplied = {},
                                      std::optional<Rational> expected_floor = std::nullopt, const ScanOptions& opt = {}) {
  std::vector<SnfSubgroup> family_members;
  switch (family) {
    case SubgroupFamily::cyclic: family_members = cyclic_subgroups(ctx.group.ring(), ctx.group.n(), opt); break;
    case SubgroupFamily::all:
      if (ctx.group.n() != 2) throw EnumerationTooLarge("the all-subgroups sweep is limited to n = 2");
      family_members = all_subgroups_rank2(ctx.group.ring());
      break;
    case SubgroupFamily::supplied:
      for (const auto& H : supplied)
        if (H.modulus() != ctx.group.ring().modulus() || H.ambient_dim() != ctx.group.n()) throw InputError("supplied subgroup lives in a different module");
      family_members = supplied;
      break;
  }
  ScanOptions inner = opt;
  inner.workers = 1;
  FixSweepReport sweep;
  sweep.group_id = ctx.id;
  sweep.family = family;
  sweep.alpha = ctx.slope.alpha;
  sweep.delta = ctx.delta();
  sweep.reports = parallel_map<FixIndexReport>(family_members.size(), opt.resolved_workers(),
                                               [&](std::size_t i) { return fix_index(ctx, family_members[i], inner); });
  for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
    const auto& r = sweep.reports[i];
    if (i == 0 || r.gamma_ratio < sweep.ratio_floor) sweep.ratio_floor = r.gamma_ratio;
    if (r.H.rank() <= 1 && (!sweep.cyclic_floor || r.observed_ratio < *sweep.cyclic_floor)) sweep.cyclic_floor = r.observed_ratio;
  }
  // index >= floor |H|^alpha, checked directly rather than through the minimum
  for (const auto& r : sweep.reports) {
    const i64 p = sweep.alpha.num(), q = sweep.alpha.den();
    Rational lhs(checked::pow(r.index, static_cast<int>(q)));
    Rational rhs = detail::rational_pow(sweep.ratio_floor.power, q / sweep.ratio_floor.root) * detail::rational_pow(Rational(r.H.order()), p);
    if (lhs < rhs) throw VerificationFailure("index " + std::to_string(r.index) + " falls below the sweep floor");
  }
  sweep.expected_floor = expected_floor;
  if (expected_floor)
    sweep.meets_expectation = !(sweep.ratio_floor < RootRatio{*expected_floor, 1});
  return sweep;
}

/// One layer of the devissage: the kernel of Fix(W_j)(ell^{m_j}) -> Fix(W_j)(ell^{m_{j+1}}).
struct DevissageLayer {
  std::size_t j = 0;
  int m_j = 0;
  int m_next = 0;
  i64 kernel = 0;
  std::size_t d_j = 0;      ///< partial slope d_j of the Lie algebra
  i64 bound = 0;            ///< ell^{d_j (m_j - m_next)}
  Rational observed_constant;  ///< kernel / bound
};

struct DevissageTrace {
  std::string group_id;
  SnfSubgroup H;
  std::vector<DevissageLayer> layers;
  i64 product = 1;           ///< product of the layer kernels
  i64 fixer_top = 1;         ///< |fixer of H' in G(ell^{m_1})|, H' generated by ell^{m_1 - m_i} e_i
  bool dominates = true;     ///< product >= fixer_top
  i64 index = 1;             ///< index of the fixer of H in G(ell^m)
};

inline DevissageTrace devissage_bound(const FixerContext& ctx, const SnfSubgroup& H, const ScanOptions& opt = {}) {
  if (!ctx.scheme) throw InputError("the devissage needs a group scheme to enumerate stabilizer schemes");
  if (H.modulus() != ctx.group.ring().modulus() || H.ambient_dim() != ctx.group.n()) throw InputError("subgroup lives in a different module");
  const i64 ell = ctx.ell();
  const std::size_t n = ctx.group.n(), r = H.rank();
  DevissageTrace trace;
  trace.group_id = ctx.id;
  trace.H = H;
  trace.index = fix_index(ctx, H, opt).index;
  if (r == 0) return trace;

  std::vector<int> ms(H.exponents.begin(), H.exponents.end());
  ms.push_back(0);
  for (std::size_t j = 1; j <= r; ++j) {
    DevissageLayer L;
    L.j = j;
    L.m_j = ms[j - 1];
    L.m_next = ms[j];
    L.d_j = ctx.slope.d.at(j);
    L.bound = checked::pow(ell, static_cast<int>(L.d_j) * (L.m_j - L.m_next));
    if (L.m_j == L.m_next) {
      L.kernel = 1;
    } else {
      IntMatrix W(0, n, 0);
      for (std::size_t i = 0; i < j; ++i) W.append_row(std::vector<i64>(H.adapted_basis.row(i).begin(), H.adapted_basis.row(i).end()));
      auto pts = FiniteMatrixGroup::from_scheme(ctx.scheme->stabilizer(W), ell, L.m_j, opt);
      const i64 step = L.m_next == 0 ? 1 : checked::pow(ell, L.m_next);
      L.kernel = 0;
      for (const auto& X : pts.elements()) {
        bool in_kernel = true;
        for (std::size_t k = 0; k < X.size() && in_kernel; ++k)
          if (mod(X[k] - (k % (n + 1) == 0 ? 1 : 0), step) != 0) in_kernel = false;
        if (in_kernel) ++L.kernel;
      }
    }
    L.observed_constant = Rational(L.kernel, L.bound);
    trace.product = checked::mul(trace.product, L.kernel);
    trace.layers.push_back(L);
  }

  const int m1 = ms[0];
  const ResidueRing top(ell, m1);
  FiniteMatrixGroup G1 = m1 == ctx.depth() ? ctx.group : ctx.group.reduce(m1);
  std::vector<std::vector<i64>> gens;
  for (std::size_t i = 0; i < r; ++i) {
    const i64 scale = checked::pow(ell, m1 - ms[i]);
    std::vector<i64> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = top.mul(scale, H.adapted_basis(i, k));
    gens.push_back(std::move(g));
  }
  trace.fixer_top = fixer_of_vectors(G1, gens, "H'", opt).order();
  trace.dominates = trace.product >= trace.fixer_top;
  if (!trace.dominates)
    throw VerificationFailure("devissage product " + std::to_string(trace.product) + " is below the fixer order " + std::to_string(trace.fixer_top));
  return trace;
}

/// Index growth of the fixers of <ell^{m-e} w> as e increases, w a unimodular lift of a line achieving d_1.
struct SaturationReport {
  std::string group_id;
  std::vector<i64> w;
  i64 delta = 0;
  std::vector<i64> indices;  ///< at e - 1 for e = 1..m
  std::vector<int> increments;  ///< log_ell(index_{e+1} / index_e), -1 when not an exact power
  bool saturated = true;        ///< every increment equals delta
};

/// The least line (in enumeration order) whose stabilizer has dimension d_1, lifted through its RREF.
inline std::vector<i64> d1_line(const LieAlgebraRep& g, std::size_t d1) {
  for (const auto& block : pivot_blocks(g.n(), 1, g.field().size()))
    for (i64 i = 0; i < block.size; ++i) {
      auto W = block_subspace(g.field(), g.n(), block, i);
      if (stabilizer_dim(g, W) == d1) return {W.basis().row(0).begin(), W.basis().row(0).end()};
    }
  throw VerificationFailure("no line attains d_1");
}

namespace detail {

inline SaturationReport finish_saturation(std::string id, std::vector<i64> w, i64 delta, std::vector<i64> indices, i64 ell) {
  SaturationReport rep{std::move(id), std::move(w), delta, std::move(indices), {}, true};
  for (std::size_t e = 0; e + 1 < rep.indices.size(); ++e) {
    int inc = -1;
    if (rep.indices[e + 1] % rep.indices[e] == 0) {
      i64 q = rep.indices[e + 1] / rep.indices[e];
      int k = 0;
      while (q % ell == 0) {
        q /= ell;
        ++k;
      }
      if (q == 1) inc = k;
    }
    rep.increments.push_back(inc);
    if (inc != delta) rep.saturated = false;
  }
  return rep;
}

}  // namespace detail

/// Fixer indices computed inside the enumerated G(ell^m).
inline SaturationReport exponent_saturation(const FixerContext& ctx, const ScanOptions& opt = {}) {
  const i64 ell = ctx.ell();
  const int m = ctx.depth();
  auto w = d1_line(ctx.lie, ctx.slope.d.at(1));
  std::vector<i64> indices;
  for (int e = 1; e <= m; ++e) {
    const i64 scale = checked::pow(ell, m - e);
    std::vector<i64> v(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) v[k] = ctx.group.ring().mul(scale, w[k]);
    indices.push_back(fixer_of_vectors(ctx.group, {v}, "", opt).index);
  }
  return detail::finish_saturation(ctx.id, std::move(w), ctx.delta(), std::move(indices), ell);
}

/// Size of the orbit of v under the group generated by `acting` inside GL_n(Z/N).
inline i64 orbit_size(const ResidueRing& ring, const std::vector<IntMatrix>& acting, std::vector<i64> v, const ScanOptions& opt = {}) {
  const i64 N = ring.modulus();
  for (auto& x : v) x = ring.reduce(x);
  std::vector<Element> gens;
  for (const auto& g : acting) {
    if (g.rows() != v.size() || g.cols() != v.size()) throw InputError("acting matrix has the wrong shape");
    gens.push_back(g.data());
  }
  std::unordered_set<Element, ElementHash> seen{v};
  std::deque<std::vector<i64>> frontier{v};
  while (!frontier.empty()) {
    auto x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gens) {
      auto y = detail::mat_apply(g, x, v.size(), N);
      if (seen.insert(y).second) {
        if (static_cast<i64>(seen.size()) > opt.cap) throw EnumerationTooLarge("orbit exceeded the cap of " + std::to_string(opt.cap));
        frontier.push_back(std::move(y));
      }
    }
  }
  return static_cast<i64>(seen.size());
}

struct SmallestOrbit {
  i64 size = 0;
  std::vector<i64> representative;  ///< least vector of the first smallest orbit
};

/// The smallest orbit on unimodular vectors of (Z/N)^n, found by partitioning all of them.
inline SmallestOrbit smallest_unimodular_orbit(const ResidueRing& ring, std::size_t n, const std::vector<IntMatrix>& acting,
                                               const ScanOptions& opt = {}) {
  const i64 N = ring.modulus();
  i64 total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total = checked::mul(total, N);
    if (total > opt.cap) throw EnumerationTooLarge("orbit partition needs " + std::to_string(N) + "^" + std::to_string(n) + " vectors");
  }
  for (const auto& g : acting)
    if (g.rows() != n || g.cols() != n) throw InputError("acting matrix has the wrong shape");
  auto encode = [&](const std::vector<i64>& v) {
    i64 c = 0;
    for (auto x : v) c = c * N + x;
    return c;
  };
  auto decode = [&](i64 c) {
    std::vector<i64> v(n);
    for (std::size_t j = n; j-- > 0;) {
      v[j] = c % N;
      c /= N;
    }
    return v;
  };
  std::vector<char> seen(static_cast<std::size_t>(total), 0);
  SmallestOrbit best;
  for (i64 c = 0; c < total; ++c) {
    if (seen[static_cast<std::size_t>(c)]) continue;
    auto v = decode(c);
    if (std::none_of(v.begin(), v.end(), [&](i64 x) { return ring.is_unit(x); })) continue;
    seen[static_cast<std::size_t>(c)] = 1;
    std::vector<i64> stack{c};
    i64 size = 0;
    while (!stack.empty()) {
      auto x = decode(stack.back());
      stack.pop_back();
      ++size;
      for (const auto& g : acting) {
        i64 y = encode(detail::mat_apply(g.data(), x, n, N));
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          stack.push_back(y);
        }
      }
    }
    if (best.size == 0 || size < best.size) best = {size, std::move(v)};
  }
  return best;
}

/// Orbit form of the experiment, for groups known only through generators of G(Z/ell^e).
///
/// The fixer of <ell^{m-e} w> in G(ell^m) has index |G(ell^e) w| when reduction G(ell^m) -> G(ell^e) is onto.
/// At each level w ranges over the unimodular vectors with the smallest orbit, so a line achieving d_1 only
/// modulo ell does not get mistaken for one achieving it over Z_ell.
inline SaturationReport exponent_saturation(std::string id, const LieAlgebraRep& lie, int m,
                                            const std::function<std::vector<IntMatrix>(int)>& acting_mod, const ScanOptions& opt = {}) {
  const i64 ell = lie.field().characteristic();
  if (lie.field().degree() != 1) throw InputError("saturation runs over a prime field");
  auto slope = alpha(lie, opt);
  const i64 delta = static_cast<i64>(lie.dim()) - static_cast<i64>(slope.d.at(1));
  std::vector<i64> indices, w;
  for (int e = 1; e <= m; ++e) {
    auto orb = smallest_unimodular_orbit(ResidueRing(ell, e), lie.n(), acting_mod(e), opt);
    indices.push_back(orb.size);
    w = std::move(orb.representative);
  }
  return detail::finish_saturation(std::move(id), std::move(w), delta, std::move(indices), ell);
}

}  // namespace slopes
