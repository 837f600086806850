#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "slopes/catalog.hpp"
#include "slopes/errors.hpp"
#include "slopes/fixers.hpp"
#include "slopes/groups.hpp"
#include "slopes/slope.hpp"
#include "slopes/subspace.hpp"

namespace slopes {

/// Prime at which model dimensions are computed when no table is supplied.
inline constexpr i64 kReferencePrime = 10007;

/// How a monodromy model names its group: a Lie catalog entry, integral spanning matrices, or a block product.
struct GroupSpec {
  enum class Kind { catalog, matrices, product };
  Kind kind = Kind::catalog;
  std::string id;                   ///< catalog entry
  std::size_t size = 0;             ///< its parameter, as in catalog::lie_by_name
  std::size_t dim_n = 0;            ///< ambient dimension of `spanning`
  std::vector<IntMatrix> spanning;  ///< integral basis of the Lie algebra
  std::vector<GroupSpec> parts;     ///< block-diagonal factors

  static GroupSpec catalog_ref(std::string id, std::size_t size) { return {Kind::catalog, std::move(id), size, 0, {}, {}}; }
  static GroupSpec matrices(std::size_t n, std::vector<IntMatrix> spanning) {
    for (const auto& m : spanning)
      if (m.rows() != n || m.cols() != n) throw InputError("spanning matrix is not " + std::to_string(n) + "x" + std::to_string(n));
    return {Kind::matrices, "", 0, n, std::move(spanning), {}};
  }
  static GroupSpec product(std::vector<GroupSpec> parts) {
    if (parts.empty()) throw InputError("empty product");
    return {Kind::product, "", 0, 0, {}, std::move(parts)};
  }

  LieAlgebraRep lie(const Field& f) const {
    switch (kind) {
      case Kind::catalog: return catalog::lie_by_name(id, f, size);
      case Kind::matrices: return LieAlgebraRep::span(f, dim_n, spanning);
      case Kind::product: {
        LieAlgebraRep acc = parts[0].lie(f);
        for (std::size_t i = 1; i < parts.size(); ++i) acc = catalog::direct_sum(acc, parts[i].lie(f));
        return acc;
      }
    }
    throw InputError("unknown group kind");
  }

  std::size_t n() const {
    switch (kind) {
      case Kind::catalog: return lie(Field::prime(kReferencePrime)).n();
      case Kind::matrices: return dim_n;
      case Kind::product: {
        std::size_t s = 0;
        for (const auto& p : parts) s += p.n();
        return s;
      }
    }
    return 0;
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// A simple factor A_i of A, occurring with multiplicity m_i on the listed coordinates of V.
struct ModelFactor {
  std::string label;
  std::size_t dim = 0;           ///< dim A_i
  std::size_t multiplicity = 1;  ///< m_i
  std::vector<std::size_t> coordinates;  ///< 0-based, 2 dim A_i m_i of them

  friend bool operator==(const ModelFactor&, const ModelFactor&) = default;
};

/// A ~ prod A_i^{m_i} with a surrogate for its monodromy group on V = F^{2g}.
struct MonodromyModel {
  std::string name;
  std::size_t n = 0;
  GroupSpec group;
  std::vector<ModelFactor> factors;
  std::map<std::vector<std::size_t>, std::size_t> group_dims;  ///< supplied dim G_{A_I}, keyed by 1-based I; empty means compute
  bool mt_attested = false;  ///< the surrogate's slope is attested to equal the subset formula
  bool cm_power = false;     ///< A is isogenous to a power of a CM elliptic curve

  std::size_t abelian_dim() const { return n / 2; }

  void validate() const {
    if (n == 0 || n % 2 != 0) throw InputError("model dimension must be even and positive");
    if (group.n() != n) throw InputError("group acts on dimension " + std::to_string(group.n()) + ", model has " + std::to_string(n));
    if (factors.empty()) throw InputError("model has no factors");
    std::vector<int> used(n, 0);
    std::size_t total = 0;
    for (const auto& f : factors) {
      if (f.dim == 0 || f.multiplicity == 0) throw InputError("factor " + f.label + " is empty");
      if (f.coordinates.size() != 2 * f.dim * f.multiplicity)
        throw InputError("factor " + f.label + " needs " + std::to_string(2 * f.dim * f.multiplicity) + " coordinates");
      for (auto c : f.coordinates) {
        if (c >= n) throw InputError("coordinate out of range in factor " + f.label);
        if (used[c]++) throw InputError("coordinate " + std::to_string(c) + " used twice");
      }
      total += 2 * f.dim * f.multiplicity;
    }
    if (total != n) throw InputError("factors do not cover the model dimension");
    if (factors.size() > 20) throw EnumerationTooLarge("too many factors for the subset formula");
  }

  /// V_I for a 1-based subset I.
  Subspace component(const Field& f, const std::vector<std::size_t>& I) const {
    std::vector<std::vector<i64>> rows;
    for (auto i : I)
      for (auto c : factors.at(i - 1).coordinates) {
        std::vector<i64> e(n, 0);
        e[c] = 1;
        rows.push_back(std::move(e));
      }
    return Subspace::span(f, n, rows);
  }

  std::vector<Subspace> components(const Field& f) const {
    std::vector<Subspace> out;
    for (std::size_t i = 1; i <= factors.size(); ++i) out.push_back(component(f, {i}));
    return out;
  }

  std::size_t dim_A(const std::vector<std::size_t>& I) const {
    std::size_t d = 0;
    for (auto i : I) d += factors.at(i - 1).dim * factors.at(i - 1).multiplicity;
    return d;
  }

  /// dim G_{A_I} = dim G - dim G_{V_I}, from the table or computed at the reference prime.
  std::size_t dim_G(const std::vector<std::size_t>& I) const {
    if (auto it = group_dims.find(I); it != group_dims.end()) return it->second;
    const Field f = Field::prime(kReferencePrime);
    auto g = group.lie(f);
    return g.dim() - stabilizer_dim(g, component(f, I));
  }

  friend bool operator==(const MonodromyModel&, const MonodromyModel&) = default;
};

inline std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t s) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << s); ++mask) {
    std::vector<std::size_t> I;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1) I.push_back(i + 1);
    out.push_back(std::move(I));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Block product: the group is the direct product, factors are concatenated.
inline MonodromyModel product_model(const MonodromyModel& a, const MonodromyModel& b) {
  a.validate();
  b.validate();
  MonodromyModel out;
  out.name = a.name + "*" + b.name;
  out.n = a.n + b.n;
  out.group = GroupSpec::product({a.group, b.group});
  out.factors = a.factors;
  for (auto f : b.factors) {
    for (auto& c : f.coordinates) c += a.n;
    out.factors.push_back(std::move(f));
  }
  out.mt_attested = a.mt_attested && b.mt_attested;
  out.cm_power = false;
  if (!a.group_dims.empty() && !b.group_dims.empty()) {
    const std::size_t sa = a.factors.size();
    for (const auto& I : nonempty_subsets(out.factors.size())) {
      std::vector<std::size_t> Ia, Ib;
      for (auto i : I) (i <= sa ? Ia : Ib).push_back(i <= sa ? i : i - sa);
      out.group_dims[I] = (Ia.empty() ? 0 : a.dim_G(Ia)) + (Ib.empty() ? 0 : b.dim_G(Ib));
    }
  }
  return out;
}

namespace models {

inline ModelFactor factor(std::string label, std::size_t dim, std::size_t mult, std::size_t first) {
  ModelFactor f{std::move(label), dim, mult, {}};
  for (std::size_t c = 0; c < 2 * dim * mult; ++c) f.coordinates.push_back(first + c);
  return f;
}

inline MonodromyModel gsp(std::size_t g) {
  if (g == 0) throw InputError("g must be positive");
  return {"gsp" + std::to_string(g), 2 * g, GroupSpec::catalog_ref("gsp", g), {factor("A", g, 1, 0)}, {}, true, false};
}

inline MonodromyModel elliptic_noncm() { return {"elliptic_noncm", 2, GroupSpec::catalog_ref("gl", 2), {factor("E", 1, 1, 0)}, {}, true, false}; }

inline MonodromyModel cm_elliptic() { return {"cm_elliptic", 2, GroupSpec::catalog_ref("nonsplit_torus", 1), {factor("E", 1, 1, 0)}, {}, true, true}; }

inline MonodromyModel cm_elliptic_square() {
  IntMatrix J2(4, 4, 0);
  J2(0, 1) = -1;
  J2(1, 0) = 1;
  J2(2, 3) = -1;
  J2(3, 2) = 1;
  return {"cm_elliptic_square", 4, GroupSpec::matrices(4, {IntMatrix::identity(4), J2}), {factor("E", 1, 2, 0)}, {}, true, true};
}

inline MonodromyModel cm_pair() {
  return {"cm_pair", 4, GroupSpec::catalog_ref("cm_pair", 0), {factor("E1", 1, 1, 0), factor("E2", 1, 1, 2)}, {}, true, false};
}

inline MonodromyModel cm_surface() { return {"cm_surface", 4, GroupSpec::catalog_ref("cm_surface", 0), {factor("B", 2, 1, 0)}, {}, true, false}; }

inline MonodromyModel gl2_times_cm() {
  return {"gl2_times_cm", 4, GroupSpec::catalog_ref("gl2_times_cm", 0), {factor("E1", 1, 1, 0), factor("E2", 1, 1, 2)}, {}, true, false};
}

inline std::vector<std::string> names() { return {"gsp", "elliptic_noncm", "cm_elliptic", "cm_elliptic_square", "cm_pair", "cm_surface", "gl2_times_cm"}; }

/// Catalog lookup; `g` only matters for gsp.
inline MonodromyModel by_name(const std::string& name, std::size_t g = 2) {
  if (name == "gsp") return gsp(g);
  if (name == "elliptic_noncm") return elliptic_noncm();
  if (name == "cm_elliptic") return cm_elliptic();
  if (name == "cm_elliptic_square") return cm_elliptic_square();
  if (name == "cm_pair") return cm_pair();
  if (name == "cm_surface") return cm_surface();
  if (name == "gl2_times_cm") return gl2_times_cm();
  throw InputError("unknown model '" + name + "'");
}

/// Every catalog model, gsp at g = 1, 2.
inline std::vector<MonodromyModel> all() {
  std::vector<MonodromyModel> out{gsp(1), gsp(2)};
  for (const auto& n : names())
    if (n != "gsp") out.push_back(by_name(n));
  return out;
}

}  // namespace models

struct GammaReport {
  Rational gamma;
  std::vector<std::size_t> witness;  ///< lexicographically least maximizing I
  std::size_t numerator = 0;         ///< 2 dim A_I at the witness
  std::size_t denominator = 0;       ///< dim G_{A_I} at the witness
  std::vector<std::tuple<std::vector<std::size_t>, std::size_t, std::size_t>> table;  ///< (I, 2 dim A_I, dim G_{A_I})

  /// The unreduced ratio at the witness, e.g. "2/4".
  std::string fraction() const { return std::to_string(numerator) + "/" + std::to_string(denominator); }
};

/// max over nonempty I of 2 dim A_I / dim G_{A_I}.
inline GammaReport gamma_A(const MonodromyModel& model) {
  model.validate();
  GammaReport rep;
  std::optional<Rational> best;
  for (const auto& I : nonempty_subsets(model.factors.size())) {
    const std::size_t num = 2 * model.dim_A(I), den = model.dim_G(I);
    rep.table.emplace_back(I, num, den);
    if (den == 0) throw DomainError("dim G_{A_I} = 0 for I = " + std::to_string(I.front()) + "..: the exponent is infinite");
    Rational v(static_cast<i64>(num), static_cast<i64>(den));
    if (!best || *best < v) {  // subsets come in lexicographic order, so ties keep the first
      best = v;
      rep.witness = I;
      rep.numerator = num;
      rep.denominator = den;
    }
  }
  rep.gamma = *best;
  return rep;
}

struct GammaEllReport {
  i64 ell = 0;
  Rational alpha;
  ExtRational gamma;
  Subspace witness;
  Rational gamma_A;
  bool matches_gamma_A = false;
  std::string note;  ///< empty on agreement
};

/// 1/alpha of the surrogate over F_ell, checked against the subset formula.
inline GammaEllReport gamma_A_ell(const MonodromyModel& model, i64 ell, const ScanOptions& opt = {}) {
  const Rational gA = gamma_A(model).gamma;
  auto slope = alpha(model.group.lie(Field::prime(ell)), opt);
  GammaEllReport rep{ell, slope.alpha, slope.gamma, slope.witness, gA, slope.gamma == ExtRational(gA), ""};
  if (ExtRational(gA) > slope.gamma)
    throw VerificationFailure("gamma_A = " + gA.str() + " exceeds gamma_{A," + std::to_string(ell) + "} = " + slope.gamma.str());
  if (!rep.matches_gamma_A)
    rep.note = model.mt_attested ? "model error: the attested surrogate disagrees with the subset formula" : "conjecture-relevant divergence";
  return rep;
}

struct BetaReport {
  ExtRational value;
  i64 attained_at = 0;
  std::vector<GammaEllReport> per_prime;
  std::string caveat;
};

inline BetaReport beta_report(const MonodromyModel& model, const std::vector<i64>& primes, const ScanOptions& opt = {}) {
  if (primes.empty()) throw InputError("no primes supplied");
  BetaReport rep;
  for (auto ell : primes) {
    rep.per_prime.push_back(gamma_A_ell(model, ell, opt));
    if (rep.per_prime.size() == 1 || rep.value < rep.per_prime.back().gamma) {
      rep.value = rep.per_prime.back().gamma;
      rep.attained_at = ell;
    }
  }
  rep.caveat = "maximum over the supplied primes only; it is beta_A for the supplied models when they cover every prime";
  return rep;
}

/// d_1 from a scan of the lines of F^n.
inline std::size_t max_line_stabilizer(const LieAlgebraRep& g, const ScanOptions& opt = {}) {
  const i64 lines = (checked::pow(g.field().size(), static_cast<int>(g.n())) - 1) / (g.field().size() - 1);
  if (lines > opt.cap) throw EnumerationTooLarge("line scan needs " + std::to_string(lines) + " lines");
  auto dims = stabilizer_dims_of_grassmannian(g, pivot_blocks(g.n(), 1, g.field().size()), opt);
  return static_cast<std::size_t>(*std::max_element(dims.begin(), dims.end()));
}

struct DeltaReport {
  std::map<i64, i64> per_prime;        ///< dim G - d_1 over F_ell
  std::map<i64, i64> per_prime_split;  ///< dim G - d_1 over F_{ell^2}
  i64 delta = 0;
  i64 d = 0;
  bool degenerate = false;  ///< delta = 0: some surrogate fixes a nonzero vector
};

/// delta = min over primes of dim G - d_1; d is the same minimum on the quadratic extensions, where the tori split.
inline DeltaReport delta_and_d(const MonodromyModel& model, const std::vector<i64>& primes, const ScanOptions& opt = {}) {
  if (primes.empty()) throw InputError("no primes supplied");
  model.validate();
  DeltaReport rep;
  for (auto ell : primes) {
    auto g = model.group.lie(Field::prime(ell));
    const i64 dim = static_cast<i64>(g.dim());
    rep.per_prime[ell] = dim - static_cast<i64>(max_line_stabilizer(g, opt));
    rep.per_prime_split[ell] = dim - static_cast<i64>(max_line_stabilizer(g.extend_to(Field::quadratic(ell)), opt));
  }
  rep.delta = std::min_element(rep.per_prime.begin(), rep.per_prime.end(), [](auto& a, auto& b) { return a.second < b.second; })->second;
  rep.d = std::min_element(rep.per_prime_split.begin(), rep.per_prime_split.end(), [](auto& a, auto& b) { return a.second < b.second; })->second;
  rep.degenerate = rep.delta == 0;
  return rep;
}

enum class MasserVerdict { strict, equality_cm_power };

inline const char* to_string(MasserVerdict v) { return v == MasserVerdict::strict ? "strict" : "equality-CM-power"; }

struct MasserReport {
  i64 ell = 0;
  ExtRational gamma_ell;
  Rational dim_A;
  MasserVerdict verdict = MasserVerdict::strict;
};

/// gamma_{A,ell} <= dim A, with equality exactly on powers of a CM elliptic curve; anything else is a hard failure.
inline MasserReport masser_check(const MonodromyModel& model, i64 ell, const ScanOptions& opt = {}) {
  auto g = gamma_A_ell(model, ell, opt);
  MasserReport rep{ell, g.gamma, Rational(static_cast<i64>(model.abelian_dim())), MasserVerdict::strict};
  if (rep.gamma_ell > ExtRational(rep.dim_A))
    throw VerificationFailure(model.name + ": gamma_{A," + std::to_string(ell) + "} = " + rep.gamma_ell.str() + " exceeds dim A = " + rep.dim_A.str());
  const bool equal = rep.gamma_ell == ExtRational(rep.dim_A);
  if (equal != model.cm_power)
    throw VerificationFailure(model.name + (equal ? ": equality without the CM-power flag" : ": CM-power flag set but the bound is strict"));
  rep.verdict = equal ? MasserVerdict::equality_cm_power : MasserVerdict::strict;
  return rep;
}

struct TorsionExponentReport {
  std::string model;
  GammaReport gamma;
  BetaReport beta;
  DeltaReport delta;
  std::vector<MasserReport> masser;
};

inline TorsionExponentReport torsion_exponents(const MonodromyModel& model, const std::vector<i64>& primes, const ScanOptions& opt = {}) {
  TorsionExponentReport rep{model.name, gamma_A(model), beta_report(model, primes, opt), delta_and_d(model, primes, opt), {}};
  for (auto ell : primes) rep.masser.push_back(masser_check(model, ell, opt));
  return rep;
}

// ---------------------------------------------------------------------------
// Integral generators, for the orbit form of exponent saturation.

namespace detail {

/// Generators of (Z/ell^e)^*.
inline std::vector<i64> unit_generators(i64 ell, int e) {
  const i64 N = checked::pow(ell, e);
  if (ell == 2) {
    std::vector<i64> g;
    if (N > 2) g.push_back(N - 1);
    if (N > 4) g.push_back(5);
    return g;
  }
  // a primitive root mod ell^2 generates every (Z/ell^e)^*
  const i64 N2 = ell * ell, order = ell * (ell - 1);
  for (i64 r = 2; r < N2; ++r) {
    if (r % ell == 0) continue;
    i64 x = 1, k = 0;
    do {
      x = x * r % N2;
      ++k;
    } while (x != 1);
    if (k == order) return {r % N};
  }
  throw DomainError("no primitive root found");
}

inline IntMatrix diag(const std::vector<i64>& d) {
  IntMatrix X(d.size(), d.size(), 0);
  for (std::size_t i = 0; i < d.size(); ++i) X(i, i) = d[i];
  return X;
}

inline IntMatrix transvection(std::size_t n, std::size_t i, std::size_t j) {
  IntMatrix X = IntMatrix::identity(n);
  X(i, j) = 1;
  return X;
}

/// Units of the Z/N-span of `spanning` when that span is a ring containing the identity; nullopt otherwise.
inline std::optional<std::vector<Element>> algebra_units(const std::vector<IntMatrix>& spanning, std::size_t n, i64 ell, int e, const ScanOptions& opt) {
  const ResidueRing ring(ell, e);
  const i64 N = ring.modulus();
  const std::size_t k = spanning.size();
  i64 total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total = checked::mul(total, N);
    if (total > opt.cap) throw EnumerationTooLarge("algebra enumeration exceeds the cap");
  }
  std::set<Element> span;
  for (i64 idx = 0; idx < total; ++idx) {
    Element X(n * n, 0);
    i64 t = idx;
    for (std::size_t b = 0; b < k; ++b) {
      const i64 c = t % N;
      t /= N;
      for (std::size_t q = 0; q < n * n; ++q) X[q] = mod(X[q] + c * spanning[b].data()[q], N);
    }
    span.insert(std::move(X));
  }
  if (!span.count(identity_element(n))) return std::nullopt;
  for (const auto& a : spanning)
    for (const auto& b : spanning) {
      Element A = a.data(), B = b.data();
      for (auto& x : A) x = mod(x, N);
      for (auto& x : B) x = mod(x, N);
      if (!span.count(mat_mul(A, B, n, N))) return std::nullopt;
    }
  std::vector<Element> units;
  for (const auto& X : span)
    if (mod(determinant(IntMatrix(n, n, X)), ell) != 0) units.push_back(X);
  return units;
}

/// A generating subset, taken greedily in the given order.
inline std::vector<IntMatrix> greedy_generators(const ResidueRing& ring, std::size_t n, const std::vector<Element>& elements, const ScanOptions& opt) {
  std::vector<IntMatrix> gens;
  FiniteMatrixGroup H(ring, n);
  for (const auto& x : elements) {
    if (H.contains(x)) continue;
    gens.emplace_back(n, n, x);
    H = FiniteMatrixGroup::generate(ring, n, gens, opt.cap);
    if (H.order() == static_cast<i64>(elements.size())) break;
  }
  return gens;
}

inline IntMatrix block_pair(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.rows() + b.rows();
  IntMatrix X = catalog::embed_block(a, n, 0);
  IntMatrix Y = catalog::embed_block(b, n, a.rows());
  for (std::size_t q = 0; q < X.data().size(); ++q) X.data()[q] += Y.data()[q];
  return X;
}

inline std::vector<Element> torus_units(i64 D, i64 ell, int e, const ScanOptions& opt) {
  return *algebra_units({IntMatrix::identity(2), IntMatrix{{0, -D}, {1, 0}}}, 2, ell, e, opt);
}

}  // namespace detail

/// Integral matrices generating the surrogate's points G(Z/ell^e); nullopt for entries without a smooth integral model.
inline std::optional<std::vector<IntMatrix>> integral_generators(const GroupSpec& spec, i64 ell, int e, const ScanOptions& opt = {}) {
  using detail::diag;
  using detail::transvection;
  const ResidueRing ring(ell, e);
  const i64 N = ring.modulus();
  const auto units = detail::unit_generators(ell, e);
  std::vector<IntMatrix> gens;
  switch (spec.kind) {
    case GroupSpec::Kind::product: {
      const std::size_t n = spec.n();
      std::size_t at = 0;
      for (const auto& p : spec.parts) {
        auto sub = integral_generators(p, ell, e, opt);
        if (!sub) return std::nullopt;
        for (const auto& g : *sub) {
          IntMatrix X = catalog::embed_block(g, n, at);
          for (std::size_t i = 0; i < n; ++i)
            if (i < at || i >= at + p.n()) X(i, i) = 1;
          gens.push_back(std::move(X));
        }
        at += p.n();
      }
      return gens;
    }
    case GroupSpec::Kind::matrices: {
      auto els = detail::algebra_units(spec.spanning, spec.dim_n, ell, e, opt);
      if (!els) return std::nullopt;
      return detail::greedy_generators(ring, spec.dim_n, *els, opt);
    }
    case GroupSpec::Kind::catalog: break;
  }
  const std::string& id = spec.id;
  const std::size_t s = spec.size;
  if (id == "gl" || id == "sl") {
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        if (i != j) gens.push_back(transvection(s, i, j));
    if (id == "gl")
      for (auto u : units) {
        std::vector<i64> d(s, 1);
        d[0] = u;
        gens.push_back(diag(d));
      }
    return gens;
  }
  if (id == "sp" || id == "gsp") {
    // Sp_2g(Z) is generated by [[I, S], [0, I]] and [[I, 0], [S, I]] with S elementary symmetric
    const std::size_t n = 2 * s;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i; j < s; ++j) {
        IntMatrix U = IntMatrix::identity(n), L = IntMatrix::identity(n);
        U(i, s + j) = 1;
        U(j, s + i) = 1;
        L(s + i, j) = 1;
        L(s + j, i) = 1;
        gens.push_back(U);
        gens.push_back(L);
      }
    if (id == "gsp")
      for (auto u : units) {
        std::vector<i64> d(n, 1);
        for (std::size_t i = s; i < n; ++i) d[i] = u;
        gens.push_back(diag(d));
      }
    return gens;
  }
  if (id == "split_torus") {
    for (std::size_t i = 0; i < s; ++i)
      for (auto u : units) {
        std::vector<i64> d(s, 1);
        d[i] = u;
        gens.push_back(diag(d));
      }
    return gens;
  }
  if (id == "nonsplit_torus") return detail::greedy_generators(ring, 2, detail::torus_units(static_cast<i64>(s), ell, e, opt), opt);
  if (id == "gl2_plus_scalar") {
    gens = {IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, IntMatrix{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}};
    for (auto u : units) {
      gens.push_back(diag({u, 1, 1}));
      gens.push_back(diag({1, 1, u}));
    }
    return gens;
  }
  if (id == "cm_surface") {
    // diag(x, y, z/x, z/y)
    for (auto u : units) {
      const i64 v = ring.inv(u);
      gens.push_back(diag({u, 1, v, 1}));
      gens.push_back(diag({1, u, 1, v}));
      gens.push_back(diag({1, 1, u, u}));
    }
    return gens;
  }
  if (id == "cm_pair") {
    // pairs of torus points with equal norm
    auto t1 = detail::torus_units(1, ell, e, opt), t2 = detail::torus_units(2, ell, e, opt);
    std::map<i64, std::vector<const Element*>> by_norm;
    for (const auto& y : t2) by_norm[mod(determinant(IntMatrix(2, 2, y)), N)].push_back(&y);
    std::vector<Element> pairs;
    for (const auto& x : t1)
      for (const auto* y : by_norm[mod(determinant(IntMatrix(2, 2, x)), N)]) pairs.push_back(detail::block_pair(IntMatrix(2, 2, x), IntMatrix(2, 2, *y)).data());
    for (auto& p : pairs)
      for (auto& v : p) v = mod(v, N);
    std::sort(pairs.begin(), pairs.end());
    return detail::greedy_generators(ring, 4, pairs, opt);
  }
  if (id == "gl2_times_cm") {
    // SL_2 x 1 together with (diag(N(t), 1), t) for generators t of the torus
    gens = {detail::block_pair(transvection(2, 0, 1), IntMatrix::identity(2)), detail::block_pair(transvection(2, 1, 0), IntMatrix::identity(2))};
    for (const auto& t : detail::greedy_generators(ring, 2, detail::torus_units(1, ell, e, opt), opt))
      gens.push_back(detail::block_pair(diag({mod(determinant(t), N), 1}), t));
    return gens;
  }
  return std::nullopt;
}

/// Exponent saturation on a model through orbits of its integral generators.
inline SaturationReport model_saturation(const MonodromyModel& model, i64 ell, int m, const ScanOptions& opt = {}) {
  if (!integral_generators(model.group, ell, 1, opt)) throw InputError(model.name + " has no integral generators");
  return exponent_saturation(model.name, model.group.lie(Field::prime(ell)), m,
                             [&](int e) { return *integral_generators(model.group, ell, e, opt); }, opt);
}

}  // namespace slopes
