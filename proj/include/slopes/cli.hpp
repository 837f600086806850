#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "definition.hpp"
#include "filtration.hpp"
#include "fixers.hpp"
#include "torsion.hpp"

namespace slopes::cli {

using json = nlohmann::json;

inline constexpr const char* kToolName = "slopes_cli";
inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kInputError = 2, kGuardExceeded = 3, kVerificationFailed = 4 };

inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"slope-submodular", "slope-maxU", "isotypic-min", "filtration-identity", "newhg",
                                            "hwcount-bracket",  "kaehler",    "implicit-fn",  "main-count",          "prop-count",
                                            "fix-index",        "devissage",  "masser",       "delta-saturation"};
  return ids;
}

struct Options {
  std::string command;
  std::string lemma;
  std::optional<i64> ell;
  std::optional<int> modulus_exponent;
  std::optional<int> depth;
  i64 cap = ScanOptions{}.cap;
  std::string format = "json";
  unsigned parallel = 0;
  std::optional<std::string> catalog;
  std::optional<std::size_t> g;
  std::optional<std::size_t> n;
  std::optional<std::string> file;
  std::vector<i64> primes;
  std::string family = "cyclic";
  std::optional<std::string> expected_floor;
  std::optional<std::string> kind;
  bool timing = false;

  ScanOptions scan() const { return ScanOptions{cap, parallel}; }

  /// Everything that determines the result; the worker count and output format are left out.
  json parameters() const {
    json p = json::object();
    if (!lemma.empty()) p["lemma"] = lemma;
    if (ell) p["ell"] = *ell;
    if (modulus_exponent) p["modulus_exponent"] = *modulus_exponent;
    if (depth) p["depth"] = *depth;
    p["cap"] = std::to_string(cap);
    if (catalog) p["catalog"] = *catalog;
    if (g) p["g"] = *g;
    if (n) p["n"] = *n;
    if (file) p["file"] = *file;
    if (!primes.empty()) p["primes"] = primes;
    if (command == "fixer") p["family"] = family;
    if (expected_floor) p["expected_floor"] = *expected_floor;
    if (kind) p["kind"] = *kind;
    return p;
  }
};

/// What a subcommand produced; `holds` is false when a checked statement failed.
struct Outcome {
  json outputs = json::object();
  bool holds = true;
};

// ---------------------------------------------------------------------------
// Serialization helpers

inline std::string count(i64 v) { return std::to_string(v); }

inline json counts(const std::vector<i64>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(count(x));
  return a;
}

inline json rows(const IntMatrix& M) {
  json a = json::array();
  for (std::size_t r = 0; r < M.rows(); ++r) a.push_back(std::vector<i64>(M.row(r).begin(), M.row(r).end()));
  return a;
}

inline json subgroup_json(const SnfSubgroup& H) { return {{"basis", rows(H.adapted_basis)}, {"exponents", H.exponents}, {"order", count(H.order())}}; }

inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// Sources

namespace detail {

struct Context {
  const Options& o;
  ScanOptions scan;
  std::optional<definition::DefinitionFile> def;
};

inline i64 need_ell(const Context& c, i64 fallback = 0) {
  if (c.o.ell) return *c.o.ell;
  if (c.def && c.def->ring) return c.def->ring->ell;
  if (fallback) return fallback;
  throw InputError("--ell is required");
}

inline int need_m(const Context& c, int fallback) {
  if (c.o.modulus_exponent) return *c.o.modulus_exponent;
  if (c.def && c.def->ring && c.def->ring->m > 1) return c.def->ring->m;
  return fallback;
}

/// Size parameter of a catalog entry: g for the symplectic families, n otherwise, D for the nonsplit torus.
inline std::size_t catalog_size(const Options& o, const std::string& id, i64 ell) {
  if (id == "sp" || id == "gsp") {
    if (o.g) return *o.g;
    if (o.n) {
      if (*o.n % 2 != 0) throw InputError("--n must be even for " + id);
      return *o.n / 2;
    }
    return 1;
  }
  if (o.g) return *o.g;
  if (o.n) return *o.n;
  if (id == "nonsplit_torus") return 1;
  if (id == "mu_p") return static_cast<std::size_t>(ell);
  return 2;
}

inline void need_source(const Context& c) {
  if (c.o.catalog.has_value() == c.def.has_value()) throw InputError("give exactly one of --catalog and --file");
}

/// A Lie algebra over any field of characteristic ell, with optional attested components.
struct LieSource {
  std::string name;
  std::function<LieAlgebraRep(const Field&)> at;
  std::optional<definition::DefinitionFile> def;
};

inline LieSource lie_source(const Context& c) {
  need_source(c);
  if (c.def) {
    auto d = *c.def;
    return {d.name, [d](const Field& f) {
              auto g = definition::lie_algebra(d, f.characteristic());
              return f.is_prime_field() ? g : g.extend_to(f);
            },
            d};
  }
  const std::string id = *c.o.catalog;
  const Options& o = c.o;
  return {id, [id, &o](const Field& f) { return catalog::lie_by_name(id, f, catalog_size(o, id, f.characteristic())); }, std::nullopt};
}

inline GroupScheme scheme_source(const Context& c) {
  need_source(c);
  if (c.def) return definition::group_scheme(*c.def);
  return group_schemes::by_name(*c.o.catalog, catalog_size(c.o, *c.o.catalog, need_ell(c, 3)));
}

inline MonodromyModel model_source(const Context& c) {
  need_source(c);
  if (c.def) return definition::model(*c.def);
  return models::by_name(*c.o.catalog, c.o.g.value_or(2));
}

inline std::vector<i64> primes_or(const Context& c, std::vector<i64> fallback) {
  auto p = c.o.primes.empty() ? (c.o.ell ? std::vector<i64>{*c.o.ell} : fallback) : c.o.primes;
  for (auto x : p)
    if (!is_prime(x)) throw InputError(std::to_string(x) + " is not a prime");
  return p;
}

inline std::vector<i64> ells_or(const Context& c, std::vector<i64> fallback) { return c.o.ell ? std::vector<i64>{*c.o.ell} : fallback; }

inline std::string field_name(i64 ell) { return "F_" + std::to_string(ell); }

inline json slope_json(const SlopeReport& r) {
  const i64 d1 = r.n >= 1 ? static_cast<i64>(r.d.at(1)) : 0;
  return {{"lie_dim", r.lie_dim},
          {"n", r.n},
          {"alpha", r.alpha.str()},
          {"gamma", r.gamma.str()},
          {"d", r.d},
          {"d1", d1},
          {"delta", static_cast<i64>(r.lie_dim) - d1},
          {"witness", rows(r.witness.basis())},
          {"maximal_U", rows(r.maximal_U.basis())},
          {"subspaces_scanned", count(r.subspaces_scanned)},
          {"minimizer_count", count(r.minimizer_count)}};
}

inline json filtration_json(const FiltrationReport& F) {
  json graded = json::array();
  for (const auto& h : F.graded) graded.push_back({{"dim", h.dim()}, {"basis", rows(h.basis())}});
  // |H(ell^i)| = |H(ell)| ell^{sum dim h_j}, recomputed here so the report carries the check
  bool identity = true;
  i64 expected = F.level_orders.at(0);
  for (int i = 2; i <= F.depth; ++i) {
    expected = checked::mul(expected, checked::pow(F.ell, static_cast<int>(F.graded_dim(i - 1))));
    identity = identity && expected == F.level_order(i);
  }
  return {{"ell", F.ell}, {"depth", F.depth}, {"level_orders", counts(F.level_orders)}, {"graded", graded}, {"nested", F.nested}, {"identity_holds", identity}};
}

inline json fix_report_json(const FixIndexReport& r) {
  return {{"H", subgroup_json(r.H)},
          {"fixer_order", count(r.fixer_order)},
          {"index", count(r.index)},
          {"exponent_target", r.exponent_target.str()},
          {"observed_ratio", r.observed_ratio.str()},
          {"gamma_ratio", r.gamma_ratio.str()}};
}

inline json sweep_json(const FixSweepReport& s) {
  json reps = json::array();
  for (const auto& r : s.reports) reps.push_back(fix_report_json(r));
  json out{{"family", to_string(s.family)}, {"alpha", s.alpha.str()},        {"delta", s.delta},
           {"subgroups", s.reports.size()}, {"ratio_floor", s.ratio_floor.str()}, {"meets_expectation", s.meets_expectation},
           {"reports", reps}};
  out["cyclic_floor"] = s.cyclic_floor ? json(s.cyclic_floor->str()) : json(nullptr);
  out["expected_floor"] = s.expected_floor ? json(s.expected_floor->str()) : json(nullptr);
  return out;
}

inline json saturation_json(const SaturationReport& r) {
  return {{"w", r.w}, {"delta", r.delta}, {"indices", counts(r.indices)}, {"increments", r.increments}, {"saturated", r.saturated}};
}

inline json trace_json(const DevissageTrace& t) {
  json layers = json::array();
  for (const auto& L : t.layers)
    layers.push_back({{"j", L.j}, {"m_j", L.m_j}, {"m_next", L.m_next}, {"kernel", count(L.kernel)}, {"d_j", L.d_j},
                      {"bound", count(L.bound)}, {"observed_constant", L.observed_constant.str()}});
  return {{"H", subgroup_json(t.H)}, {"layers", layers}, {"product", count(t.product)}, {"fixer_top", count(t.fixer_top)},
          {"dominates", t.dominates}, {"index", count(t.index)}};
}

inline json verdict_json(const CountVerdict& v) {
  return {{"observed", count(v.observed)}, {"expected", count(v.expected)}, {"holds", v.holds}, {"detail", v.detail}};
}

inline std::string rational_or_inf(const ExtRational& x) { return x.str(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Shipped examples for the counting lemmas

namespace shipped {

struct SchemeCase {
  std::string name;
  AffineSchemeMod scheme;
  Point section;
};

/// x1 x2 - ell, x1^2 and ell x1 in two variables, with a section of each.
inline std::vector<SchemeCase> kaehler_families(i64 ell) {
  auto X = [](std::size_t i) { return Polynomial::variable(2, i); };
  const std::string l = std::to_string(ell);
  return {{"x1*x2-" + l, AffineSchemeMod(2, {X(0) * X(1) - Polynomial::constant(2, ell)}), {ell, 1}},
          {"x1^2", AffineSchemeMod(2, {X(0) * X(0)}), {0, 0}},
          {l + "*x1", AffineSchemeMod(2, {X(0) * ell}), {0, 0}}};
}

struct ImplicitCase {
  std::string name;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<Polynomial> A;
};

/// Systems A_i = X_i + ell R_i for i > d.
inline std::vector<ImplicitCase> implicit_systems(i64 ell) {
  auto X2 = [](std::size_t i) { return Polynomial::variable(2, i); };
  auto X3 = [](std::size_t i) { return Polynomial::variable(3, i); };
  const std::string l = std::to_string(ell);
  return {{"x2+" + l + "*x1^2", 2, 1, {X2(1) + X2(0) * X2(0) * ell}},
          {"x2-" + l, 2, 1, {X2(1) - Polynomial::constant(2, ell)}},
          {"x3+" + l + "*x1*x2", 3, 2, {X3(2) + X3(0) * X3(1) * ell}},
          {"x2+" + l + "*x1*x3, x3+" + l + "*x1^2", 3, 1, {X3(1) + X3(0) * X3(2) * ell, X3(2) + X3(0) * X3(0) * ell}}};
}

struct MainCase {
  std::string name;
  AffineSchemeMod scheme;
  Point section;
  int e = 0;
};

inline std::vector<MainCase> main_count_cases(i64 ell) {
  auto fam = kaehler_families(ell);
  return {{fam[0].name, fam[0].scheme, fam[0].section, 0},
          {"x1 in three variables", AffineSchemeMod(3, {Polynomial::variable(3, 0)}), {0, 0, 0}, 0},
          {fam[2].name, fam[2].scheme, fam[2].section, 1}};
}

}  // namespace shipped

// ---------------------------------------------------------------------------
// Subcommands

namespace detail {

inline Outcome run_slope(const Context& c) {
  auto src = lie_source(c);
  const i64 ell = need_ell(c);
  const Field f = Field::prime(ell);
  auto g = src.at(f);
  auto rep = alpha(g, c.scan);
  Outcome out;
  out.outputs = slope_json(rep);
  out.outputs["lie"] = src.name;
  out.outputs["field"] = field_name(ell);
  if (src.def && !src.def->attestation.isotypic_components.empty()) {
    auto iso = alpha_via_isotypic(g, definition::isotypic_components(*src.def, f), true, c.scan);
    out.outputs["isotypic"] = {{"alpha", iso.alpha_isotypic.str()}, {"witness_I", iso.witness_I}, {"agrees", iso.agrees}, {"degenerate", iso.degenerate}};
  }
  return out;
}

inline json gamma_ell_json(const GammaEllReport& r) {
  return {{"ell", r.ell}, {"alpha", r.alpha.str()}, {"gamma", r.gamma.str()}, {"witness", rows(r.witness.basis())}, {"matches_gamma_A", r.matches_gamma_A}, {"note", r.note}};
}

inline Outcome run_gamma(const Context& c) {
  auto m = model_source(c);
  auto rep = gamma_A(m);
  Outcome out;
  json table = json::array();
  for (const auto& [I, twice, dimG] : rep.table) table.push_back({{"subset", I}, {"two_dim_A", twice}, {"dim_G", dimG}});
  out.outputs = {{"model", m.name}, {"gamma_A", rep.gamma.str()}, {"fraction", rep.fraction()}, {"witness", rep.witness}, {"table", table}};
  if (!c.o.primes.empty() || c.o.ell) {
    auto beta = beta_report(m, primes_or(c, {}), c.scan);
    json per = json::array();
    for (const auto& r : beta.per_prime) per.push_back(gamma_ell_json(r));
    out.outputs["gamma_ell"] = per;
    out.outputs["beta"] = {{"value", beta.value.str()}, {"attained_at", beta.attained_at}, {"caveat", beta.caveat}};
  }
  return out;
}

inline Outcome run_delta(const Context& c) {
  const auto primes = primes_or(c, {3, 5});
  Outcome out;
  if (c.def && c.def->kind != definition::Kind::model) {
    auto src = lie_source(c);
    json per = json::object(), split = json::object();
    i64 delta = -1, d = -1;
    for (auto ell : primes) {
      auto g = src.at(Field::prime(ell));
      auto gs = src.at(Field::quadratic(ell));
      i64 a = static_cast<i64>(g.dim()) - static_cast<i64>(max_line_stabilizer(g, c.scan));
      i64 b = static_cast<i64>(gs.dim()) - static_cast<i64>(max_line_stabilizer(gs, c.scan));
      per[std::to_string(ell)] = a;
      split[std::to_string(ell)] = b;
      delta = delta < 0 ? a : std::min(delta, a);
      d = d < 0 ? b : std::min(d, b);
    }
    out.outputs = {{"source", src.name}, {"per_prime", per}, {"per_prime_split", split}, {"delta", delta}, {"d", d}, {"degenerate", delta == 0}};
    return out;
  }
  auto m = model_source(c);
  auto rep = delta_and_d(m, primes, c.scan);
  json per = json::object(), split = json::object();
  for (const auto& [ell, v] : rep.per_prime) per[std::to_string(ell)] = v;
  for (const auto& [ell, v] : rep.per_prime_split) split[std::to_string(ell)] = v;
  out.outputs = {{"source", m.name}, {"per_prime", per}, {"per_prime_split", split}, {"delta", rep.delta}, {"d", rep.d}, {"degenerate", rep.degenerate}};
  return out;
}

/// The finite group named by the flags, with its scheme when there is one.
struct GroupSource {
  std::string name;
  FiniteMatrixGroup group;
  std::optional<GroupScheme> scheme;
};

inline GroupSource group_source(const Context& c, int default_m) {
  need_source(c);
  const i64 ell = need_ell(c);
  const int m = need_m(c, default_m);
  definition::RingSpec ring{ell, m};
  if (c.def && c.def->kind == definition::Kind::generators) return {c.def->name, definition::finite_group(*c.def, ring, c.scan), std::nullopt};
  auto S = scheme_source(c);
  if (S.n == 0) throw InputError(S.name + " is not a matrix group scheme");
  return {S.name, FiniteMatrixGroup::from_scheme(S, ell, m, c.scan), S};
}

inline Outcome run_filtration(const Context& c) {
  auto src = group_source(c, c.o.depth.value_or(3));
  auto F = filtration(src.group);
  Outcome out;
  out.outputs = filtration_json(F);
  out.outputs["group"] = src.name;
  out.outputs["order"] = count(src.group.order());
  if (src.scheme && F.depth > first_admissible_level(F.ell)) {
    auto rep = mod_ell_lie_algebra(*src.scheme, F.ell, F.depth, c.scan);
    out.outputs["mod_ell_lie"] = {{"g_ell_dim", rep.g_ell.dim()}, {"agrees", rep.agrees}, {"divergence", rep.divergence}};
  }
  out.holds = out.outputs["identity_holds"].get<bool>();
  return out;
}

inline Outcome run_count(const Context& c) {
  need_source(c);
  AffineSchemeMod S = c.def ? (definition::is_matrix_group(*c.def) ? definition::group_scheme(*c.def).scheme
                                                                    : AffineSchemeMod(definition::group_scheme(*c.def).scheme))
                            : scheme_source(c).scheme;
  const i64 ell = need_ell(c);
  const int m = need_m(c, 2);
  json levels = json::array();
  for (int k = 1; k <= m; ++k) levels.push_back({{"m", k}, {"points", count(static_cast<i64>(enumerate_points(S, ell, k, c.scan).size()))}});
  Outcome out;
  out.outputs = {{"scheme", c.def ? c.def->name : *c.o.catalog}, {"ell", ell}, {"variables", S.num_vars()}, {"levels", levels}};
  if (auto x = c.def ? definition::section(*c.def) : std::nullopt) {
    auto K = kaehler_module(S, ell, *x, m + 2);
    out.outputs["section"] = {{"point", *x}, {"torsion_exponents", K.exponents}, {"free_rank", K.free_rank}};
  }
  return out;
}

inline SubgroupFamily parse_family(const std::string& s) {
  if (s == "cyclic") return SubgroupFamily::cyclic;
  if (s == "all") return SubgroupFamily::all;
  throw InputError("--family must be cyclic or all");
}

inline FixerContext fixer_context(const Context& c, const GroupSource& src) {
  if (src.scheme) return FixerContext::from_scheme(*src.scheme, src.group.ring().ell(), src.group.ring().exponent(), c.scan);
  // a generated group gets the Lie algebra of its first graded piece
  auto F = filtration(src.group);
  const Field f = Field::prime(F.ell);
  std::vector<IntMatrix> mats;
  const auto& h = F.graded.at(static_cast<std::size_t>(first_admissible_level(F.ell) - 1));
  for (std::size_t r = 0; r < h.dim(); ++r) mats.emplace_back(F.n, F.n, std::vector<i64>(h.basis().row(r).begin(), h.basis().row(r).end()));
  return FixerContext::from_group(src.name, src.group, LieAlgebraRep::span(f, F.n, mats, false), c.scan);
}

inline Outcome run_fixer(const Context& c) {
  auto src = group_source(c, 2);
  auto ctx = fixer_context(c, src);
  std::optional<Rational> expected;
  if (c.o.expected_floor) expected = Rational::parse(*c.o.expected_floor);
  auto sweep = fix_index_sweep(ctx, parse_family(c.o.family), {}, expected, c.scan);
  Outcome out;
  out.outputs = {{"group", src.name}, {"order", count(src.group.order())}, {"sweep", sweep_json(sweep)}};
  out.outputs["saturation"] = saturation_json(exponent_saturation(ctx, c.scan));
  out.holds = sweep.meets_expectation;
  return out;
}

inline Outcome run_catalog(const Context& c) {
  Outcome out;
  if (!c.o.catalog) {
    out.outputs = {{"lie", catalog::lie_catalog_names()}, {"schemes", group_schemes::names()}, {"models", models::names()}, {"lemmas", lemma_ids()}};
    return out;
  }
  const std::string kind = c.o.kind.value_or("lie");
  const std::string id = *c.o.catalog;
  if (kind == "lie") {
    const i64 ell = need_ell(c, 3);
    out.outputs = definition::to_json(definition::from_lie(id, catalog::lie_by_name(id, Field::prime(ell), catalog_size(c.o, id, ell))));
  } else if (kind == "scheme") {
    out.outputs = definition::to_json(definition::from_scheme(group_schemes::by_name(id, catalog_size(c.o, id, need_ell(c, 3)))));
  } else if (kind == "model") {
    out.outputs = definition::to_json(definition::from_model(models::by_name(id, c.o.g.value_or(2))));
  } else {
    throw InputError("--kind must be lie, scheme or model");
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// verify

namespace detail {

struct CaseLog {
  json cases = json::array();
  std::size_t failures = 0;

  void add(json c, bool holds) {
    c["holds"] = holds;
    if (!holds) ++failures;
    cases.push_back(std::move(c));
  }

  Outcome finish(json extra = json::object()) const {
    Outcome out;
    out.outputs = std::move(extra);
    out.outputs["cases"] = cases;
    out.outputs["checked"] = cases.size();
    out.outputs["failures"] = failures;
    out.holds = failures == 0;
    return out;
  }
};

/// Lie catalog entries acting on at most three dimensions.
inline std::vector<std::pair<std::string, std::size_t>> small_lie_catalog() {
  return {{"gl", 1}, {"gl", 2}, {"gl", 3}, {"sl", 2}, {"sl", 3}, {"sp", 1}, {"gsp", 1}, {"split_torus", 2}, {"split_torus", 3},
          {"nonsplit_torus", 1}, {"gl2_plus_scalar", 0}, {"mu_p", 0}};
}

inline Outcome verify_slope_axioms_cmd(const Context& c, bool submodular) {
  std::vector<std::pair<std::string, std::function<LieAlgebraRep(const Field&)>>> algebras;
  if (c.o.catalog || c.def) {
    auto src = lie_source(c);
    algebras.emplace_back(src.name, src.at);
  } else {
    for (const auto& [id, size] : small_lie_catalog())
      algebras.emplace_back(id + (size ? std::to_string(size) : ""), [id = id, size = size](const Field& f) { return catalog::lie_by_name(id, f, size); });
  }
  CaseLog log;
  for (auto ell : ells_or(c, {3})) {
    for (const auto& [name, at] : algebras) {
      auto r = verify_slope_axioms(at(Field::prime(ell)), c.scan);
      json cs{{"lie", name}, {"field", field_name(ell)}, {"subspaces", count(r.subspaces)}, {"pairs", count(r.pairs_checked)}};
      bool holds;
      if (submodular) {
        cs["violations"] = count(r.submodularity_violations);
        holds = r.submodularity_violations == 0;
      } else {
        cs["minimizer_pairs"] = count(r.minimizer_pairs);
        cs["closure_violations"] = count(r.closure_violations);
        cs["maximal_U_unique"] = r.maximal_U_is_unique;
        holds = r.closure_violations == 0 && r.maximal_U_is_unique;
      }
      if (!holds) cs["first_violation"] = r.first_violation;
      log.add(cs, holds);
    }
  }
  return log.finish();
}

inline Outcome verify_isotypic(const Context& c) {
  CaseLog log;
  std::vector<MonodromyModel> ms;
  if (c.o.catalog || c.def) ms.push_back(model_source(c));
  else ms = models::all();
  for (auto ell : ells_or(c, {3, 5})) {
    const Field f = Field::prime(ell);
    for (const auto& m : ms) {
      auto g = m.group.lie(f);
      auto iso = isotypic_components(g, c.scan);
      json cs{{"model", m.name}, {"field", field_name(ell)}, {"components", iso.components.size()}, {"semisimple", iso.semisimple}};
      if (!iso.semisimple) {
        log.add(cs, false);
        continue;
      }
      auto rep = alpha_via_isotypic(g, iso.components, true, c.scan);
      cs["alpha_isotypic"] = rep.alpha_isotypic.str();
      cs["alpha_brute"] = rep.alpha_brute ? json(rep.alpha_brute->str()) : json(nullptr);
      cs["witness_I"] = rep.witness_I;
      log.add(cs, rep.agrees);
    }
  }
  json extra = json::object();
  if (!c.o.catalog && !c.def) {
    // the characteristic-p example: alpha of the Lie algebra is 0 while the group's is positive
    auto rep = lie_group_comparison(group_schemes::mu_p(3), 3, 3, c.scan);
    json cs{{"model", "mu_p"}, {"field", field_name(3)}, {"alpha_lie", rep.alpha_isotypic.str()},
            {"alpha_group", rep.alpha_group ? json(rep.alpha_group->str()) : json(nullptr)}, {"divergence", rep.lie_group_divergence}};
    log.add(cs, rep.alpha_isotypic.is_zero() && rep.degenerate && rep.lie_group_divergence);
  }
  return log.finish(extra);
}

inline std::vector<IntMatrix> sl2_generators() { return {IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}}; }

/// Every cyclic subgroup of G, one per distinct element set.
inline std::vector<FiniteMatrixGroup> cyclic_subgroups_of(const FiniteMatrixGroup& G, const ScanOptions& opt) {
  std::set<std::vector<Element>> seen;
  std::vector<FiniteMatrixGroup> out;
  for (const auto& g : G.elements()) {
    auto C = FiniteMatrixGroup::generate(G.ring(), G.n(), {IntMatrix(G.n(), G.n(), g)}, opt.cap);
    if (seen.insert(C.elements()).second) out.push_back(std::move(C));
  }
  return out;
}

inline Outcome verify_filtration_identity(const Context& c) {
  CaseLog log;
  auto check = [&](const std::string& name, const FiniteMatrixGroup& H) {
    try {
      auto F = filtration(H);
      auto js = filtration_json(F);
      json cs{{"group", name}, {"level_orders", js["level_orders"]}, {"nested", F.nested}};
      std::vector<std::size_t> dims;
      for (const auto& h : F.graded) dims.push_back(h.dim());
      cs["graded_dims"] = dims;
      log.add(cs, js["identity_holds"].get<bool>());
    } catch (const VerificationFailure& e) {
      log.add({{"group", name}, {"error", e.what()}}, false);
    }
  };
  if (c.o.catalog || c.def) {
    auto src = group_source(c, c.o.depth.value_or(3));
    check(src.name, src.group);
    return log.finish();
  }
  auto sl2 = FiniteMatrixGroup::generate(ResidueRing(3, 3), 2, sl2_generators(), c.scan.cap);
  check("SL2(Z/27)", sl2);
  check("GL2(Z/9)", FiniteMatrixGroup::from_scheme(group_schemes::gl(2), 3, 2, c.scan));
  // the cyclic subgroups are summarized, not listed
  CaseLog inner;
  auto cyclic = cyclic_subgroups_of(sl2, c.scan);
  std::size_t bad = 0;
  for (const auto& C : cyclic) {
    try {
      if (!filtration_json(filtration(C))["identity_holds"].get<bool>()) ++bad;
    } catch (const VerificationFailure&) {
      ++bad;
    }
  }
  log.add({{"group", "cyclic subgroups of SL2(Z/27)"}, {"subgroups", cyclic.size()}, {"violations", bad}}, bad == 0);
  return log.finish();
}

inline IntMatrix matrix_of(const Subspace& h, std::size_t r, std::size_t n) {
  return IntMatrix(n, n, std::vector<i64>(h.basis().row(r).begin(), h.basis().row(r).end()));
}

inline Outcome verify_newhg(const Context& c) {
  CaseLog log;
  auto full_group = [&](const std::string& name, const GroupScheme& S, i64 ell, int m) {
    auto H = FiniteMatrixGroup::from_scheme(S, ell, m, c.scan);
    auto F = filtration(H);
    auto g = tangent_lie_algebra(S, ell);
    const Subspace gl = Subspace::span(Field::prime(ell), g.flat());
    json cs{{"group", name}, {"order", count(H.order())}, {"g_ell_dim", g.dim()}};
    bool holds = true;
    std::vector<std::size_t> dims;
    for (int i = first_admissible_level(ell); i < m; ++i) {
      const auto& h = F.graded[static_cast<std::size_t>(i - 1)];
      dims.push_back(h.dim());
      holds = holds && h == gl;
    }
    cs["graded_dims"] = dims;
    auto rep = mod_ell_lie_algebra(S, ell, m, c.scan);
    cs["probe_agrees"] = rep.agrees;
    log.add(cs, holds && rep.agrees);
  };
  if (c.o.catalog || c.def) {
    auto S = scheme_source(c);
    full_group(S.name, S, need_ell(c, 3), need_m(c, c.o.depth.value_or(3)));
    return log.finish();
  }
  full_group("SL2(Z/27)", group_schemes::sl(2), 3, 3);
  full_group("GL2(Z/27)", group_schemes::gl(2), 3, 3);
  // part (i): inside a closed subgroup every h_i lies in g_ell
  auto sl2 = FiniteMatrixGroup::generate(ResidueRing(3, 3), 2, sl2_generators(), c.scan.cap);
  const auto sl = catalog::sl(Field::prime(3), 2);
  std::size_t bad = 0;
  auto cyclic = cyclic_subgroups_of(sl2, c.scan);
  for (const auto& C : cyclic) {
    auto F = filtration(C);
    for (const auto& h : F.graded)
      for (std::size_t r = 0; r < h.dim(); ++r)
        if (!sl.contains(matrix_of(h, r, 2))) ++bad;
    if (!F.nested) ++bad;
  }
  log.add({{"group", "cyclic subgroups of SL2(Z/27)"}, {"subgroups", cyclic.size()}, {"violations", bad}}, bad == 0);
  return log.finish();
}

inline Outcome verify_bracket(const Context& c) {
  CaseLog log;
  std::vector<GroupScheme> schemes;
  if (c.o.catalog || c.def) schemes.push_back(scheme_source(c));
  else schemes = {group_schemes::sl(2), group_schemes::gl(2)};
  std::size_t skipped = 0;
  for (auto ell : ells_or(c, {3, 5})) {
    const Field f = Field::prime(ell);
    for (const auto& G : schemes)
      for (std::size_t d = 0; d <= G.n; ++d)
        for (const auto& W : all_subspaces(f, G.n, d, c.scan.cap)) {
          auto r = point_count_bracket(G, ell, W, 1, c.scan);
          if (r.verdict == BracketVerdict::not_applicable) {
            ++skipped;
            continue;
          }
          log.add({{"group", G.name}, {"field", field_name(ell)}, {"W", rows(W.basis())}, {"count", count(r.count)}, {"d", r.d},
                   {"lower", count(r.lower)}, {"upper", count(r.upper)}},
                  r.verdict == BracketVerdict::holds);
        }
  }
  return log.finish({{"not_smooth_skipped", skipped}});
}

inline Outcome verify_kaehler(const Context& c) {
  CaseLog log;
  std::vector<std::pair<i64, shipped::SchemeCase>> cases;
  int top = 4;
  if (c.def) {
    auto x = definition::section(*c.def);
    if (!x) throw InputError("the scheme file needs a section");
    cases.emplace_back(need_ell(c), shipped::SchemeCase{c.def->name, definition::group_scheme(*c.def).scheme, *x});
    top = need_m(c, 4);
  } else {
    if (c.o.catalog) throw InputError("kaehler takes a scheme file or the shipped families");
    for (auto ell : ells_or(c, {3, 5}))
      for (auto& s : shipped::kaehler_families(ell)) cases.emplace_back(ell, std::move(s));
  }
  for (const auto& [ell, s] : cases)
    for (int m = 2; m <= top; ++m)
      for (int mp = 1; mp < m; ++mp) {
        if (m > 2 * mp) continue;
        auto v = verify_kaehler_count(s.scheme, ell, s.section, m, mp, c.scan);
        json cs = verdict_json(v);
        cs["scheme"] = s.name;
        cs["ell"] = ell;
        cs["m"] = m;
        cs["m_prime"] = mp;
        log.add(cs, v.holds);
      }
  return log.finish();
}

inline Outcome verify_implicit(const Context& c) {
  CaseLog log;
  if (c.o.catalog || c.def) throw InputError("implicit-fn runs on the shipped systems only");
  const int top = need_m(c, 3);
  for (auto ell : ells_or(c, {3, 5}))
    for (const auto& s : shipped::implicit_systems(ell))
      for (int m = 2; m <= top; ++m)
        for (int mp = 1; mp < m; ++mp) {
          auto v = verify_implicit_function(s.n, s.d, s.A, ell, m, mp, c.scan);
          json cs = verdict_json(v);
          cs["system"] = s.name;
          cs["ell"] = ell;
          cs["d"] = s.d;
          cs["m"] = m;
          cs["m_prime"] = mp;
          log.add(cs, v.holds && v.observed == v.expected);
        }
  return log.finish();
}

inline Outcome verify_main_count(const Context& c) {
  CaseLog log;
  if (c.o.catalog || c.def) throw InputError("main-count runs on the shipped cases only");
  const int top = need_m(c, 4);
  for (auto ell : ells_or(c, {3, 5}))
    for (const auto& s : shipped::main_count_cases(ell))
      for (int m = 1; m <= top; ++m)
        for (int mp = 1; mp <= m; ++mp) {
          const bool window_i = m >= mp && mp > s.e;
          const bool window_ii = s.e == 0 && m <= 2 * mp;
          if (!window_i && !window_ii) continue;
          auto v = verify_main_counting(s.scheme, ell, s.section, m, mp, s.e, std::nullopt, c.scan);
          json cs{{"scheme", s.name}, {"ell", ell}, {"m", m}, {"m_prime", mp}, {"e", s.e}, {"d", v.d}};
          if (v.clause_i) cs["clause_i"] = verdict_json(*v.clause_i);
          if (v.clause_ii) cs["clause_ii"] = verdict_json(*v.clause_ii);
          log.add(cs, v.holds());
        }
  return log.finish();
}

inline Outcome verify_prop_count(const Context& c) {
  CaseLog log;
  std::vector<std::pair<GroupScheme, bool>> schemes;  // (scheme, smooth so equality is expected)
  if (c.o.catalog || c.def) schemes.emplace_back(scheme_source(c), false);
  else schemes = {{group_schemes::sl(2), true}, {group_schemes::gl(2), true}};
  const int top = need_m(c, 3);
  for (auto ell : ells_or(c, {3}))
    for (const auto& [G, smooth] : schemes)
      for (int m = 2; m <= top; ++m)
        for (int mp = 1; mp < m; ++mp) {
          auto v = verify_group_kernel_bound(G, ell, m, mp, c.scan);
          log.add({{"group", G.name}, {"ell", ell}, {"m", m}, {"m_prime", mp}, {"kernel", count(v.kernel)}, {"bound", count(v.bound)},
                   {"d", v.d}, {"e", v.e}, {"exact", v.exact}},
                  v.holds && (!smooth || v.exact));
        }
  return log.finish();
}

inline Outcome verify_fix_index(const Context& c) {
  CaseLog log;
  std::optional<Rational> expected;
  if (c.o.expected_floor) expected = Rational::parse(*c.o.expected_floor);
  auto sweeps = [&](const std::string& name, const FixerContext& ctx) {
    auto cyc = fix_index_sweep(ctx, SubgroupFamily::cyclic, {}, expected, c.scan);
    log.add({{"group", name}, {"family", "cyclic"}, {"subgroups", cyc.reports.size()}, {"cyclic_floor", cyc.cyclic_floor ? cyc.cyclic_floor->str() : "none"},
             {"ratio_floor", cyc.ratio_floor.str()}},
            cyc.ratio_floor.power > Rational(0) && cyc.meets_expectation);
    if (ctx.group.n() == 2) {
      auto all = fix_index_sweep(ctx, SubgroupFamily::all, {}, expected, c.scan);
      log.add({{"group", name}, {"family", "all"}, {"subgroups", all.reports.size()}, {"alpha", all.alpha.str()}, {"recorded_c", all.ratio_floor.str()}},
              all.ratio_floor.power > Rational(0) && all.meets_expectation);
    }
  };
  if (c.o.catalog || c.def) {
    auto src = group_source(c, 2);
    sweeps(src.name, fixer_context(c, src));
    return log.finish();
  }
  auto ctx = FixerContext::from_scheme(group_schemes::gl(2), 3, 2, c.scan);
  auto H = snf_decompose(ctx.group.ring(), 2, {{1, 0}});
  auto r = fix_index(ctx, H, c.scan);
  log.add({{"group", "GL2(Z/9)"}, {"H", subgroup_json(H)}, {"index", count(r.index)}, {"observed_ratio", r.observed_ratio.str()}},
          r.index == 72 && r.observed_ratio == RootRatio{Rational(8, 9), 1});
  sweeps("GL2(Z/9)", ctx);
  return log.finish();
}

inline Outcome verify_devissage(const Context& c) {
  CaseLog log;
  std::vector<GroupScheme> schemes;
  if (c.o.catalog || c.def) schemes.push_back(scheme_source(c));
  else schemes = {group_schemes::gl(2), group_schemes::sl(2)};
  const i64 ell = need_ell(c, 3);
  const int m = need_m(c, 2);
  for (const auto& S : schemes) {
    auto ctx = FixerContext::from_scheme(S, ell, m, c.scan);
    if (S.n != 2) throw InputError("devissage sweeps need rank-2 modules");
    auto subgroups = all_subgroups_rank2(ctx.group.ring());
    std::size_t bad = 0;
    json failures = json::array();
    for (const auto& H : subgroups) {
      try {
        auto t = devissage_bound(ctx, H, c.scan);
        bool ok = t.dominates;
        for (const auto& L : t.layers) ok = ok && (L.m_next == 0 || L.kernel <= L.bound);
        if (!ok) {
          ++bad;
          failures.push_back(trace_json(t));
        }
      } catch (const VerificationFailure& e) {
        ++bad;
        failures.push_back({{"H", subgroup_json(H)}, {"error", e.what()}});
      }
    }
    log.add({{"group", S.name}, {"ring", "Z/" + std::to_string(ctx.group.ring().modulus())}, {"subgroups", subgroups.size()}, {"failures", failures}},
            bad == 0);
  }
  return log.finish();
}

inline Outcome verify_masser(const Context& c) {
  CaseLog log;
  std::vector<MonodromyModel> ms;
  if (c.o.catalog || c.def) ms.push_back(model_source(c));
  else ms = models::all();
  for (auto ell : primes_or(c, {3, 5}))
    for (const auto& m : ms) {
      json cs{{"model", m.name}, {"ell", ell}, {"dim_A", m.abelian_dim()}, {"cm_power", m.cm_power}};
      try {
        auto r = masser_check(m, ell, c.scan);
        cs["gamma_ell"] = r.gamma_ell.str();
        cs["verdict"] = to_string(r.verdict);
        log.add(cs, true);
      } catch (const VerificationFailure& e) {
        cs["error"] = e.what();
        log.add(cs, false);
      }
    }
  return log.finish();
}

inline Outcome verify_delta_saturation(const Context& c) {
  CaseLog log;
  auto add = [&](const std::string& name, const SaturationReport& r, i64 delta) {
    json cs = saturation_json(r);
    cs["group"] = name;
    cs["expected_delta"] = delta;
    log.add(cs, r.saturated && r.delta == delta);
  };
  const int m = need_m(c, 3);
  if (c.o.catalog || c.def) {
    if (c.def && c.def->kind == definition::Kind::model) {
      auto model = definition::model(*c.def);
      const i64 ell = need_ell(c, 3);
      add(model.name, model_saturation(model, ell, m, c.scan), delta_and_d(model, {ell}, c.scan).delta);
    } else {
      auto src = group_source(c, m);
      auto ctx = fixer_context(c, src);
      add(src.name, exponent_saturation(ctx, c.scan), ctx.delta());
    }
    return log.finish();
  }
  auto ctx = FixerContext::from_scheme(group_schemes::gl(2), 3, m, c.scan);
  add("GL2(Z/" + std::to_string(ctx.group.ring().modulus()) + ")", exponent_saturation(ctx, c.scan), ctx.delta());
  for (const auto& model : models::all()) add(model.name, model_saturation(model, 3, m, c.scan), delta_and_d(model, {3}, c.scan).delta);
  return log.finish();
}

inline Outcome run_verify(const Context& c) {
  const std::string& id = c.o.lemma;
  if (id == "slope-submodular") return verify_slope_axioms_cmd(c, true);
  if (id == "slope-maxU") return verify_slope_axioms_cmd(c, false);
  if (id == "isotypic-min") return verify_isotypic(c);
  if (id == "filtration-identity") return verify_filtration_identity(c);
  if (id == "newhg") return verify_newhg(c);
  if (id == "hwcount-bracket") return verify_bracket(c);
  if (id == "kaehler") return verify_kaehler(c);
  if (id == "implicit-fn") return verify_implicit(c);
  if (id == "main-count") return verify_main_count(c);
  if (id == "prop-count") return verify_prop_count(c);
  if (id == "fix-index") return verify_fix_index(c);
  if (id == "devissage") return verify_devissage(c);
  if (id == "masser") return verify_masser(c);
  if (id == "delta-saturation") return verify_delta_saturation(c);
  throw InputError("unknown lemma id '" + id + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

inline bool flat_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (!x.is_primitive() && !(x.is_array() && flat_array(x))) return false;
  return true;
}

inline void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (v.is_array() && !flat_array(v)) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, v.is_array() ? v.dump() : scalar_text(v));
  }
}

}  // namespace detail

/// Aligned two-column rendering of a report.
inline std::string render_table(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  return os.str();
}

inline json make_report(const Options& o, const std::string& file_bytes, const Outcome& out, std::optional<double> wall_ms) {
  const json params = o.parameters();
  const std::string operation = o.command == "verify" ? "verify " + o.lemma : o.command;
  const std::string digest_input = operation + "\n" + params.dump() + "\n" + file_bytes;
  json r{{"tool", kToolName},
         {"version", kVersion},
         {"operation", operation},
         {"input_digest", "fnv1a64:" + hex64(fnv1a(digest_input))},
         {"parameters", params},
         {"outputs", out.outputs},
         {"status", out.holds ? "ok" : "failed"}};
  if (wall_ms) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << *wall_ms;
    r["timing"] = {{"wall_ms", ms.str()}};
  } else {
    r["timing"] = "not recorded";
  }
  return r;
}

/// Runs one parsed command and writes the report; returns the process exit code.
inline int execute(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    detail::Context c{o, o.scan(), std::nullopt};
    std::string bytes;
    if (o.file) {
      std::ifstream in(*o.file, std::ios::binary);
      if (!in) throw InputError("cannot open " + *o.file);
      std::ostringstream ss;
      ss << in.rdbuf();
      bytes = ss.str();
      c.def = definition::parse_text(bytes);
    }
    if (o.ell && !is_prime(*o.ell)) throw InputError("--ell must be a prime");
    if (o.modulus_exponent && *o.modulus_exponent < 1) throw InputError("--modulus-exponent must be positive");
    if (o.depth && *o.depth < 2) throw InputError("--depth must be at least 2");
    if (o.cap < 1) throw InputError("--cap must be positive");
    const auto start = std::chrono::steady_clock::now();
    Outcome res;
    if (o.command == "slope") res = detail::run_slope(c);
    else if (o.command == "gamma") res = detail::run_gamma(c);
    else if (o.command == "delta") res = detail::run_delta(c);
    else if (o.command == "filtration") res = detail::run_filtration(c);
    else if (o.command == "count") res = detail::run_count(c);
    else if (o.command == "fixer") res = detail::run_fixer(c);
    else if (o.command == "verify") res = detail::run_verify(c);
    else if (o.command == "catalog") res = detail::run_catalog(c);
    else throw InputError("unknown command '" + o.command + "'");
    std::optional<double> wall;
    if (o.timing) wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    // an emitted definition is printed bare so it can be saved and read back
    const bool bare = o.command == "catalog" && o.catalog;
    json report = bare ? res.outputs : make_report(o, bytes, res, wall);
    out << (o.format == "table" ? render_table(report) : report.dump(2) + "\n");
    return res.holds ? kOk : kVerificationFailed;
  } catch (const EnumerationTooLarge& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return kGuardExceeded;
  } catch (const ArithmeticOverflow& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return kGuardExceeded;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

/// Parses argv and runs the command.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options o;
  CLI::App app{"Slopes of linear group actions, fixer indices and torsion exponents, computed exactly.", kToolName};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--ell", o.ell, "prime ell");
  app.add_option("--modulus-exponent,-m", o.modulus_exponent, "work modulo ell^m");
  app.add_option("--depth", o.depth, "filtration depth (modulus exponent of the filtered group)");
  app.add_option("--cap", o.cap, "maximum number of enumerated items")->capture_default_str();
  app.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--parallel", o.parallel, "worker threads (0 = available cores)");
  app.add_option("--catalog", o.catalog, "catalog entry");
  app.add_option("--g", o.g, "g for gsp/sp and models");
  app.add_option("--n", o.n, "ambient dimension for gl/sl/split_torus");
  app.add_option("--file", o.file, "definition file")->check(CLI::ExistingFile);
  app.add_option("--primes", o.primes, "comma-separated primes")->delimiter(',');
  app.add_flag("--timing", o.timing, "record wall time (the report is then no longer reproducible byte for byte)");

  auto* slope = app.add_subcommand("slope", "alpha, gamma, d_r and the maximal minimizer of a Lie algebra");
  auto* gamma = app.add_subcommand("gamma", "gamma_A of a model, with gamma_{A,ell} over --primes");
  auto* delta = app.add_subcommand("delta", "delta = dim G - d_1 and d over the quadratic extensions");
  auto* filt = app.add_subcommand("filtration", "congruence filtration of a finite matrix group");
  auto* cnt = app.add_subcommand("count", "points of a scheme modulo ell^k for k <= m");
  auto* fixer = app.add_subcommand("fixer", "fixer indices over a subgroup family, and exponent saturation");
  fixer->add_option("--family", o.family, "cyclic or all")->capture_default_str();
  fixer->add_option("--expected-floor", o.expected_floor, "constant c to check index >= c |H|^alpha against");
  auto* verify = app.add_subcommand("verify", "check one lemma by exhaustive computation");
  verify->add_option("lemma", o.lemma, "lemma id")->required()->check(CLI::IsMember(lemma_ids()));
  verify->add_option("--expected-floor", o.expected_floor, "constant c for fix-index");
  auto* cat = app.add_subcommand("catalog", "list the catalogs, or emit one entry as a definition file");
  cat->add_option("--kind", o.kind, "lie, scheme or model")->check(CLI::IsMember({"lie", "scheme", "model"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  for (auto* s : {slope, gamma, delta, filt, cnt, fixer, verify, cat})
    if (s->parsed()) o.command = s->get_name();
  return execute(o, out, err);
}

}  // namespace slopes::cli
