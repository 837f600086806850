#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "group_schemes.hpp"
#include "groups.hpp"
#include "torsion.hpp"

namespace slopes::definition {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

enum class Kind { lie, generators, scheme, model };

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::lie: return "lie";
    case Kind::generators: return "generators";
    case Kind::scheme: return "scheme";
    default: return "model";
  }
}

struct RingSpec {
  i64 ell = 0;
  int m = 1;
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// A catalog entry and its size parameter, as in the catalog lookups.
struct CatalogRef {
  std::string id;
  std::size_t size = 0;
  friend bool operator==(const CatalogRef&, const CatalogRef&) = default;
};

struct Attestation {
  std::vector<std::vector<std::vector<i64>>> isotypic_components;  ///< spanning vectors of each component
  std::optional<bool> mt_attested;
  std::optional<bool> cm_power;

  bool empty() const { return isotypic_components.empty() && !mt_attested && !cm_power; }
  friend bool operator==(const Attestation&, const Attestation&) = default;
};

struct LiePayload {
  std::optional<CatalogRef> catalog;
  std::vector<IntMatrix> basis;
  friend bool operator==(const LiePayload&, const LiePayload&) = default;
};

struct GeneratorsPayload {
  std::vector<IntMatrix> matrices;
  friend bool operator==(const GeneratorsPayload&, const GeneratorsPayload&) = default;
};

/// Polynomials in n base variables; `matrix_size` s marks a matrix group scheme with n = s^2.
struct SchemePayload {
  std::optional<CatalogRef> catalog;
  std::vector<Polynomial> equations;
  std::vector<Polynomial> units;
  std::optional<std::size_t> matrix_size;
  std::optional<Point> section;
  friend bool operator==(const SchemePayload&, const SchemePayload&) = default;
};

struct ModelPayload {
  std::optional<CatalogRef> catalog;
  std::optional<GroupSpec> group;
  std::vector<ModelFactor> factors;
  std::map<std::vector<std::size_t>, std::size_t> group_dims;
  friend bool operator==(const ModelPayload&, const ModelPayload&) = default;
};

using Payload = std::variant<LiePayload, GeneratorsPayload, SchemePayload, ModelPayload>;

struct DefinitionFile {
  int format_version = kFormatVersion;
  Kind kind = Kind::lie;
  std::string name;
  std::size_t n = 0;
  std::optional<RingSpec> ring;
  Payload payload;
  Attestation attestation;

  friend bool operator==(const DefinitionFile&, const DefinitionFile&) = default;
};

// ---------------------------------------------------------------------------
// Reading

namespace detail {

inline void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw InputError(where + ": unknown field '" + it.key() + "'");
  }
}

inline const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

inline i64 get_int(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) {
    if (j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<i64>::max())) throw InputError(where + ": integer exceeds 64 bits");
    return static_cast<i64>(j.get<std::uint64_t>());
  }
  if (j.is_number_integer()) return j.get<i64>();
  if (j.is_number_float()) throw InputError(where + ": not an integer, or outside the 64-bit range");
  throw InputError(where + ": expected an integer");
}

inline std::size_t get_count(const json& j, const std::string& where) {
  i64 v = get_int(j, where);
  if (v < 0) throw InputError(where + ": must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

inline bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw InputError(where + ": expected true or false");
  return j.get<bool>();
}

inline const json& get_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  return j;
}

inline std::vector<i64> int_vector(const json& j, std::size_t len, const std::string& where) {
  get_array(j, where);
  if (j.size() != len) throw InputError(where + ": expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  std::vector<i64> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<IntMatrix> matrix_list(const json& j, std::size_t n, const std::string& where) {
  get_array(j, where);
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.emplace_back(n, n, int_vector(j[i], n * n, where + "[" + std::to_string(i) + "]"));
  return out;
}

inline CatalogRef catalog_ref(const json& j, const std::string& where) {
  only_keys(j, {"id", "size"}, where);
  return {get_string(need(j, "id", where), where + ".id"), j.contains("size") ? get_count(j["size"], where + ".size") : 0};
}

inline Polynomial polynomial(const json& j, std::size_t nvars, const std::string& where) {
  get_array(j, where);
  Polynomial p(nvars);
  std::set<Polynomial::Exponents> seen;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string w = where + "[" + std::to_string(t) + "]";
    only_keys(j[t], {"c", "e"}, w);
    i64 c = get_int(need(j[t], "c", w), w + ".c");
    auto ev = int_vector(need(j[t], "e", w), nvars, w + ".e");
    Polynomial::Exponents e;
    for (auto x : ev) {
      if (x < 0 || x > std::numeric_limits<int>::max()) throw InputError(w + ".e: exponent out of range");
      e.push_back(static_cast<int>(x));
    }
    if (!seen.insert(e).second) throw InputError(w + ": repeated monomial");
    p.add_term(e, c);
  }
  return p;
}

inline std::vector<Polynomial> polynomial_list(const json& j, std::size_t nvars, const std::string& where) {
  get_array(j, where);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(polynomial(j[i], nvars, where + "[" + std::to_string(i) + "]"));
  return out;
}

inline GroupSpec group_spec(const json& j, const std::string& where) {
  only_keys(j, {"catalog", "matrices", "product"}, where);
  if (j.size() != 1) throw InputError(where + ": exactly one of catalog, matrices, product");
  if (j.contains("catalog")) {
    auto c = catalog_ref(j["catalog"], where + ".catalog");
    return GroupSpec::catalog_ref(c.id, c.size);
  }
  if (j.contains("matrices")) {
    const json& m = j["matrices"];
    only_keys(m, {"n", "basis"}, where + ".matrices");
    std::size_t n = get_count(need(m, "n", where + ".matrices"), where + ".matrices.n");
    if (n == 0) throw InputError(where + ".matrices.n: must be positive");
    return GroupSpec::matrices(n, matrix_list(need(m, "basis", where + ".matrices"), n, where + ".matrices.basis"));
  }
  const json& parts = get_array(j["product"], where + ".product");
  std::vector<GroupSpec> out;
  for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(group_spec(parts[i], where + ".product[" + std::to_string(i) + "]"));
  return GroupSpec::product(std::move(out));
}

inline ModelFactor model_factor(const json& j, const std::string& where) {
  only_keys(j, {"label", "dim", "multiplicity", "coordinates"}, where);
  ModelFactor f;
  f.label = get_string(need(j, "label", where), where + ".label");
  f.dim = get_count(need(j, "dim", where), where + ".dim");
  f.multiplicity = j.contains("multiplicity") ? get_count(j["multiplicity"], where + ".multiplicity") : 1;
  const json& c = get_array(need(j, "coordinates", where), where + ".coordinates");
  for (std::size_t i = 0; i < c.size(); ++i) f.coordinates.push_back(get_count(c[i], where + ".coordinates[" + std::to_string(i) + "]"));
  return f;
}

inline LiePayload lie_payload(const json& j, std::size_t n) {
  only_keys(j, {"catalog", "basis"}, "payload");
  LiePayload p;
  if (j.contains("catalog") == j.contains("basis")) throw InputError("payload: exactly one of catalog, basis");
  if (j.contains("catalog")) p.catalog = catalog_ref(j["catalog"], "payload.catalog");
  else p.basis = matrix_list(j["basis"], n, "payload.basis");
  return p;
}

inline GeneratorsPayload generators_payload(const json& j, std::size_t n) {
  only_keys(j, {"matrices"}, "payload");
  return {matrix_list(need(j, "matrices", "payload"), n, "payload.matrices")};
}

inline SchemePayload scheme_payload(const json& j, std::size_t n) {
  only_keys(j, {"catalog", "equations", "units", "matrix_size", "section"}, "payload");
  SchemePayload p;
  if (j.contains("catalog")) {
    if (j.contains("equations") || j.contains("units") || j.contains("matrix_size"))
      throw InputError("payload: a catalog scheme takes no equations, units or matrix_size");
    p.catalog = catalog_ref(j["catalog"], "payload.catalog");
  } else {
    p.equations = polynomial_list(need(j, "equations", "payload"), n, "payload.equations");
    if (j.contains("units")) p.units = polynomial_list(j["units"], n, "payload.units");
    if (j.contains("matrix_size")) {
      std::size_t s = get_count(j["matrix_size"], "payload.matrix_size");
      if (s == 0 || s * s != n) throw InputError("payload.matrix_size: its square must be n");
      p.matrix_size = s;
    }
  }
  if (j.contains("section")) {
    const json& s = get_array(j["section"], "payload.section");
    Point x;
    for (std::size_t i = 0; i < s.size(); ++i) x.push_back(get_int(s[i], "payload.section[" + std::to_string(i) + "]"));
    p.section = std::move(x);
  }
  return p;
}

inline ModelPayload model_payload(const json& j) {
  only_keys(j, {"catalog", "group", "factors", "group_dims"}, "payload");
  ModelPayload p;
  if (j.contains("catalog")) {
    if (j.contains("group") || j.contains("factors") || j.contains("group_dims"))
      throw InputError("payload: a catalog model takes no group, factors or group_dims");
    p.catalog = catalog_ref(j["catalog"], "payload.catalog");
    return p;
  }
  p.group = group_spec(need(j, "group", "payload"), "payload.group");
  const json& fs = get_array(need(j, "factors", "payload"), "payload.factors");
  for (std::size_t i = 0; i < fs.size(); ++i) p.factors.push_back(model_factor(fs[i], "payload.factors[" + std::to_string(i) + "]"));
  if (j.contains("group_dims")) {
    const json& gd = get_array(j["group_dims"], "payload.group_dims");
    for (std::size_t i = 0; i < gd.size(); ++i) {
      const std::string w = "payload.group_dims[" + std::to_string(i) + "]";
      only_keys(gd[i], {"subset", "dim"}, w);
      const json& s = get_array(need(gd[i], "subset", w), w + ".subset");
      std::vector<std::size_t> I;
      for (std::size_t k = 0; k < s.size(); ++k) I.push_back(get_count(s[k], w + ".subset"));
      if (!p.group_dims.emplace(I, get_count(need(gd[i], "dim", w), w + ".dim")).second) throw InputError(w + ": repeated subset");
    }
  }
  return p;
}

inline Attestation attestation(const json& j, std::size_t n) {
  only_keys(j, {"isotypic_components", "mt_attested", "cm_power"}, "attestation");
  Attestation a;
  if (j.contains("isotypic_components")) {
    const json& comps = get_array(j["isotypic_components"], "attestation.isotypic_components");
    if (comps.empty()) throw InputError("attestation.isotypic_components: empty");
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::string w = "attestation.isotypic_components[" + std::to_string(c) + "]";
      const json& vs = get_array(comps[c], w);
      std::vector<std::vector<i64>> comp;
      for (std::size_t k = 0; k < vs.size(); ++k) comp.push_back(int_vector(vs[k], n, w + "[" + std::to_string(k) + "]"));
      a.isotypic_components.push_back(std::move(comp));
    }
  }
  if (j.contains("mt_attested")) a.mt_attested = get_bool(j["mt_attested"], "attestation.mt_attested");
  if (j.contains("cm_power")) a.cm_power = get_bool(j["cm_power"], "attestation.cm_power");
  return a;
}

}  // namespace detail

inline DefinitionFile parse(const json& j) {
  detail::only_keys(j, {"format_version", "kind", "name", "n", "ring", "payload", "attestation"}, "definition");
  DefinitionFile d;
  i64 version = detail::get_int(detail::need(j, "format_version", "definition"), "format_version");
  if (version != kFormatVersion) throw InputError("format_version " + std::to_string(version) + " is not supported");
  const std::string kind = detail::get_string(detail::need(j, "kind", "definition"), "kind");
  if (kind == "lie") d.kind = Kind::lie;
  else if (kind == "generators") d.kind = Kind::generators;
  else if (kind == "scheme") d.kind = Kind::scheme;
  else if (kind == "model") d.kind = Kind::model;
  else throw InputError("kind: unknown kind '" + kind + "'");
  d.name = detail::get_string(detail::need(j, "name", "definition"), "name");
  d.n = detail::get_count(detail::need(j, "n", "definition"), "n");
  if (d.n == 0) throw InputError("n: must be positive");
  if (j.contains("ring")) {
    const json& r = j["ring"];
    detail::only_keys(r, {"ell", "m"}, "ring");
    RingSpec rs{detail::get_int(detail::need(r, "ell", "ring"), "ring.ell"), 1};
    if (!is_prime(rs.ell)) throw InputError("ring.ell: not a prime");
    if (r.contains("m")) {
      i64 m = detail::get_int(r["m"], "ring.m");
      if (m < 1 || m > 62) throw InputError("ring.m: must be between 1 and 62");
      rs.m = static_cast<int>(m);
    }
    d.ring = rs;
  }
  const json& p = detail::need(j, "payload", "definition");
  switch (d.kind) {
    case Kind::lie: d.payload = detail::lie_payload(p, d.n); break;
    case Kind::generators:
      if (!d.ring) throw InputError("ring: required for generators");
      d.payload = detail::generators_payload(p, d.n);
      break;
    case Kind::scheme: d.payload = detail::scheme_payload(p, d.n); break;
    case Kind::model: d.payload = detail::model_payload(p); break;
  }
  if (j.contains("attestation")) d.attestation = detail::attestation(j["attestation"], d.n);
  if (!d.attestation.isotypic_components.empty() && d.kind != Kind::lie) throw InputError("attestation.isotypic_components: only lie definitions take components");
  if ((d.attestation.mt_attested || d.attestation.cm_power) && d.kind != Kind::model) throw InputError("attestation: mt_attested and cm_power only apply to models");
  return d;
}

inline DefinitionFile parse_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("definition file is not valid JSON: ") + e.what());
  }
  return parse(j);
}

inline DefinitionFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

// ---------------------------------------------------------------------------
// Writing

namespace detail {

inline json matrices_json(const std::vector<IntMatrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(m.data());
  return a;
}

inline json catalog_json(const CatalogRef& c) { return {{"id", c.id}, {"size", c.size}}; }

inline json polynomial_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"c", c}, {"e", e}});
  return terms;
}

inline json group_spec_json(const GroupSpec& g) {
  switch (g.kind) {
    case GroupSpec::Kind::catalog: return {{"catalog", catalog_json({g.id, g.size})}};
    case GroupSpec::Kind::matrices: return {{"matrices", {{"n", g.dim_n}, {"basis", matrices_json(g.spanning)}}}};
    case GroupSpec::Kind::product: {
      json parts = json::array();
      for (const auto& p : g.parts) parts.push_back(group_spec_json(p));
      return {{"product", parts}};
    }
  }
  return {};
}

}  // namespace detail

inline json to_json(const DefinitionFile& d) {
  json j{{"format_version", d.format_version}, {"kind", to_string(d.kind)}, {"name", d.name}, {"n", d.n}};
  if (d.ring) j["ring"] = {{"ell", d.ring->ell}, {"m", d.ring->m}};
  json p = json::object();
  std::visit(
      [&](const auto& pl) {
        using T = std::decay_t<decltype(pl)>;
        if constexpr (std::is_same_v<T, LiePayload>) {
          if (pl.catalog) p["catalog"] = detail::catalog_json(*pl.catalog);
          else p["basis"] = detail::matrices_json(pl.basis);
        } else if constexpr (std::is_same_v<T, GeneratorsPayload>) {
          p["matrices"] = detail::matrices_json(pl.matrices);
        } else if constexpr (std::is_same_v<T, SchemePayload>) {
          if (pl.catalog) {
            p["catalog"] = detail::catalog_json(*pl.catalog);
          } else {
            p["equations"] = json::array();
            for (const auto& e : pl.equations) p["equations"].push_back(detail::polynomial_json(e));
            if (!pl.units.empty()) {
              p["units"] = json::array();
              for (const auto& u : pl.units) p["units"].push_back(detail::polynomial_json(u));
            }
            if (pl.matrix_size) p["matrix_size"] = *pl.matrix_size;
          }
          if (pl.section) p["section"] = *pl.section;
        } else {
          if (pl.catalog) {
            p["catalog"] = detail::catalog_json(*pl.catalog);
          } else {
            p["group"] = detail::group_spec_json(*pl.group);
            p["factors"] = json::array();
            for (const auto& f : pl.factors)
              p["factors"].push_back({{"label", f.label}, {"dim", f.dim}, {"multiplicity", f.multiplicity}, {"coordinates", f.coordinates}});
            if (!pl.group_dims.empty()) {
              p["group_dims"] = json::array();
              for (const auto& [I, dim] : pl.group_dims) p["group_dims"].push_back({{"subset", I}, {"dim", dim}});
            }
          }
        }
      },
      d.payload);
  j["payload"] = p;
  if (!d.attestation.empty()) {
    json a = json::object();
    if (!d.attestation.isotypic_components.empty()) a["isotypic_components"] = d.attestation.isotypic_components;
    if (d.attestation.mt_attested) a["mt_attested"] = *d.attestation.mt_attested;
    if (d.attestation.cm_power) a["cm_power"] = *d.attestation.cm_power;
    j["attestation"] = a;
  }
  return j;
}

inline std::string dump(const DefinitionFile& d) { return to_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Core objects

/// The field a lie definition lives over: the caller's prime wins over the file's ring.
inline Field field_for(const DefinitionFile& d, std::optional<i64> ell) {
  if (ell) return Field::prime(*ell);
  if (d.ring) return Field::prime(d.ring->ell);
  throw InputError("no prime given: pass --ell or add a ring to the definition");
}

inline MonodromyModel model(const DefinitionFile& d) {
  if (d.kind != Kind::model) throw InputError(d.name + " is a " + to_string(d.kind) + " definition, not a model");
  const auto& p = std::get<ModelPayload>(d.payload);
  MonodromyModel m;
  if (p.catalog) {
    m = models::by_name(p.catalog->id, p.catalog->size == 0 ? 2 : p.catalog->size);
  } else {
    m.name = d.name;
    m.n = d.n;
    m.group = *p.group;
    m.factors = p.factors;
    m.group_dims = p.group_dims;
  }
  if (d.attestation.mt_attested) m.mt_attested = *d.attestation.mt_attested;
  if (d.attestation.cm_power) m.cm_power = *d.attestation.cm_power;
  if (m.n != d.n) throw InputError("n: the model acts on dimension " + std::to_string(m.n));
  m.validate();
  return m;
}

inline GroupScheme group_scheme(const DefinitionFile& d) {
  if (d.kind != Kind::scheme) throw InputError(d.name + " is a " + std::string(to_string(d.kind)) + " definition, not a scheme");
  const auto& p = std::get<SchemePayload>(d.payload);
  if (!p.catalog) return GroupScheme{d.name, p.matrix_size.value_or(0), AffineSchemeMod(d.n, p.equations, p.units)};
  GroupScheme G = group_schemes::by_name(p.catalog->id, p.catalog->size);
  if (G.n * G.n != d.n) throw InputError("n: catalog scheme " + G.name + " has " + std::to_string(G.n * G.n) + " base variables");
  return G;
}

inline bool is_matrix_group(const DefinitionFile& d) {
  if (d.kind != Kind::scheme) return false;
  const auto& p = std::get<SchemePayload>(d.payload);
  return p.catalog || p.matrix_size;
}

inline std::optional<Point> section(const DefinitionFile& d) {
  if (d.kind != Kind::scheme) return std::nullopt;
  return std::get<SchemePayload>(d.payload).section;
}

/// The Lie algebra over F_ell: the listed one, the tangent algebra of a matrix group scheme, or a model's surrogate.
inline LieAlgebraRep lie_algebra(const DefinitionFile& d, std::optional<i64> ell = std::nullopt) {
  const Field f = field_for(d, ell);
  switch (d.kind) {
    case Kind::lie: {
      const auto& p = std::get<LiePayload>(d.payload);
      LieAlgebraRep g = p.catalog ? catalog::lie_by_name(p.catalog->id, f, p.catalog->size) : LieAlgebraRep(f, d.n, p.basis);
      if (g.n() != d.n) throw InputError("n: catalog entry acts on dimension " + std::to_string(g.n()));
      return g;
    }
    case Kind::scheme:
      if (!is_matrix_group(d)) throw InputError(d.name + " is not a matrix group scheme");
      return tangent_lie_algebra(group_scheme(d), f.characteristic());
    case Kind::model: return model(d).group.lie(f);
    default: throw InputError(d.name + " is a generators definition; it has no Lie algebra of its own");
  }
}

inline std::vector<Subspace> isotypic_components(const DefinitionFile& d, const Field& f) {
  std::vector<Subspace> out;
  for (const auto& comp : d.attestation.isotypic_components) out.push_back(Subspace::span(f, d.n, comp));
  return out;
}

/// The finite group: generated by the listed matrices, or the points of a matrix group scheme.
inline FiniteMatrixGroup finite_group(const DefinitionFile& d, std::optional<RingSpec> ring = std::nullopt, const ScanOptions& opt = {}) {
  RingSpec r = ring ? *ring : d.ring.value_or(RingSpec{});
  if (r.ell == 0) throw InputError("no ring given: pass --ell and --modulus-exponent or add a ring to the definition");
  if (d.kind == Kind::generators)
    return FiniteMatrixGroup::generate(ResidueRing(r.ell, r.m), d.n, std::get<GeneratorsPayload>(d.payload).matrices, opt.cap);
  if (is_matrix_group(d)) return FiniteMatrixGroup::from_scheme(group_scheme(d), r.ell, r.m, opt);
  throw InputError(d.name + " does not define a matrix group");
}

using CoreObject = std::variant<LieAlgebraRep, FiniteMatrixGroup, GroupScheme, MonodromyModel>;

/// The single object a definition stands for.
inline CoreObject resolve(const DefinitionFile& d, std::optional<i64> ell = std::nullopt, const ScanOptions& opt = {}) {
  switch (d.kind) {
    case Kind::lie: return lie_algebra(d, ell);
    case Kind::generators: return finite_group(d, std::nullopt, opt);
    case Kind::scheme: return group_scheme(d);
    default: return model(d);
  }
}

// ---------------------------------------------------------------------------
// From core objects

inline DefinitionFile lie_catalog_entry(const std::string& id, std::size_t size, i64 ell) {
  auto g = catalog::lie_by_name(id, Field::prime(ell), size);
  return {kFormatVersion, Kind::lie, id, g.n(), RingSpec{ell, 1}, LiePayload{CatalogRef{id, size}, {}}, {}};
}

/// An explicit basis; the field must be prime.
inline DefinitionFile from_lie(const std::string& name, const LieAlgebraRep& g) {
  if (!g.field().is_prime_field()) throw DomainError("only prime fields serialize");
  return {kFormatVersion, Kind::lie, name, g.n(), RingSpec{g.field().characteristic(), 1}, LiePayload{std::nullopt, g.basis()}, {}};
}

inline DefinitionFile from_generators(const std::string& name, const ResidueRing& ring, std::size_t n, std::vector<IntMatrix> gens) {
  return {kFormatVersion, Kind::generators, name, n, RingSpec{ring.ell(), ring.exponent()}, GeneratorsPayload{std::move(gens)}, {}};
}

inline DefinitionFile scheme_catalog_entry(const std::string& id, std::size_t size) {
  auto G = group_schemes::by_name(id, size);
  return {kFormatVersion, Kind::scheme, G.name, G.n * G.n, std::nullopt, SchemePayload{CatalogRef{id, size}, {}, {}, std::nullopt, std::nullopt}, {}};
}

inline DefinitionFile from_scheme(const GroupScheme& G) {
  const auto& S = G.scheme;
  std::optional<std::size_t> s;
  if (G.n > 0) s = G.n;
  return {kFormatVersion, Kind::scheme, G.name, S.base_vars(), std::nullopt, SchemePayload{std::nullopt, S.polys(), S.unit_constraints(), s, std::nullopt}, {}};
}

inline DefinitionFile model_catalog_entry(const std::string& id, std::size_t g = 2) {
  auto m = models::by_name(id, g);
  return {kFormatVersion, Kind::model, m.name, m.n, std::nullopt, ModelPayload{CatalogRef{id, id == "gsp" ? g : 0}, std::nullopt, {}, {}}, {}};
}

inline DefinitionFile from_model(const MonodromyModel& m) {
  Attestation a;
  a.mt_attested = m.mt_attested;
  a.cm_power = m.cm_power;
  return {kFormatVersion, Kind::model, m.name, m.n, std::nullopt, ModelPayload{std::nullopt, m.group, m.factors, m.group_dims}, a};
}

}  // namespace slopes::definition
