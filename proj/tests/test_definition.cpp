#include <gtest/gtest.h>

#include "slopes/definition.hpp"

using namespace slopes;
namespace def = slopes::definition;

namespace {

const std::string kData = SLOPES_DATA_DIR;

def::DefinitionFile reparse(const def::DefinitionFile& d) { return def::parse_text(def::dump(d)); }

// A valid lie definition to mutate in the rejection tests.
def::json base_lie() {
  return def::json::parse(R"({"format_version": 1, "kind": "lie", "name": "t", "n": 2,
                              "payload": {"basis": [[1, 0, 0, 1], [0, -1, 1, 0]]}})");
}

struct LieEntry {
  std::string id;
  std::size_t size;
};

const std::vector<LieEntry> kLieEntries{{"gl", 1}, {"gl", 2}, {"gl", 3}, {"sl", 2}, {"sl", 3}, {"sp", 1}, {"sp", 2}, {"gsp", 1}, {"gsp", 2},
                                        {"split_torus", 2}, {"split_torus", 3}, {"nonsplit_torus", 1}, {"nonsplit_torus", 2},
                                        {"gl2_plus_scalar", 0}, {"mu_p", 0}, {"cm_surface", 0}, {"cm_pair", 0}, {"gl2_times_cm", 0}};

}  // namespace

TEST(RoundTrip, LieCatalog) {
  for (i64 ell : {3, 5}) {
    const Field f = Field::prime(ell);
    for (const auto& [id, size] : kLieEntries) {
      auto g = catalog::lie_by_name(id, f, size);
      auto ref = def::lie_catalog_entry(id, size, ell);
      EXPECT_EQ(reparse(ref), ref) << id;
      EXPECT_EQ(def::lie_algebra(reparse(ref)), g) << id;
      auto full = def::from_lie(id, g);
      EXPECT_EQ(reparse(full), full) << id;
      EXPECT_EQ(def::lie_algebra(reparse(full)), g) << id;
    }
  }
}

TEST(RoundTrip, SchemeCatalog) {
  std::vector<std::pair<std::string, std::size_t>> entries{{"gl", 1}, {"gl", 2}, {"sl", 2}, {"sp", 1}, {"sp", 2}, {"gsp", 1}, {"gsp", 2},
                                                           {"split_torus", 2}, {"nonsplit_torus", 1}, {"mu_p", 3}, {"trivial", 2},
                                                           {"gl2_plus_scalar", 0}};
  for (const auto& [id, size] : entries) {
    auto G = group_schemes::by_name(id, size);
    auto ref = def::scheme_catalog_entry(id, size);
    EXPECT_EQ(reparse(ref), ref) << id;
    EXPECT_EQ(def::group_scheme(reparse(ref)), G) << id;
    auto full = def::from_scheme(G);
    EXPECT_EQ(reparse(full), full) << id;
    EXPECT_EQ(def::group_scheme(reparse(full)), G) << id;
  }
}

TEST(RoundTrip, Models) {
  auto all = models::all();
  all.push_back(models::gsp(3));
  all.push_back(product_model(models::cm_pair(), models::elliptic_noncm()));
  for (const auto& m : all) {
    auto full = def::from_model(m);
    EXPECT_EQ(reparse(full), full) << m.name;
    EXPECT_EQ(def::model(reparse(full)), m) << m.name;
  }
  for (const auto& id : models::names()) {
    auto ref = def::model_catalog_entry(id, 3);
    EXPECT_EQ(reparse(ref), ref) << id;
    EXPECT_EQ(def::model(reparse(ref)), models::by_name(id, 3)) << id;
  }
}

TEST(RoundTrip, Generators) {
  auto d = def::from_generators("sl2", ResidueRing(3, 3), 2, {IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}});
  EXPECT_EQ(reparse(d), d);
  auto G = std::get<FiniteMatrixGroup>(def::resolve(reparse(d)));
  EXPECT_EQ(G.order(), 17496);
}

TEST(RoundTrip, SerializationIsCanonical) {
  auto d = def::from_model(models::cm_pair());
  EXPECT_EQ(def::dump(d), def::dump(reparse(d)));
}

TEST(DataFiles, NonsplitTorus) {
  auto d = def::load(kData + "/torus_nonsplit.json");
  auto rep = alpha(def::lie_algebra(d, 3));
  EXPECT_EQ(rep.d[1], 0u);
  EXPECT_EQ(static_cast<i64>(rep.lie_dim) - static_cast<i64>(rep.d[1]), 2);
  EXPECT_EQ(def::lie_algebra(d, 3), catalog::nonsplit_torus(Field::prime(3)));
  EXPECT_THROW(def::lie_algebra(d), InputError);  // no ring in the file
}

TEST(DataFiles, AllParse) {
  for (const char* f : {"torus_nonsplit", "block_with_scalar", "sl2_mod27", "node", "cm_pair_model"}) {
    auto d = def::load(kData + "/" + f + ".json");
    EXPECT_EQ(reparse(d), d) << f;
  }
  auto comps = def::load(kData + "/block_with_scalar.json");
  EXPECT_EQ(def::isotypic_components(comps, Field::prime(3)).size(), 2u);
  auto m = def::model(def::load(kData + "/cm_pair_model.json"));
  EXPECT_EQ(gamma_A(m).gamma, gamma_A(models::cm_pair()).gamma);
  EXPECT_EQ(gamma_A(m).fraction(), gamma_A(models::cm_pair()).fraction());
}

TEST(Rejects, UnknownFieldsAtEveryLevel) {
  auto j = base_lie();
  j["colour"] = "blue";
  EXPECT_THROW(def::parse(j), InputError);
  j = base_lie();
  j["payload"]["extra"] = 1;
  EXPECT_THROW(def::parse(j), InputError);
  j = base_lie();
  j["ring"] = {{"ell", 3}, {"k", 1}};
  EXPECT_THROW(def::parse(j), InputError);
  auto m = def::to_json(def::from_model(models::cm_pair()));
  m["payload"]["factors"][0]["weight"] = 2;
  EXPECT_THROW(def::parse(m), InputError);
  m = def::to_json(def::from_model(models::cm_pair()));
  m["payload"]["group"]["catalog"]["D"] = 2;
  EXPECT_THROW(def::parse(m), InputError);
  m = def::to_json(def::from_model(models::cm_pair()));
  m["attestation"]["cm"] = true;
  EXPECT_THROW(def::parse(m), InputError);
  auto s = def::to_json(def::from_scheme(group_schemes::sl(2)));
  s["payload"]["equations"][0][0]["d"] = 0;
  EXPECT_THROW(def::parse(s), InputError);
}

TEST(Rejects, IntegersBeyondSixtyFourBits) {
  EXPECT_THROW(def::parse_text(R"({"format_version": 1, "kind": "lie", "name": "t", "n": 1,
                                   "payload": {"basis": [[18446744073709551615]]}})"),
               InputError);
  EXPECT_THROW(def::parse_text(R"({"format_version": 1, "kind": "lie", "name": "t", "n": 1,
                                   "payload": {"basis": [[36893488147419103232]]}})"),
               InputError);
  EXPECT_THROW(def::parse_text(R"({"format_version": 1, "kind": "lie", "name": "t", "n": 1, "payload": {"basis": [[1.5]]}})"), InputError);
  // the extremes themselves are fine
  auto d = def::parse_text(R"({"format_version": 1, "kind": "lie", "name": "t", "n": 1,
                               "payload": {"basis": [[9223372036854775807], [-9223372036854775808]]}})");
  EXPECT_EQ(std::get<def::LiePayload>(d.payload).basis[1](0, 0), std::numeric_limits<i64>::min());
}

TEST(Rejects, StructuralErrors) {
  auto j = base_lie();
  j["format_version"] = 2;
  EXPECT_THROW(def::parse(j), InputError);
  j = base_lie();
  j["kind"] = "variety";
  EXPECT_THROW(def::parse(j), InputError);
  j = base_lie();
  j["payload"]["basis"][0] = {1, 0, 0};
  EXPECT_THROW(def::parse(j), InputError);
  j = base_lie();
  j["payload"]["catalog"] = {{"id", "gl"}, {"size", 2}};
  EXPECT_THROW(def::parse(j), InputError);  // both catalog and basis
  j = base_lie();
  j["ring"] = {{"ell", 4}};
  EXPECT_THROW(def::parse(j), InputError);
  j = base_lie();
  j.erase("n");
  EXPECT_THROW(def::parse(j), InputError);
  EXPECT_THROW(def::parse_text("{not json"), InputError);
  EXPECT_THROW(def::parse_text(R"({"format_version": 1, "kind": "generators", "name": "g", "n": 2, "payload": {"matrices": []}})"), InputError);
  // attestation flags belong to the right kinds
  j = base_lie();
  j["attestation"] = {{"cm_power", true}};
  EXPECT_THROW(def::parse(j), InputError);
  auto m = def::to_json(def::from_model(models::cm_pair()));
  m["attestation"]["isotypic_components"] = {{{1, 0, 0, 0}}};
  EXPECT_THROW(def::parse(m), InputError);
}

TEST(Rejects, SchemeShapes) {
  EXPECT_THROW(def::parse_text(R"({"format_version": 1, "kind": "scheme", "name": "s", "n": 2,
                                   "payload": {"equations": [[{"c": 1, "e": [1, 0]}, {"c": 2, "e": [1, 0]}]]}})"),
               InputError);  // repeated monomial
  EXPECT_THROW(def::parse_text(R"({"format_version": 1, "kind": "scheme", "name": "s", "n": 2,
                                   "payload": {"equations": [[{"c": 1, "e": [-1, 0]}]]}})"),
               InputError);
  EXPECT_THROW(def::parse_text(R"({"format_version": 1, "kind": "scheme", "name": "s", "n": 3,
                                   "payload": {"equations": [], "matrix_size": 2}})"),
               InputError);
}

TEST(Rejects, ModelConsistency) {
  auto m = def::to_json(def::from_model(models::cm_pair()));
  m["n"] = 6;
  EXPECT_THROW(def::model(def::parse(m)), InputError);
  m = def::to_json(def::from_model(models::cm_pair()));
  m["payload"]["factors"][1]["coordinates"] = {1, 2};
  EXPECT_THROW(def::model(def::parse(m)), InputError);
}

TEST(Resolve, ExactlyOneObjectPerKind) {
  EXPECT_TRUE(std::holds_alternative<LieAlgebraRep>(def::resolve(def::lie_catalog_entry("gl", 2, 3))));
  EXPECT_TRUE(std::holds_alternative<GroupScheme>(def::resolve(def::scheme_catalog_entry("sl", 2))));
  EXPECT_TRUE(std::holds_alternative<MonodromyModel>(def::resolve(def::model_catalog_entry("cm_pair"))));
  // the lie algebra of a scheme definition is its tangent algebra
  EXPECT_EQ(def::lie_algebra(def::scheme_catalog_entry("sl", 2), 5), catalog::sl(Field::prime(5), 2));
}
