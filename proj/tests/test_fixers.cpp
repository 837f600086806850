#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "slopes/fixers.hpp"

using namespace slopes;

namespace {

const FixerContext& gl2_mod(int m) {
  static std::map<int, FixerContext> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, FixerContext::from_scheme(group_schemes::gl(2), 3, m)).first;
  return it->second;
}

const FixerContext& sl2_mod9() {
  static const FixerContext ctx = FixerContext::from_scheme(group_schemes::sl(2), 3, 2);
  return ctx;
}

SnfSubgroup subgroup(i64 ell, int m, std::size_t n, const std::vector<std::vector<i64>>& gens) { return snf_decompose(ResidueRing(ell, m), n, gens); }

/// Elements of GL_2(Z/N) with unit determinant, flattened.
std::vector<oracle::Vec> gl2_elements(i64 N, i64 ell) {
  std::vector<oracle::Vec> out;
  for (const auto& v : oracle::cube(4, N))
    if (oracle::md(v[0] * v[3] - v[1] * v[2], ell) != 0) out.push_back(v);
  return out;
}

i64 oracle_fixer_count(const std::vector<oracle::Vec>& group, const std::vector<oracle::Vec>& H, i64 N) {
  i64 count = 0;
  for (const auto& g : group) {
    bool ok = true;
    for (const auto& h : H)
      if (oracle::md(g[0] * h[0] + g[1] * h[1] - h[0], N) != 0 || oracle::md(g[2] * h[0] + g[3] * h[1] - h[1], N) != 0) {
        ok = false;
        break;
      }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST(FixIndex, GL2UnitVector) {
  const auto& ctx = gl2_mod(2);
  EXPECT_EQ(ctx.group.order(), 3888);
  EXPECT_EQ(ctx.delta(), 2);
  EXPECT_EQ(ctx.slope.alpha, Rational(2));
  auto r = fix_index(ctx, subgroup(3, 2, 2, {{1, 0}}));
  EXPECT_EQ(r.index, 72);
  EXPECT_EQ(r.fixer_order, 54);
  EXPECT_EQ(r.exponent_target, Rational(2));
  EXPECT_EQ(r.observed_ratio, (RootRatio{Rational(8, 9), 1}));
  EXPECT_EQ(r.observed_ratio.str(), "8/9");
}

TEST(FixIndex, TrivialSubgroup) {
  auto r = fix_index(gl2_mod(2), subgroup(3, 2, 2, {}));
  EXPECT_EQ(r.index, 1);
  EXPECT_EQ(r.observed_ratio, (RootRatio{Rational(1), 1}));
  EXPECT_EQ(r.gamma_ratio, (RootRatio{Rational(1), 1}));
}

TEST(FixIndex, SL2ScaledVector) {
  const auto& ctx = sl2_mod9();
  EXPECT_EQ(ctx.slope.alpha, Rational(3, 2));
  auto r = fix_index(ctx, subgroup(3, 2, 2, {{3, 0}}));
  EXPECT_EQ(r.index, 8);
  // 8 >= 3^{3/2}: the ratio squared is 64/27
  EXPECT_EQ(r.gamma_ratio, (RootRatio{Rational(64, 27), 2}));
  EXPECT_EQ(r.gamma_ratio.str(), "(64/27)^(1/2)");
  EXPECT_FALSE(r.gamma_ratio < (RootRatio{Rational(1), 1}));
}

TEST(FixIndex, RootRatioOrdering) {
  EXPECT_TRUE((RootRatio{Rational(2), 2}) < (RootRatio{Rational(3, 2), 1}));  // sqrt 2 < 3/2
  EXPECT_FALSE((RootRatio{Rational(9, 4), 2}) < (RootRatio{Rational(3, 2), 1}));
  EXPECT_FALSE((RootRatio{Rational(3, 2), 1}) < (RootRatio{Rational(9, 4), 2}));
}

TEST(Subgroups, AllRank2MatchesOracle) {
  for (i64 N : {3, 9, 27, 5, 25}) {
    i64 ell = N % 3 == 0 ? 3 : 5;
    int m = oracle::log_p(N, ell);
    auto ours = all_subgroups_rank2(ResidueRing(ell, m));
    std::set<std::vector<oracle::Vec>> mine;
    for (const auto& H : ours) mine.insert(H.elements());
    auto ref = oracle::subgroups_rank2(N);
    EXPECT_EQ(ours.size(), ref.size()) << N;
    EXPECT_EQ(mine, std::set<std::vector<oracle::Vec>>(ref.begin(), ref.end())) << N;
  }
  EXPECT_THROW(all_subgroups_rank2(ResidueRing(2, 5)), EnumerationTooLarge);
}

TEST(Subgroups, CyclicMatchesOracle) {
  for (auto [ell, m] : {std::pair<i64, int>{3, 2}, {3, 3}, {2, 3}, {5, 2}}) {
    const i64 N = checked::pow(ell, m);
    auto ours = cyclic_subgroups(ResidueRing(ell, m), 2);
    std::set<std::vector<oracle::Vec>> ref;
    for (const auto& v : oracle::cube(2, N)) {
      auto c = oracle::closure({v}, 2, N);
      ref.insert(std::vector<oracle::Vec>(c.begin(), c.end()));
    }
    std::set<std::vector<oracle::Vec>> mine;
    for (const auto& H : ours) {
      EXPECT_LE(H.rank(), 1u);
      mine.insert(H.elements());
    }
    EXPECT_EQ(ours.size(), ref.size());
    EXPECT_EQ(mine, ref);
  }
  ScanOptions tight;
  tight.cap = 100;
  EXPECT_THROW(cyclic_subgroups(ResidueRing(3, 3), 2, tight), EnumerationTooLarge);
}

TEST(FixSweep, GL2CyclicFloor) {
  auto sweep = fix_index_sweep(gl2_mod(2), SubgroupFamily::cyclic);
  bool found = false;
  for (const auto& r : sweep.reports)
    if (r.H.order() == 9 && r.H.generators() == std::vector<std::vector<i64>>{{1, 0}}) {
      EXPECT_EQ(r.index, 72);
      found = true;
    }
  EXPECT_TRUE(found);
  // cyclic of order 9 is always unimodular-generated; index 72 on every unit vector since GL2 is transitive
  ASSERT_TRUE(sweep.cyclic_floor.has_value());
  EXPECT_EQ(*sweep.cyclic_floor, (RootRatio{Rational(8, 9), 1}));
}

TEST(FixSweep, GL2AllSubgroupsAgainstOracle) {
  const auto& ctx = gl2_mod(2);
  auto sweep = fix_index_sweep(ctx, SubgroupFamily::all, {}, Rational(1, 100));
  const auto group = gl2_elements(9, 3);
  ASSERT_EQ(static_cast<i64>(group.size()), ctx.group.order());
  std::optional<Rational> floor;
  for (const auto& r : sweep.reports) {
    i64 fix = oracle_fixer_count(group, r.H.elements(), 9);
    EXPECT_EQ(r.fixer_order, fix);
    Rational ratio(static_cast<i64>(group.size()) / fix, r.H.order() * r.H.order());
    if (!floor || ratio < *floor) floor = ratio;
  }
  EXPECT_EQ(sweep.ratio_floor, (RootRatio{*floor, 1}));
  EXPECT_GT(sweep.ratio_floor.power, Rational(0));
  EXPECT_TRUE(sweep.meets_expectation);
  // the floor is the full group: index 3888 against |H|^2 = 6561
  EXPECT_EQ(sweep.ratio_floor.power, Rational(3888, 6561));
}

TEST(FixSweep, CatalogOverNineIsReproducible) {
  for (const auto& S : {group_schemes::gl(2), group_schemes::sl(2), group_schemes::split_torus(2), group_schemes::nonsplit_torus(1),
                        group_schemes::gsp(1)}) {
    auto ctx = FixerContext::from_scheme(S, 3, 2);
    ScanOptions one, many;
    one.workers = 1;
    many.workers = 4;
    auto a = fix_index_sweep(ctx, SubgroupFamily::all, {}, std::nullopt, one);
    auto b = fix_index_sweep(ctx, SubgroupFamily::all, {}, std::nullopt, many);
    EXPECT_EQ(a.ratio_floor, b.ratio_floor) << S.name;
    EXPECT_GT(a.ratio_floor.power, Rational(0)) << S.name;
    ASSERT_EQ(a.reports.size(), b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) EXPECT_EQ(a.reports[i].index, b.reports[i].index);
  }
}

TEST(FixSweep, AntitoneOnSubgroupLattice) {
  const auto& ctx = sl2_mod9();
  auto subs = all_subgroups_rank2(ResidueRing(3, 2));
  std::vector<std::vector<Element>> fixers;
  std::vector<std::set<oracle::Vec>> els;
  for (const auto& H : subs) {
    fixers.push_back(fixer(ctx.group, H).group.elements());
    auto e = H.elements();
    els.emplace_back(e.begin(), e.end());
  }
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < subs.size(); ++j)
      if (std::includes(els[j].begin(), els[j].end(), els[i].begin(), els[i].end())) {
        EXPECT_TRUE(std::includes(fixers[i].begin(), fixers[i].end(), fixers[j].begin(), fixers[j].end()));
      }
}

TEST(FixSweep, SuppliedAndGuards) {
  const auto& ctx = gl2_mod(2);
  auto sweep = fix_index_sweep(ctx, SubgroupFamily::supplied, {subgroup(3, 2, 2, {{1, 0}}), subgroup(3, 2, 2, {{3, 3}})});
  ASSERT_EQ(sweep.reports.size(), 2u);
  EXPECT_EQ(sweep.reports[1].index, 8);
  EXPECT_THROW(fix_index_sweep(ctx, SubgroupFamily::supplied, {subgroup(3, 3, 2, {{1, 0}})}), InputError);
  auto gsp4 = FixerContext::from_group("sp4-trivial", FiniteMatrixGroup(ResidueRing(3, 1), 4), catalog::sp(Field::prime(3), 2));
  EXPECT_THROW(fix_index_sweep(gsp4, SubgroupFamily::all), EnumerationTooLarge);
  auto high = fix_index_sweep(ctx, SubgroupFamily::cyclic, {}, Rational(1));
  EXPECT_FALSE(high.meets_expectation);
}

TEST(Devissage, TwoLayers) {
  const auto& ctx = gl2_mod(2);
  auto H = subgroup(3, 2, 2, {{1, 2}, {0, 3}});
  EXPECT_EQ(H.exponents, (std::vector<int>{2, 1}));
  auto t = devissage_bound(ctx, H);
  ASSERT_EQ(t.layers.size(), 2u);
  EXPECT_TRUE(t.dominates);
  EXPECT_GE(t.product, t.fixer_top);
  EXPECT_EQ(t.fixer_top, fixer(ctx.group, H).order());
  // layer 1: unimodular fixer in GL2 has dimension 2, its kernel from 9 to 3 is 3^2
  EXPECT_EQ(t.layers[0].kernel, 9);
  EXPECT_EQ(t.layers[0].d_j, 2u);
  EXPECT_EQ(t.layers[0].observed_constant, Rational(1));
  // layer 2: the pointwise fixer of everything is trivial
  EXPECT_EQ(t.layers[1].kernel, 1);
  EXPECT_EQ(t.index, ctx.group.order() / t.fixer_top);
}

TEST(Devissage, SingleLayerIsTheFixer) {
  for (const auto* ctx : {&gl2_mod(2), &sl2_mod9()})
    for (const auto& gens : std::vector<std::vector<std::vector<i64>>>{{{1, 0}}, {{0, 1}}, {{1, 1}}, {{2, 5}}}) {
      auto H = subgroup(3, 2, 2, gens);
      auto t = devissage_bound(*ctx, H);
      ASSERT_EQ(t.layers.size(), 1u);
      EXPECT_EQ(t.product, t.fixer_top);
      EXPECT_EQ(t.index, fix_index(*ctx, H).index);
    }
}

TEST(Devissage, FullSubgroupOfSL2) {
  const auto& ctx = sl2_mod9();
  auto H = subgroup(3, 2, 2, {{1, 0}, {0, 1}});
  auto t = devissage_bound(ctx, H);
  EXPECT_EQ(t.fixer_top, 1);
  EXPECT_EQ(t.index, ctx.group.order());
  EXPECT_EQ(t.index, 648);
  EXPECT_TRUE(t.dominates);
}

TEST(Devissage, EverySubgroupOfNine) {
  for (const auto* ctx : {&gl2_mod(2), &sl2_mod9()})
    for (const auto& H : all_subgroups_rank2(ResidueRing(3, 2))) {
      auto t = devissage_bound(*ctx, H);
      EXPECT_TRUE(t.dominates);
      for (const auto& L : t.layers)
        if (L.m_next > 0) {
          EXPECT_LE(L.kernel, L.bound) << "smooth layers sit under ell^{d_j(m_j - m_{j+1})}";
        }
    }
}

TEST(Devissage, NeedsScheme) {
  auto ctx = FixerContext::from_group("gl2", gl2_mod(2).group, catalog::gl(Field::prime(3), 2));
  EXPECT_THROW(devissage_bound(ctx, subgroup(3, 2, 2, {{1, 0}})), InputError);
}

TEST(Saturation, GL2ReproducesDelta) {
  const auto& ctx = gl2_mod(3);
  EXPECT_EQ(ctx.group.order(), 314928);
  auto rep = exponent_saturation(ctx);
  EXPECT_EQ(rep.w, (std::vector<i64>{1, 0}));
  EXPECT_EQ(rep.indices, (std::vector<i64>{8, 72, 648}));
  EXPECT_EQ(rep.increments, (std::vector<int>{2, 2}));
  EXPECT_EQ(rep.delta, 2);
  EXPECT_TRUE(rep.saturated);
}

TEST(Saturation, OrbitFormAgrees) {
  const auto gens = std::vector<IntMatrix>{IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}, IntMatrix{{2, 0}, {0, 1}}};
  auto rep = exponent_saturation("gl2", catalog::gl(Field::prime(3), 2), 3, [&](int) { return gens; });
  EXPECT_EQ(rep.indices, exponent_saturation(gl2_mod(3)).indices);
  EXPECT_TRUE(rep.saturated);
}

TEST(Saturation, SmoothCatalogAtThree) {
  for (const auto& S : {group_schemes::sl(2), group_schemes::split_torus(2), group_schemes::nonsplit_torus(1), group_schemes::gsp(1)}) {
    auto ctx = FixerContext::from_scheme(S, 3, 3);
    auto rep = exponent_saturation(ctx);
    EXPECT_TRUE(rep.saturated) << S.name;
    EXPECT_EQ(rep.delta, ctx.delta());
  }
  EXPECT_EQ(exponent_saturation(FixerContext::from_scheme(group_schemes::split_torus(2), 3, 3)).delta, 1);
  EXPECT_EQ(exponent_saturation(FixerContext::from_scheme(group_schemes::nonsplit_torus(1), 3, 3)).delta, 2);
}
