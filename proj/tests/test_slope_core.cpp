#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "slopes/catalog.hpp"
#include "slopes/slope.hpp"

using namespace slopes;
namespace cat = slopes::catalog;

namespace {

Subspace span_of(const Field& f, std::size_t n, std::vector<std::vector<i64>> vs) { return Subspace::span(f, n, vs); }

std::vector<oracle::Vec> elements_of(const LieAlgebraRep& g) {
  std::vector<oracle::Vec> basis;
  for (std::size_t j = 0; j < g.dim(); ++j) basis.emplace_back(g.flat().row(j).begin(), g.flat().row(j).end());
  return oracle::span_elements(basis, g.n() * g.n(), g.field().size());
}

/// alpha by element enumeration: independent of the RREF scan.
Rational brute_alpha(const LieAlgebraRep& g) {
  const i64 p = g.field().size();
  auto elems = elements_of(g);
  std::optional<Rational> best;
  for (const auto& W : oracle::subspaces_by_span(g.n(), p)) {
    int dimW = oracle::log_p(static_cast<i64>(W.size()), p);
    int dimStab = oracle::log_p(oracle::stabilizer_count(elems, W, g.n(), p), p);
    Rational v(static_cast<i64>(g.dim()) - dimStab, dimW);
    if (!best || v < *best) best = v;
  }
  return *best;
}

std::vector<LieAlgebraRep> small_catalog(const Field& f) {
  return {cat::gl(f, 2),          cat::sl(f, 2),           cat::gl(f, 3),   cat::sl(f, 3),          cat::split_torus(f, 2),
          cat::split_torus(f, 3), cat::nonsplit_torus(f), cat::mu_p_lie(f), cat::gl2_plus_scalar(f), cat::gl(f, 1)};
}

}  // namespace

TEST(LieAlgebraRep, RejectsDependentAndNonClosed) {
  Field f = Field::prime(3);
  EXPECT_THROW(LieAlgebraRep(f, 2, {IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 2}}}), InputError);
  EXPECT_THROW(LieAlgebraRep(f, 2, {cat::unit_matrix(2, 0, 1), cat::unit_matrix(2, 1, 0)}), InputError);
  EXPECT_NO_THROW(LieAlgebraRep(f, 2, {cat::unit_matrix(2, 0, 1)}));
}

TEST(LieAlgebraRep, CatalogDimensions) {
  Field f = Field::prime(3);
  EXPECT_EQ(cat::gl(f, 2).dim(), 4u);
  EXPECT_EQ(cat::sl(f, 3).dim(), 8u);
  EXPECT_EQ(cat::sp(f, 2).dim(), 10u);
  EXPECT_EQ(cat::gsp(f, 2).dim(), 11u);
  EXPECT_EQ(cat::gsp(Field::prime(5), 3).dim(), 22u);
  EXPECT_EQ(cat::cm_pair(f).dim(), 3u);
  EXPECT_EQ(cat::gl2_times_cm(f).dim(), 5u);
  EXPECT_EQ(cat::cm_surface(f).dim(), 3u);
}

TEST(Stabilizer, Gl2Line) {
  Field f = Field::prime(3);
  auto g = cat::gl(f, 2);
  auto W = span_of(f, 2, {{1, 0}});
  EXPECT_EQ(stabilizer_dim(g, W), 2u);
  EXPECT_EQ(oracle::stabilizer_count(elements_of(g), {{0, 0}, {1, 0}, {2, 0}}, 2, 3), 9);
  EXPECT_EQ(stabilizer_subalgebra(g, W).dim(), 2u);
}

TEST(Stabilizer, ZeroSubspaceGivesWholeAlgebra) {
  Field f = Field::prime(5);
  auto g = cat::gl2_plus_scalar(f);
  EXPECT_EQ(stabilizer_subalgebra(g, Subspace(f, 3)), g);
  EXPECT_EQ(slope_at(g, Subspace(f, 3)), Rational(0));
}

TEST(Stabilizer, MuPLineIsKilledByEverything) {
  for (i64 p : {3, 5, 7}) {
    Field f = Field::prime(p);
    auto g = cat::mu_p_lie(f);
    auto W = span_of(f, 2, {{1, 0}});
    EXPECT_EQ(stabilizer_subalgebra(g, W), g);
    EXPECT_EQ(slope_at(g, W), Rational(0));
  }
}

TEST(SlopeAt, Gl2IsConstant) {
  Field f = Field::prime(3);
  auto g = cat::gl(f, 2);
  for (int d = 1; d <= 2; ++d)
    for (const auto& W : all_subspaces(f, 2, d)) EXPECT_EQ(slope_at(g, W), Rational(2));
}

TEST(SlopeAt, SplitTorus) {
  Field f = Field::prime(3);
  auto g = cat::split_torus(f, 2);
  EXPECT_EQ(slope_at(g, span_of(f, 2, {{1, 1}})), Rational(2));
  EXPECT_EQ(slope_at(g, span_of(f, 2, {{1, 0}})), Rational(1));
}

TEST(Alpha, Gl2) {
  auto rep = alpha(cat::gl(Field::prime(3), 2));
  EXPECT_EQ(rep.alpha, Rational(2));
  EXPECT_EQ(rep.gamma.str(), "1/2");
  EXPECT_EQ(rep.subspaces_scanned, 5);
  EXPECT_EQ(rep.maximal_U.dim(), 2u);
  EXPECT_EQ(rep.witness, span_of(Field::prime(3), 2, {{0, 1}}));  // least RREF row (0,1)
}

TEST(Alpha, Gsp4OverF3) {
  Field f = Field::prime(3);
  auto rep = alpha(cat::gsp(f, 2));
  EXPECT_EQ(rep.gamma.str(), "4/11");
  EXPECT_EQ(rep.subspaces_scanned, 211);
  EXPECT_EQ(rep.maximal_U.dim(), 4u);
}

TEST(Alpha, BlockWithScalar) {
  Field f = Field::prime(3);
  auto rep = alpha(cat::gl2_plus_scalar(f));
  EXPECT_EQ(rep.alpha, Rational(1));
  EXPECT_EQ(rep.maximal_U, span_of(f, 3, {{0, 0, 1}}));
  EXPECT_EQ(rep.witness, rep.maximal_U);
}

TEST(Alpha, MatchesElementEnumerationOracle) {
  for (i64 p : {2, 3}) {
    Field f = Field::prime(p);
    for (const auto& g : small_catalog(f)) {
      auto rep = alpha(g);
      EXPECT_EQ(rep.alpha, brute_alpha(g)) << "n=" << g.n() << " dim=" << g.dim() << " p=" << p;
      EXPECT_EQ(Rational(static_cast<i64>(g.dim() - stabilizer_dim(g, rep.witness)), static_cast<i64>(rep.witness.dim())), rep.alpha);
      EXPECT_EQ(slope_at(g, rep.maximal_U), rep.alpha);
    }
  }
}

TEST(Alpha, DegenerateSlopeHasInfiniteGamma) {
  auto rep = alpha(cat::mu_p_lie(Field::prime(3)));
  EXPECT_EQ(rep.alpha, Rational(0));
  EXPECT_TRUE(rep.gamma.is_infinite());
}

TEST(Alpha, GuardThrows) {
  ScanOptions opt;
  opt.cap = 100;
  EXPECT_THROW(alpha(cat::gsp(Field::prime(3), 2), opt), EnumerationTooLarge);
}

TEST(PartialSlopes, Tables) {
  EXPECT_EQ(partial_slopes(cat::gl(Field::prime(3), 2)), (std::vector<std::size_t>{4, 2, 0}));
  EXPECT_EQ(partial_slopes(cat::nonsplit_torus(Field::prime(3)))[1], 0u);
  EXPECT_EQ(partial_slopes(cat::split_torus(Field::prime(5), 2))[1], 1u);
  // the J^2 = -1 torus splits at 5
  EXPECT_EQ(partial_slopes(cat::nonsplit_torus(Field::prime(5)))[1], 1u);
}

TEST(PartialSlopes, MonotoneAndBoundedBySlope) {
  for (i64 p : {3, 5}) {
    Field f = Field::prime(p);
    for (const auto& g : small_catalog(f)) {
      auto rep = alpha(g);
      for (std::size_t r = 1; r <= g.n(); ++r) {
        EXPECT_LE(rep.d[r], rep.d[r - 1]);
        EXPECT_GE(Rational(static_cast<i64>(g.dim() - rep.d[r])), Rational(static_cast<i64>(r)) * rep.alpha);
      }
      if (!rep.gamma.is_infinite()) {
        EXPECT_LE(rep.gamma.value(), Rational(static_cast<i64>(g.n())));
      }
    }
  }
}

TEST(SlopeAxioms, SubmodularityAndUniqueMaximalSubspace) {
  Field f = Field::prime(3);
  for (const auto& g : small_catalog(f)) {
    auto rep = verify_slope_axioms(g);
    EXPECT_TRUE(rep.ok()) << rep.first_violation;
    EXPECT_EQ(rep.pairs_checked, rep.subspaces * rep.subspaces);
    EXPECT_GT(rep.minimizer_pairs, 0);
  }
}

TEST(SlopeAxioms, ConjugationInvariance) {
  std::mt19937_64 rng(3);
  for (i64 p : {3, 5}) {
    Field f = Field::prime(p);
    ResidueRing R(p, 1);
    std::uniform_int_distribution<i64> entry(0, p - 1);
    for (const auto& g : small_catalog(f)) {
      const std::size_t n = g.n();
      IntMatrix P(n, n, 0);
      do {
        for (auto& x : P.data()) x = entry(rng);
      } while (rank(P, f) < n);
      IntMatrix Pinv = inverse_mod(P, R);
      auto h = g.conjugate(P, Pinv);
      auto a = alpha(g), b = alpha(h);
      EXPECT_EQ(a.alpha, b.alpha);
      EXPECT_EQ(a.d, b.d);
      // U transports: P U is the maximal minimizer of P g P^{-1}
      IntMatrix PU = multiply(a.maximal_U.basis(), P.transposed(), f);
      EXPECT_EQ(Subspace::span(f, PU), b.maximal_U);
    }
  }
}

TEST(Isotypic, BlockWithScalar) {
  Field f = Field::prime(3);
  auto rep = alpha_via_isotypic(cat::gl2_plus_scalar(f), {span_of(f, 3, {{1, 0, 0}, {0, 1, 0}}), span_of(f, 3, {{0, 0, 1}})});
  EXPECT_EQ(rep.alpha_isotypic, Rational(1));
  EXPECT_EQ(rep.witness_I, (std::vector<std::size_t>{2}));
  EXPECT_TRUE(rep.agrees);
  EXPECT_FALSE(rep.degenerate);
}

TEST(Isotypic, SingleComponent) {
  Field f = Field::prime(3);
  auto rep = alpha_via_isotypic(cat::gl(f, 2), {Subspace::full(f, 2)});
  EXPECT_EQ(rep.alpha_isotypic, Rational(2));
  EXPECT_TRUE(rep.agrees);
}

TEST(Isotypic, MuPIsDegenerate) {
  Field f = Field::prime(3);
  auto rep = alpha_via_isotypic(cat::mu_p_lie(f), {span_of(f, 2, {{1, 0}}), span_of(f, 2, {{0, 1}})});
  EXPECT_EQ(rep.alpha_isotypic, Rational(0));
  EXPECT_EQ(rep.witness_I, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(rep.degenerate);
  EXPECT_TRUE(rep.gamma.is_infinite());
}

TEST(Isotypic, RejectsBadDecompositions) {
  Field f = Field::prime(3);
  auto g = cat::gl2_plus_scalar(f);
  EXPECT_THROW(alpha_via_isotypic(g, {span_of(f, 3, {{1, 0, 0}}), span_of(f, 3, {{0, 1, 0}, {0, 0, 1}})}), InputError);
  EXPECT_THROW(alpha_via_isotypic(g, {span_of(f, 3, {{0, 0, 1}})}), InputError);
}

TEST(BaseChange, AlphaAndUStable) {
  Field f = Field::prime(3);
  for (const auto& g : {cat::gl(f, 2), cat::split_torus(f, 2), cat::nonsplit_torus(f), cat::gl2_plus_scalar(f), cat::mu_p_lie(f),
                        cat::cm_surface(f), cat::cm_pair(f)}) {
    auto rep = base_change_check(g);
    EXPECT_TRUE(rep.ok()) << rep.alpha_base << " vs " << rep.alpha_extended;
  }
}

TEST(Parallel, WorkerCountDoesNotChangeReport) {
  Field f = Field::prime(3);
  ScanOptions one, many;
  one.workers = 1;
  many.workers = 4;
  auto a = alpha(cat::gsp(f, 2), one), b = alpha(cat::gsp(f, 2), many);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.maximal_U, b.maximal_U);
  EXPECT_EQ(a.d, b.d);
  EXPECT_EQ(a.minimizer_count, b.minimizer_count);
}
