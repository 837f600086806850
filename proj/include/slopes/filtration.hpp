#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slopes/errors.hpp"
#include "slopes/group_schemes.hpp"
#include "slopes/groups.hpp"
#include "slopes/slope.hpp"
#include "slopes/subspace.hpp"

namespace slopes {

/// Congruence filtration of a finite H in GL_n(Z/ell^m).
struct FiltrationReport {
  i64 ell = 0;
  int depth = 0;                  ///< m
  std::size_t n = 0;
  std::vector<i64> level_orders;  ///< |H(ell^i)| for i = 1..m, stored at i - 1
  std::vector<Subspace> graded;   ///< h_i in M_n(F_ell) flattened, for i = 1..m-1, stored at i - 1
  bool nested = true;             ///< h_i within h_{i+1} from the first admissible level on

  std::size_t graded_dim(int i) const { return graded.at(static_cast<std::size_t>(i - 1)).dim(); }
  i64 level_order(int i) const { return level_orders.at(static_cast<std::size_t>(i - 1)); }
};

/// First level at which h_i is guaranteed to behave: 1 for odd ell, 2 for ell = 2.
inline int first_admissible_level(i64 ell) { return ell == 2 ? 2 : 1; }

inline FiltrationReport filtration(const FiniteMatrixGroup& H) {
  const i64 ell = H.ring().ell();
  const int m = H.ring().exponent();
  if (m < 2) throw InputError("nothing to filter at modulus exponent 1");
  const std::size_t n = H.n(), nn = n * n;
  const Field f = Field::prime(ell);
  FiltrationReport rep;
  rep.ell = ell;
  rep.depth = m;
  rep.n = n;
  for (int i = 1; i < m; ++i) rep.level_orders.push_back(H.reduce(i).order());
  rep.level_orders.push_back(H.order());
  for (int i = 1; i < m; ++i) {
    const i64 step = checked::pow(ell, i);
    std::set<std::vector<i64>> pieces;
    for (const auto& X : H.elements()) {
      bool in_kernel = true;
      std::vector<i64> B(nn);
      for (std::size_t k = 0; k < nn && in_kernel; ++k) {
        i64 d = X[k] - (k % (n + 1) == 0 ? 1 : 0);
        if (mod(d, step) != 0) in_kernel = false;
        B[k] = mod(d / step, ell);
      }
      if (in_kernel) pieces.insert(B);
    }
    Subspace h = Subspace::span(f, nn, {pieces.begin(), pieces.end()});
    if (checked::pow(ell, static_cast<int>(h.dim())) != static_cast<i64>(pieces.size()))
      throw VerificationFailure("graded piece h_" + std::to_string(i) + " is not a subspace");
    rep.graded.push_back(std::move(h));
  }
  // |H(ell^i)| = |H(ell)| ell^{sum_{j<i} dim h_j}, re-derived from the orders
  i64 expected = rep.level_orders[0];
  for (int i = 2; i <= m; ++i) {
    expected = checked::mul(expected, checked::pow(ell, static_cast<int>(rep.graded_dim(i - 1))));
    if (expected != rep.level_order(i)) throw VerificationFailure("filtration counting identity fails at level " + std::to_string(i));
  }
  for (int i = first_admissible_level(ell); i + 1 < m; ++i)
    if (!rep.graded[static_cast<std::size_t>(i)].contains(rep.graded[static_cast<std::size_t>(i - 1)])) rep.nested = false;
  return rep;
}

/// g_ell of a scheme-backed group: the graded pieces of its identity fiber against the saturated Jacobian tangent.
struct ModEllLieReport {
  LieAlgebraRep g_ell;              ///< from the Jacobian at the identity, saturated over Z
  LieAlgebraRep h_first;            ///< h_i at the first admissible level
  std::vector<Subspace> graded;     ///< h_i for admissible i < depth, stored from the first admissible level
  int first_level = 1;
  bool agrees = false;
  std::string divergence;           ///< empty when the two computations agree
};

inline ModEllLieReport mod_ell_lie_algebra(const GroupScheme& G, i64 ell, int depth = 3, const ScanOptions& opt = {}) {
  const int first = first_admissible_level(ell);
  if (depth <= first) throw InputError("probe depth must exceed the first admissible level");
  const Field f = Field::prime(ell);
  const std::size_t nn = G.n * G.n;
  std::vector<Subspace> graded;
  for (int i = first; i < depth; ++i) {
    auto lt = liftable_tangent(G, ell, i, depth, opt);
    graded.push_back(lt.graded.rows() == 0 ? Subspace(f, nn) : Subspace::span(f, lt.graded));
  }
  std::vector<IntMatrix> mats;
  for (std::size_t r = 0; r < graded[0].dim(); ++r) {
    auto row = graded[0].basis().row(r);
    mats.emplace_back(G.n, G.n, std::vector<i64>(row.begin(), row.end()));
  }
  ModEllLieReport rep{saturated_tangent(G, ell), LieAlgebraRep::span(f, G.n, mats, false), std::move(graded), first, false, ""};
  rep.agrees = rep.g_ell == rep.h_first;
  if (!rep.agrees)
    rep.divergence = "h_" + std::to_string(first) + " has dimension " + std::to_string(rep.h_first.dim()) + " but the saturated tangent has dimension " +
                     std::to_string(rep.g_ell.dim()) + (rep.g_ell.dim() == rep.h_first.dim() ? " with a different span" : "");
  return rep;
}

}  // namespace slopes
