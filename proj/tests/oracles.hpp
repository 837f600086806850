// Brute-force reference computations shared by the test binaries.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using Vec = std::vector<i64>;

inline i64 md(i64 a, i64 n) { return ((a % n) + n) % n; }

/// Additive closure of `gens` in (Z/N)^n.
inline std::set<Vec> closure(const std::vector<Vec>& gens, std::size_t n, i64 N) {
  std::set<Vec> seen{Vec(n, 0)};
  std::vector<Vec> frontier{Vec(n, 0)};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) {
        Vec w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = md(v[i] + g[i], N);
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return seen;
}

/// Gaussian binomial via the q-Pascal recurrence.
inline i64 gaussian(int n, int k, i64 q) {
  if (k < 0 || k > n) return 0;
  if (k == 0 || k == n) return 1;
  i64 qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  return gaussian(n - 1, k - 1, q) + qk * gaussian(n - 1, k, q);
}

/// All vectors of (Z/N)^n in lexicographic order.
inline std::vector<Vec> cube(std::size_t n, i64 N) {
  std::vector<Vec> out{Vec{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (i64 x = 0; x < N; ++x) {
        Vec w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// Every subgroup of (Z/N)^2, each as its sorted element list.
inline std::vector<std::vector<Vec>> subgroups_rank2(i64 N) {
  std::vector<std::set<Vec>> cyc;
  std::vector<Vec> reps;
  for (const auto& v : cube(2, N)) {
    auto c = closure({v}, 2, N);
    if (std::find(cyc.begin(), cyc.end(), c) == cyc.end()) {
      cyc.push_back(std::move(c));
      reps.push_back(v);
    }
  }
  std::set<std::vector<Vec>> all;
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a; b < reps.size(); ++b) {
      auto h = closure({reps[a], reps[b]}, 2, N);
      all.insert(std::vector<Vec>(h.begin(), h.end()));
    }
  return {all.begin(), all.end()};
}

}  // namespace oracle

namespace oracle {

/// Every F_p-linear combination of the flattened basis matrices.
inline std::vector<Vec> span_elements(const std::vector<Vec>& basis, std::size_t len, i64 p) {
  std::vector<Vec> out{Vec(len, 0)};
  for (const auto& b : basis) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (i64 c = 0; c < p; ++c) {
        Vec w(len);
        for (std::size_t i = 0; i < len; ++i) w[i] = md(v[i] + c * b[i], p);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline int log_p(i64 x, i64 p) {
  int e = 0;
  while (x > 1) {
    x /= p;
    ++e;
  }
  return e;
}

/// Every nonzero subspace of F_p^n, as its sorted element list, found by spanning all pairs and triples of vectors.
inline std::vector<std::vector<Vec>> subspaces_by_span(std::size_t n, i64 p) {
  auto vecs = cube(n, p);
  std::set<std::vector<Vec>> all;
  for (std::size_t a = 1; a < vecs.size(); ++a)
    for (std::size_t b = a; b < vecs.size(); ++b)
      for (std::size_t c = b; c < vecs.size(); ++c) {
        if (n < 3 && c != b) continue;
        all.insert(span_elements({vecs[a], vecs[b], vecs[c]}, n, p));
      }
  return {all.begin(), all.end()};
}

/// Number of elements of the algebra killing every vector of W (element lists of both).
inline i64 stabilizer_count(const std::vector<Vec>& algebra, const std::vector<Vec>& W, std::size_t n, i64 p) {
  i64 count = 0;
  for (const auto& B : algebra) {
    bool kills = true;
    for (const auto& w : W) {
      for (std::size_t r = 0; r < n && kills; ++r) {
        i64 s = 0;
        for (std::size_t c = 0; c < n; ++c) s += B[r * n + c] * w[c];
        if (md(s, p) != 0) kills = false;
      }
      if (!kills) break;
    }
    if (kills) ++count;
  }
  return count;
}

}  // namespace oracle
