#pragma once

// Brute-force oracles shared by the unit and acceptance tests. None of these
// reuse the library's elimination, enumeration or girth code paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "maghom/graph.hpp"
#include "maghom/homology.hpp"
#include "maghom/integer.hpp"
#include "maghom/random.hpp"

namespace maghom::testing {

inline Graph er_graph(std::size_t n, double p, std::uint64_t seed, std::uint64_t trial = 0) {
  auto rng = trial_rng(seed, trial);
  return sample_er(n, p, rng);
}

/// Random recursive tree (each vertex attaches to a uniform earlier one), randomly relabelled.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  auto rng = trial_rng(seed, 0xabc);
  std::vector<VertexId> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[static_cast<std::size_t>(uniform01(rng) * i)]);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    auto parent = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(v));
    edges.push_back(Edge::make(label[v], label[parent]));
  }
  return Graph(n, edges);
}

/// Plain Floyd-Warshall hop distances; UINT32_MAX for unreachable.
inline std::vector<std::vector<std::uint32_t>> floyd(const Graph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::uint32_t inf = UINT32_MAX;
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Every simple cycle once, rooted at its smallest vertex, by DFS over simple
/// paths. Fine for <= 8 vertices.
struct BruteCycle {
  std::vector<VertexId> path;  ///< root first
};

inline std::vector<BruteCycle> all_cycles(const Graph& g) {
  std::vector<BruteCycle> out;
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<VertexId> path;
  std::vector<bool> used(n, false);
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    for (VertexId w : g.neighbors(v)) {
      if (w == path[0] && path.size() >= 3 && path[1] < path.back()) out.push_back({path});
      if (w > path[0] && !used[w]) {
        used[w] = true;
        path.push_back(w);
        dfs(w);
        path.pop_back();
        used[w] = false;
      }
    }
  };
  for (VertexId r = 0; r < n; ++r) {
    path.assign(1, r);
    used.assign(n, false);
    used[r] = true;
    dfs(r);
  }
  return out;
}

inline bool cycle_has_edge(const BruteCycle& c, Edge e) {
  for (std::size_t i = 0; i < c.path.size(); ++i) {
    if (Edge::make(c.path[i], c.path[(i + 1) % c.path.size()]) == e) return true;
  }
  return false;
}

inline Extended brute_girth_edge(const Graph& g, Edge e) {
  Extended best = kInfinity;
  for (const auto& c : all_cycles(g))
    if (cycle_has_edge(c, e)) best = std::min(best, Extended(c.path.size()));
  return best;
}

/// Determinant by fraction-free Bareiss elimination on a dense square matrix.
inline Integer det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return Integer(1);
  Integer prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k].is_zero()) ++p;
    if (p == n) return Integer(0);
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divexact(prev);
      a[i][k] = Integer(0);
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

/// Rank over Q by dense Gaussian elimination with exact rational-free updates.
inline std::size_t dense_rank(std::vector<std::vector<Integer>> a) {
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      Integer f = a[i][c], piv = a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] * piv - a[r][j] * f;
      Integer g(0);
      for (std::size_t j = c; j < cols; ++j) g = gcd(g, a[i][j]);
      if (!g.is_zero() && !g.is_unit())
        for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j].divexact(g);
    }
    ++r;
  }
  return r;
}

/// gcd of all j x j minors, j = 1..min(rows, cols). Entry j-1 is zero when all vanish.
inline std::vector<Integer> minor_gcds(const std::vector<std::vector<Integer>>& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> out;
  for (std::size_t j = 1; j <= std::min(rows, cols); ++j) {
    Integer g(0);
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.end() - static_cast<std::ptrdiff_t>(j), rsel.end(), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - static_cast<std::ptrdiff_t>(j), csel.end(), true);
      do {
        std::vector<std::vector<Integer>> m;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!rsel[r]) continue;
          std::vector<Integer> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (csel[c]) row.push_back(a[r][c]);
          m.push_back(row);
        }
        g = gcd(g, det(m));
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
    out.push_back(g);
  }
  return out;
}

/// Every tuple of degree k and length l by exhaustive product over vertices.
inline std::set<std::vector<VertexId>> brute_tuples(const Graph& g, unsigned k, unsigned l,
                                                    std::optional<VertexId> start = std::nullopt,
                                                    std::optional<VertexId> end = std::nullopt) {
  const auto d = floyd(g);
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::set<std::vector<VertexId>> out;
  std::vector<VertexId> t(k + 1, 0);
  std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned i, std::uint64_t len) {
    if (len > l) return;
    if (i == k + 1) {
      if (len == l && (!end || t.back() == *end)) out.insert(t);
      return;
    }
    for (VertexId v = 0; v < n; ++v) {
      if (i == 0 && start && v != *start) continue;
      if (i > 0 && (v == t[i - 1] || d[t[i - 1]][v] == UINT32_MAX)) continue;
      t[i] = v;
      rec(i + 1, len + (i > 0 ? d[t[i - 1]][v] : 0));
    }
  };
  rec(0, 0);
  return out;
}

/// Connected graphs on n vertices up to isomorphism, by vertex augmentation and
/// canonical labelling over all permutations. n <= 7.
inline std::vector<Graph> connected_graphs_up_to_iso(std::size_t n) {
  auto canon = [](std::size_t m, const std::vector<std::uint32_t>& adj) {
    std::vector<std::uint32_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = UINT64_MAX;
    do {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) code = (code << 1) | ((adj[perm[i]] >> perm[j]) & 1u);
      best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };
  // level[m] holds adjacency bitmasks of all graphs on m vertices up to iso.
  std::vector<std::vector<std::uint32_t>> level{{0}};
  for (std::size_t m = 1; m < n; ++m) {
    std::map<std::uint64_t, std::vector<std::uint32_t>> next;
    for (const auto& adj : level) {
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::uint32_t> a = adj;
        a.push_back(mask);
        for (std::size_t v = 0; v < m; ++v)
          if (mask >> v & 1u) a[v] |= 1u << m;
        next.emplace(canon(m + 1, a), std::move(a));
      }
    }
    level.clear();
    for (auto& [code, a] : next) level.push_back(std::move(a));
  }
  std::vector<Graph> out;
  for (const auto& adj : level) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (adj[i] >> j & 1u) edges.push_back(Edge{static_cast<VertexId>(i), static_cast<VertexId>(j)});
    Graph g(n, edges);
    if (components(g).count() == 1) out.push_back(std::move(g));
  }
  return out;
}

/// Brute-force options: no Morse, no tree closed form, serial.
inline HomologyOptions brute_options(bool torsion = true) {
  HomologyOptions o;
  o.morse = MorseMode::Off;
  o.shortcut_trees = false;
  o.torsion = torsion;
  o.workers = 1;
  return o;
}

}  // namespace maghom::testing
