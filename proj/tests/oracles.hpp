#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library paths they check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using Edge = std::vector<int>;  // sorted node labels

inline bool strict_subset(const Edge& small, const Edge& big) {
  if (small.size() >= big.size()) return false;
  for (int x : small)
    if (std::find(big.begin(), big.end(), x) == big.end()) return false;
  return true;
}

inline int intersection_size(const Edge& a, const Edge& b) {
  int c = 0;
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) ++c;
  return c;
}

/// All ordered pairs (i, j) with edges[j] a strict subset of edges[i].
inline std::set<std::pair<int, int>> encapsulation_pairs(const std::vector<Edge>& edges) {
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    for (int j = 0; j < static_cast<int>(edges.size()); ++j)
      if (i != j && strict_subset(edges[j], edges[i])) out.insert({i, j});
  return out;
}

/// (i, j, |e_i ∩ e_j|) for i < j with a non-empty intersection.
inline std::set<std::tuple<int, int, int>> overlap_triples(const std::vector<Edge>& edges) {
  std::set<std::tuple<int, int, int>> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(edges.size()); ++j)
      if (int w = intersection_size(edges[i], edges[j]); w > 0) out.insert({i, j, w});
  return out;
}

/// Transitive closure by Floyd-Warshall on a dense boolean matrix.
inline std::vector<std::vector<char>> reachability(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t u = 0; u < n; ++u)
    for (auto v : adj[u]) r[u][v] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

/// Longest path (in edges) from u, by exhaustive DFS.
inline int longest_path_from(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t u) {
  int best = 0;
  for (auto v : adj[u]) best = std::max(best, 1 + longest_path_from(adj, v));
  return best;
}

/// Random simple hypergraph: up to `max_edges` distinct node sets over
/// labels 1..n with sizes in [1, max_size].
inline std::vector<Edge> random_edges(std::mt19937& rng, int n, int max_edges, int max_size) {
  std::uniform_int_distribution<int> count(1, max_edges);
  std::uniform_int_distribution<int> size(1, std::min(n, max_size));
  std::set<Edge> seen;
  std::vector<Edge> out;
  const int target = count(rng);
  for (int tries = 0; tries < 10 * target && static_cast<int>(out.size()) < target; ++tries) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    Edge e(pool.begin(), pool.begin() + size(rng));
    std::sort(e.begin(), e.end());
    if (seen.insert(e).second) out.push_back(e);
  }
  return out;
}

}  // namespace oracle
