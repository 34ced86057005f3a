#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "hyperencap/linegraph.hpp"

namespace hyperencap {

/// Kahn order; throws MalformedGraphError if the graph has a cycle.
inline std::vector<EdgeId> topological_order(const LineDigraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& a : g.out_adj)
    for (EdgeId w : a) ++indeg[w];
  std::vector<EdgeId> order;
  order.reserve(n);
  for (EdgeId v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (EdgeId w : g.out_adj[order[i]])
      if (--indeg[w] == 0) order.push_back(w);
  if (order.size() != n) throw MalformedGraphError("graph contains a cycle");
  return order;
}

struct ReducedDag {
  LineDigraph reduced;
  std::vector<std::size_t> dag_degree;  // out-degree before reduction
  std::vector<EdgeId> roots;            // in-degree 0, out-degree > 0
  std::vector<std::uint32_t> heights;   // longest path (edges) from each vertex
  bool has_singletons = false;          // any size-1 vertex in the input
};

// Per source u, children are visited in topological order and each kept child
// marks everything below it, so a child already marked has a longer path from
// u and its direct edge is dropped. O(V * E) in the worst case.
inline ReducedDag transitive_reduction(const LineDigraph& dag) {
  const std::size_t n = dag.num_vertices();
  const auto order = topological_order(dag);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

  ReducedDag r;
  r.reduced.sizes = dag.sizes;
  r.reduced.out_adj.assign(n, {});
  r.dag_degree.resize(n);
  r.has_singletons = std::find(dag.sizes.begin(), dag.sizes.end(), 1u) != dag.sizes.end();

  std::vector<std::size_t> mark(n, SIZE_MAX);
  std::vector<EdgeId> children, stack;
  for (EdgeId u = 0; u < n; ++u) {
    r.dag_degree[u] = dag.out_adj[u].size();
    children = dag.out_adj[u];
    std::sort(children.begin(), children.end(),
              [&](EdgeId a, EdgeId b) { return pos[a] < pos[b]; });
    for (EdgeId v : children) {
      if (mark[v] == u) continue;
      r.reduced.out_adj[u].push_back(v);
      stack.assign(1, v);
      mark[v] = u;
      while (!stack.empty()) {
        EdgeId x = stack.back();
        stack.pop_back();
        for (EdgeId y : dag.out_adj[x])
          if (mark[y] != u) {
            mark[y] = u;
            stack.push_back(y);
          }
      }
    }
    std::sort(r.reduced.out_adj[u].begin(), r.reduced.out_adj[u].end());
  }
  r.reduced.rebuild_in_adj();

  r.heights.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (EdgeId w : r.reduced.out_adj[*it]) r.heights[*it] = std::max(r.heights[*it], r.heights[w] + 1);

  for (EdgeId u = 0; u < n; ++u)
    if (dag.in_degree(u) == 0 && dag.out_degree(u) > 0) r.roots.push_back(u);
  return r;
}

struct RootRecord {
  EdgeId root = 0;
  std::uint32_t size = 0;
  std::size_t dag_degree = 0;
  std::uint32_t max_height = 0;
  double norm_degree = 0.0;  // dag_degree / largest possible out-degree for this size
  double norm_height = 0.0;  // max_height / (size - 1)
};

struct HeightReport {
  std::vector<RootRecord> roots;
  std::map<std::uint32_t, std::size_t> distribution;  // height -> number of roots
  std::uint32_t max_height = 0;
};

/// Largest out-degree a size-k hyperedge can have: every proper non-empty
/// subset, or every subset of size >= 2 when the data has no singletons.
inline double max_dag_degree(std::uint32_t k, bool singletons) {
  if (k == 0) return 0.0;
  const double all = std::ldexp(1.0, static_cast<int>(k)) - 2.0;
  return singletons ? all : all - k;
}

inline HeightReport rooted_heights(const ReducedDag& r) {
  HeightReport rep;
  for (EdgeId u : r.roots) {
    RootRecord rec;
    rec.root = u;
    rec.size = u < r.reduced.sizes.size() ? r.reduced.sizes[u] : 0;
    rec.dag_degree = r.dag_degree[u];
    rec.max_height = r.heights[u];
    const double dmax = max_dag_degree(rec.size, r.has_singletons);
    rec.norm_degree = dmax > 0 ? rec.dag_degree / dmax : 0.0;
    rec.norm_height = rec.size > 1 ? double(rec.max_height) / (rec.size - 1) : 0.0;
    ++rep.distribution[rec.max_height];
    rep.max_height = std::max(rep.max_height, rec.max_height);
    rep.roots.push_back(rec);
  }
  return rep;
}

}  // namespace hyperencap
