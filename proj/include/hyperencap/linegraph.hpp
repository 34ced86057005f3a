#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "hyperencap/hypergraph.hpp"

namespace hyperencap {

// Directed line graph over hyperedge ids. Adjacency lists are sorted.
struct LineDigraph {
  std::vector<std::vector<EdgeId>> out_adj;
  std::vector<std::vector<EdgeId>> in_adj;
  std::vector<std::uint32_t> sizes;  // hyperedge size per vertex

  std::size_t num_vertices() const noexcept { return out_adj.size(); }
  std::size_t num_edges() const noexcept {
    std::size_t r = 0;
    for (const auto& a : out_adj) r += a.size();
    return r;
  }
  std::size_t out_degree(EdgeId v) const noexcept { return out_adj[v].size(); }
  std::size_t in_degree(EdgeId v) const noexcept { return in_adj[v].size(); }
  bool has_edge(EdgeId from, EdgeId to) const {
    const auto& a = out_adj[from];
    return std::binary_search(a.begin(), a.end(), to);
  }

  /// Recomputes in_adj as the transpose of out_adj.
  void rebuild_in_adj() {
    in_adj.assign(out_adj.size(), {});
    for (EdgeId v = 0; v < out_adj.size(); ++v)
      for (EdgeId w : out_adj[v]) in_adj[w].push_back(v);
  }

  bool is_transpose_consistent() const {
    std::vector<std::vector<EdgeId>> t(out_adj.size());
    for (EdgeId v = 0; v < out_adj.size(); ++v)
      for (EdgeId w : out_adj[v]) t[w].push_back(v);
    return t == in_adj;
  }

  friend bool operator==(const LineDigraph&, const LineDigraph&) = default;
};

/// Edge a -> b iff hyperedge b is a strict subset of hyperedge a.
struct EncapsulationDag : LineDigraph {
  /// (node, hyperedge) memberships inspected while building; bounded by
  /// m * l_max * k_max.
  std::uint64_t candidate_visits = 0;
};

/// Edge a -> b iff a and b intersect and a is strictly larger than b.
struct OverlapDag : LineDigraph {};

struct OverlapNeighbor {
  EdgeId id;
  std::uint32_t weight;  // |a ∩ b|
  friend bool operator==(const OverlapNeighbor&, const OverlapNeighbor&) = default;
};

// Undirected, intersection-weighted line graph. adj[v] is sorted by id and
// symmetric.
struct OverlapGraph {
  std::vector<std::vector<OverlapNeighbor>> adj;
  std::vector<std::uint32_t> sizes;

  std::size_t num_vertices() const noexcept { return adj.size(); }
  std::size_t num_edges() const noexcept {
    std::size_t r = 0;
    for (const auto& a : adj) r += a.size();
    return r / 2;
  }
  std::uint64_t total_weight() const noexcept {
    std::uint64_t r = 0;
    for (const auto& a : adj)
      for (const auto& nb : a) r += nb.weight;
    return r / 2;
  }
  std::uint32_t weight(EdgeId a, EdgeId b) const {
    const auto& l = adj[a];
    auto it = std::lower_bound(l.begin(), l.end(), b,
                               [](const OverlapNeighbor& nb, EdgeId id) { return nb.id < id; });
    return (it != l.end() && it->id == b) ? it->weight : 0;
  }
  /// |a ∩ b| / min(|a|, |b|)
  double normalized_weight(EdgeId a, EdgeId b) const {
    return static_cast<double>(weight(a, b)) / std::min(sizes[a], sizes[b]);
  }

  friend bool operator==(const OverlapGraph&, const OverlapGraph&) = default;
};

namespace detail {

// For every hyperedge alpha, counts |alpha ∩ beta| for each beta that shares a
// node with it, walking only the memberships of alpha's nodes. `visit` gets
// (alpha, beta, |alpha ∩ beta|) for every such beta != alpha, in increasing
// beta order. Returns the number of membership entries inspected.
template <class Label, class Visit>
std::uint64_t for_each_intersection(const BasicHypergraph<Label>& h, EdgeId first, EdgeId last,
                                    Visit&& visit) {
  std::vector<std::uint32_t> count(h.num_edges(), 0);
  std::vector<EdgeId> touched;
  std::uint64_t visits = 0;
  for (EdgeId alpha = first; alpha < last; ++alpha) {
    touched.clear();
    for (NodeId u : h.edge(alpha))
      for (EdgeId beta : h.memberships(u)) {
        if (beta == alpha) continue;
        ++visits;
        if (count[beta]++ == 0) touched.push_back(beta);
      }
    std::sort(touched.begin(), touched.end());
    for (EdgeId beta : touched) {
      visit(alpha, beta, count[beta]);
      count[beta] = 0;
    }
  }
  return visits;
}

template <class Work>
void parallel_blocks(std::size_t total, unsigned threads, Work&& work) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  if (threads == 1) {
    work(0u, std::size_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = std::min(total, t * chunk), hi = std::min(total, lo + chunk);
    pool.emplace_back([&work, t, lo, hi] { work(t, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

template <class Label>
std::vector<std::uint32_t> edge_sizes(const BasicHypergraph<Label>& h) {
  std::vector<std::uint32_t> s(h.num_edges());
  for (EdgeId e = 0; e < h.num_edges(); ++e) s[e] = static_cast<std::uint32_t>(h.edge_size(e));
  return s;
}

}  // namespace detail

// Candidates for alpha are the hyperedges sharing at least one node with it.
// beta is a subset of alpha exactly when it was met once per node, i.e. when
// its intersection count reaches |beta|; no per-pair merge is needed.
// The result does not depend on `threads`.
template <class Label>
EncapsulationDag build_encapsulation_dag(const BasicHypergraph<Label>& h, unsigned threads = 1) {
  EncapsulationDag dag;
  const std::size_t m = h.num_edges();
  dag.sizes = detail::edge_sizes(h);
  dag.out_adj.assign(m, {});
  std::vector<std::uint64_t> visits(std::max(1u, threads), 0);
  detail::parallel_blocks(m, threads, [&](unsigned t, std::size_t lo, std::size_t hi) {
    visits[t] = detail::for_each_intersection(
        h, static_cast<EdgeId>(lo), static_cast<EdgeId>(hi),
        [&](EdgeId alpha, EdgeId beta, std::uint32_t common) {
          if (dag.sizes[beta] < dag.sizes[alpha] && common == dag.sizes[beta])
            dag.out_adj[alpha].push_back(beta);
        });
  });
  for (auto v : visits) dag.candidate_visits += v;
  dag.rebuild_in_adj();
  return dag;
}

template <class Label>
OverlapGraph build_overlap_graph(const BasicHypergraph<Label>& h, unsigned threads = 1) {
  OverlapGraph g;
  g.sizes = detail::edge_sizes(h);
  g.adj.assign(h.num_edges(), {});
  detail::parallel_blocks(h.num_edges(), threads, [&](unsigned, std::size_t lo, std::size_t hi) {
    detail::for_each_intersection(h, static_cast<EdgeId>(lo), static_cast<EdgeId>(hi),
                                  [&](EdgeId alpha, EdgeId beta, std::uint32_t common) {
                                    g.adj[alpha].push_back({beta, common});
                                  });
  });
  return g;
}

/// Drops same-size overlaps and orients the rest from larger to smaller.
inline OverlapDag build_overlap_dag(const OverlapGraph& g) {
  OverlapDag d;
  d.sizes = g.sizes;
  d.out_adj.assign(g.num_vertices(), {});
  for (EdgeId a = 0; a < g.num_vertices(); ++a)
    for (const auto& nb : g.adj[a])
      if (g.sizes[a] > g.sizes[nb.id]) d.out_adj[a].push_back(nb.id);
  d.rebuild_in_adj();
  return d;
}

// Encapsulation of size-m hyperedges by size-n hyperedges, n > m.
struct SizePairCounts {
  unsigned n = 0;
  unsigned m = 0;
  std::uint64_t count = 0;        // DAG edges from size n to size m
  std::uint64_t num_size_n = 0;   // hyperedges of size n
  std::vector<std::uint32_t> per_edge;  // size-m out-neighbours of each size-n hyperedge

  double per_size_n_edge() const { return num_size_n ? double(count) / double(num_size_n) : 0.0; }
  double max_per_edge() const { return binomial(n, m); }

  /// (k, number of size-n hyperedges encapsulating exactly k size-m ones),
  /// ascending in k. Normalized position is k / C(n, m).
  std::vector<std::pair<std::uint32_t, std::uint64_t>> histogram(bool include_zero = false) const {
    std::map<std::uint32_t, std::uint64_t> hist;
    for (auto k : per_edge)
      if (k > 0 || include_zero) ++hist[k];
    return {hist.begin(), hist.end()};
  }
};

struct EncapsulationCounts {
  std::vector<std::size_t> size_counts;  // index = hyperedge size
  std::map<std::pair<unsigned, unsigned>, SizePairCounts> pairs;  // key (n, m)

  const SizePairCounts* find(unsigned n, unsigned m) const {
    auto it = pairs.find({n, m});
    return it == pairs.end() ? nullptr : &it->second;
  }
};

/// One entry per (n, m), n > m, with both sizes present in h.
template <class Label>
EncapsulationCounts encapsulation_counts(const BasicHypergraph<Label>& h,
                                         const EncapsulationDag& dag) {
  EncapsulationCounts out;
  out.size_counts = h.size_distribution();
  const auto& sc = out.size_counts;
  for (unsigned n = 2; n < sc.size(); ++n) {
    if (!sc[n]) continue;
    for (unsigned m = 1; m < n; ++m) {
      if (!sc[m]) continue;
      auto& p = out.pairs[{n, m}];
      p.n = n;
      p.m = m;
      p.num_size_n = sc[n];
      p.per_edge.reserve(sc[n]);
    }
  }
  std::vector<std::uint32_t> by_size;
  for (EdgeId a = 0; a < h.num_edges(); ++a) {
    const unsigned n = static_cast<unsigned>(h.edge_size(a));
    if (n < 2) continue;
    by_size.assign(n, 0);
    for (EdgeId b : dag.out_adj[a]) ++by_size[dag.sizes[b]];
    for (unsigned m = 1; m < n; ++m) {
      auto it = out.pairs.find({n, m});
      if (it == out.pairs.end()) continue;
      it->second.count += by_size[m];
      it->second.per_edge.push_back(by_size[m]);
    }
  }
  return out;
}

// Table-style summary of a hypergraph.
struct DatasetStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double projected_density = 0.0;
  std::size_t dag_edge_count = 0;
};

template <class Label>
DatasetStats dataset_stats(const BasicHypergraph<Label>& h, unsigned threads = 1) {
  DatasetStats s;
  s.n = h.num_nodes();
  s.m = h.num_edges();
  s.projected_density = s.n >= 2 ? projected_density(h) : 0.0;
  s.dag_edge_count = build_encapsulation_dag(h, threads).num_edges();
  return s;
}

}  // namespace hyperencap
