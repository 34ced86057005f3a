#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "hyperencap/hypergraph.hpp"
#include "hyperencap/rng.hpp"

namespace hyperencap {

class RewireInfeasible : public GenerationError {
 public:
  using GenerationError::GenerationError;
};

// Random Nested Hypergraph Model.
struct RnhmParams {
  std::size_t num_nodes = 20;       // N
  unsigned max_size = 4;            // s_m
  std::size_t num_max_edges = 5;    // hyperedges of size s_m
  std::map<unsigned, double> keep;  // keep probability per size 1 < s < s_m; missing means 1
  bool include_singletons = false;
  std::uint64_t seed = 0;
  std::size_t max_connectivity_attempts = 100;
  std::size_t max_rewire_attempts = 100;

  double keep_probability(unsigned s) const {
    auto it = keep.find(s);
    return it == keep.end() ? 1.0 : it->second;
  }

  void validate() const {
    if (max_size < 2 || max_size > num_nodes)
      throw std::invalid_argument("rnhm: need 2 <= max_size <= num_nodes");
    if (num_max_edges < 1) throw std::invalid_argument("rnhm: need at least one maximal hyperedge");
    for (const auto& [s, p] : keep) {
      if (s <= 1 || s >= max_size)
        throw std::invalid_argument("rnhm: keep probability given for size " + std::to_string(s) +
                                    ", outside 1 < s < max_size");
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("rnhm: keep probability must be in [0,1]");
    }
    if (binomial(static_cast<unsigned>(num_nodes), max_size) < static_cast<double>(num_max_edges))
      throw std::invalid_argument("rnhm: fewer distinct node sets than requested maximal hyperedges");
  }
};

struct RnhmResult {
  Hypergraph hypergraph;  // node labels are 0..N-1
  std::vector<std::vector<std::int64_t>> maximal_edges;
  std::size_t attempts = 0;           // whole-hypergraph samples drawn
  std::size_t disconnected = 0;       // rejected for disconnection
  std::size_t infeasible = 0;         // rejected because a rewire could not be placed
  std::size_t rewired = 0;            // rewired hyperedges in the accepted sample
};

// Hyperedge list with set lookup, mutated in place while rewiring.
class EdgePool {
 public:
  bool contains(const std::vector<NodeId>& e) const { return index_.contains(e); }
  bool add(std::vector<NodeId> e) {
    if (!index_.insert(e).second) return false;
    edges_.push_back(std::move(e));
    return true;
  }
  void replace(std::size_t i, std::vector<NodeId> e) {
    index_.erase(edges_[i]);
    index_.insert(e);
    edges_[i] = std::move(e);
  }
  const std::vector<std::vector<NodeId>>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }

 private:
  std::vector<std::vector<NodeId>> edges_;
  std::unordered_set<std::vector<NodeId>, NodeListHash> index_;
};

/// Keeps one uniformly chosen pivot of `edge` and refills the other
/// |edge|-1 slots with distinct nodes from [0, num_nodes) that lie outside
/// every current hyperedge containing `edge`. Resamples while the result
/// already exists in `pool`; throws RewireInfeasible when the candidate set
/// is too small or the attempt budget runs out.
inline std::vector<NodeId> rewire(const std::vector<NodeId>& edge, const EdgePool& pool,
                                  std::size_t num_nodes, Rng& rng, std::size_t max_attempts = 100) {
  if (edge.size() < 2) throw std::invalid_argument("rewire: edge must have at least 2 nodes");
  std::vector<char> excluded(num_nodes, 0);
  for (const auto& other : pool.edges())
    if (other.size() > edge.size() && std::includes(other.begin(), other.end(), edge.begin(), edge.end()))
      for (NodeId u : other) excluded[u] = 1;
  for (NodeId u : edge) excluded[u] = 1;

  std::vector<NodeId> candidates;
  for (NodeId u = 0; u < num_nodes; ++u)
    if (!excluded[u]) candidates.push_back(u);
  const std::size_t need = edge.size() - 1;
  if (candidates.size() < need)
    throw RewireInfeasible("rewire: only " + std::to_string(candidates.size()) +
                           " candidate nodes for " + std::to_string(need) + " slots");

  std::uniform_int_distribution<std::size_t> pick(0, edge.size() - 1);
  std::vector<NodeId> out;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    out.clear();
    out.push_back(edge[pick(rng)]);
    std::sample(candidates.begin(), candidates.end(), std::back_inserter(out), need, rng);
    std::sort(out.begin(), out.end());
    if (!pool.contains(out)) return out;
  }
  throw RewireInfeasible("rewire: every resample collided with an existing hyperedge");
}

namespace detail {

inline void push_subsets(const std::vector<NodeId>& edge, std::size_t k, EdgePool& pool) {
  // k-combinations in lexicographic order of positions
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t n = edge.size();
  while (true) {
    std::vector<NodeId> sub;
    sub.reserve(k);
    for (auto i : idx) sub.push_back(edge[i]);
    pool.add(std::move(sub));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// One sample: distinct maximal hyperedges, all their subsets of size >= 2,
// per-size rewiring (sizes descending, edges in insertion order), then the
// optional singletons for every node in use. Samples that are disconnected or
// hit an infeasible rewire are discarded and redrawn from the same stream.
inline RnhmResult generate_rnhm(const RnhmParams& p) {
  p.validate();
  Rng rng = make_rng(p.seed, "rnhm");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<NodeId> all(p.num_nodes);
  std::iota(all.begin(), all.end(), NodeId{0});
  std::vector<std::int64_t> labels(all.begin(), all.end());

  RnhmResult res;
  while (res.attempts < p.max_connectivity_attempts) {
    ++res.attempts;
    EdgePool pool;
    std::vector<std::vector<NodeId>> maximal;
    std::size_t draws = 0;
    while (maximal.size() < p.num_max_edges) {
      if (++draws > 100 * p.num_max_edges + 100)
        throw GenerationError("rnhm: could not draw distinct maximal hyperedges");
      std::vector<NodeId> e;
      std::sample(all.begin(), all.end(), std::back_inserter(e), p.max_size, rng);
      std::sort(e.begin(), e.end());
      if (pool.add(e)) maximal.push_back(std::move(e));
    }
    for (const auto& e : maximal)
      for (std::size_t k = p.max_size - 1; k >= 2; --k) detail::push_subsets(e, k, pool);

    std::size_t rewired = 0;
    bool feasible = true;
    for (unsigned s = p.max_size - 1; s >= 2 && feasible; --s) {
      const double keep = p.keep_probability(s);
      if (keep >= 1.0) continue;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool.edges()[i].size() != s) continue;
        if (coin(rng) < keep) continue;
        try {
          auto fresh = rewire(pool.edges()[i], pool, p.num_nodes, rng, p.max_rewire_attempts);
          pool.replace(i, std::move(fresh));
          ++rewired;
        } catch (const RewireInfeasible&) {
          feasible = false;
          break;
        }
      }
    }
    if (!feasible) {
      ++res.infeasible;
      continue;
    }

    std::vector<std::vector<NodeId>> edges = pool.edges();
    if (p.include_singletons) {
      std::vector<char> used(p.num_nodes, 0);
      for (const auto& e : edges)
        for (NodeId u : e) used[u] = 1;
      for (NodeId u = 0; u < p.num_nodes; ++u)
        if (used[u]) edges.push_back({u});
    }
    Hypergraph h(labels, std::move(edges));
    if (!is_connected(h)) {
      ++res.disconnected;
      continue;
    }
    res.hypergraph = std::move(h);
    res.rewired = rewired;
    for (const auto& e : maximal) res.maximal_edges.emplace_back(e.begin(), e.end());
    return res;
  }
  throw GenerationError("rnhm: no connected sample after " + std::to_string(res.attempts) +
                        " attempts (" + std::to_string(res.disconnected) + " disconnected, " +
                        std::to_string(res.infeasible) + " infeasible rewires)");
}

}  // namespace hyperencap
