#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hyperencap/hypergraph.hpp"
#include "hyperencap/linegraph.hpp"
#include "hyperencap/rng.hpp"

namespace hyperencap {

template <class Label>
struct RandomizedHypergraph {
  BasicHypergraph<Label> hypergraph;
  std::size_t collapsed = 0;  // shuffled hyperedges that coincided with another
};

/// Sorted ids of the nodes appearing in size-k hyperedges, per k.
template <class Label>
std::map<std::size_t, std::vector<NodeId>> layer_node_sets(const BasicHypergraph<Label>& h) {
  std::map<std::size_t, std::vector<NodeId>> layers;
  for (const auto& e : h.edges()) {
    auto& l = layers[e.size()];
    l.insert(l.end(), e.begin(), e.end());
  }
  for (auto& [k, l] : layers) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return layers;
}

// Relabels the nodes of each size layer independently. `shuffle(nodes, k)`
// permutes the sorted node set of layer k in place; node nodes_before[i]
// becomes nodes_after[i] within that layer. Layers are visited in increasing k.
template <class Label, class Shuffle>
RandomizedHypergraph<Label> layer_randomize_with(const BasicHypergraph<Label>& h, Shuffle&& shuffle) {
  const auto layers = layer_node_sets(h);
  std::map<std::size_t, std::vector<EdgeId>> layer_edges;
  for (EdgeId e = 0; e < h.num_edges(); ++e) layer_edges[h.edge_size(e)].push_back(e);

  std::vector<NodeId> target(h.num_nodes());
  std::vector<std::vector<NodeId>> edges(h.num_edges());
  for (const auto& [k, nodes] : layers) {
    auto permuted = nodes;
    shuffle(permuted, k);
    for (std::size_t i = 0; i < nodes.size(); ++i) target[nodes[i]] = permuted[i];
    for (EdgeId e : layer_edges[k]) {
      auto& dst = edges[e];
      dst.reserve(k);
      for (NodeId u : h.edge(e)) dst.push_back(target[u]);
    }
  }
  RandomizedHypergraph<Label> out{BasicHypergraph<Label>(h.labels(), std::move(edges)), 0};
  out.collapsed = h.num_edges() - out.hypergraph.num_edges();
  return out;
}

template <class Label>
RandomizedHypergraph<Label> layer_randomize(const BasicHypergraph<Label>& h, std::uint64_t seed) {
  Rng rng(seed);
  return layer_randomize_with(h, [&](std::vector<NodeId>& nodes, std::size_t) {
    std::shuffle(nodes.begin(), nodes.end(), rng);
  });
}

/// Seed used for sample `index` of a run with master seed `seed`.
inline std::uint64_t layer_sample_seed(std::uint64_t seed, std::uint64_t index) {
  return derive_seed(seed, "layer-randomization", index);
}

struct RelationTotals {
  std::uint64_t dag_edges = 0;
  std::uint64_t overlap_edges = 0;
  std::uint64_t overlap_weight = 0;
};

template <class Label>
RelationTotals relation_totals(const BasicHypergraph<Label>& h, unsigned threads = 1) {
  const auto g = build_overlap_graph(h, threads);
  return {build_encapsulation_dag(h, threads).num_edges(), g.num_edges(), g.total_weight()};
}

struct Retention {
  double value = 1.0;
  bool zero_over_zero = false;  // observed and randomized both 0; value set to 1
};

/// randomized / observed. 0/0 is 1 (flagged); x/0 for x > 0 is +inf.
inline Retention retention_ratio(std::uint64_t observed, std::uint64_t randomized) {
  if (observed == 0) {
    if (randomized == 0) return {1.0, true};
    return {std::numeric_limits<double>::infinity(), false};
  }
  return {static_cast<double>(randomized) / static_cast<double>(observed), false};
}

struct RetentionSample {
  std::uint64_t seed = 0;
  RelationTotals totals;
  std::size_t collapsed = 0;
  Retention dag_edges, overlap_edges, overlap_weight;
};

struct LayerRandomizationReport {
  std::uint64_t seed = 0;
  RelationTotals observed;
  std::vector<RetentionSample> samples;
  double mean_dag_edges = 0.0;
  double mean_overlap_edges = 0.0;
  double mean_overlap_weight = 0.0;
};

inline RetentionSample compare_relations(const RelationTotals& observed, const RelationTotals& randomized) {
  RetentionSample s;
  s.totals = randomized;
  s.dag_edges = retention_ratio(observed.dag_edges, randomized.dag_edges);
  s.overlap_edges = retention_ratio(observed.overlap_edges, randomized.overlap_edges);
  s.overlap_weight = retention_ratio(observed.overlap_weight, randomized.overlap_weight);
  return s;
}

/// Samples run on up to `jobs` threads; sample i always uses
/// layer_sample_seed(seed, i), so the report does not depend on `jobs`.
template <class Label>
LayerRandomizationReport retention_report(const BasicHypergraph<Label>& h, std::size_t samples,
                                          std::uint64_t seed, unsigned jobs = 1) {
  if (samples == 0) throw std::invalid_argument("retention_report: samples must be >= 1");
  LayerRandomizationReport rep;
  rep.seed = seed;
  rep.observed = relation_totals(h);
  rep.samples.resize(samples);
  detail::parallel_blocks(samples, jobs, [&](unsigned, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto s = layer_sample_seed(seed, i);
      auto r = layer_randomize(h, s);
      auto cmp = compare_relations(rep.observed, relation_totals(r.hypergraph));
      cmp.seed = s;
      cmp.collapsed = r.collapsed;
      rep.samples[i] = cmp;
    }
  });
  for (const auto& s : rep.samples) {
    rep.mean_dag_edges += s.dag_edges.value;
    rep.mean_overlap_edges += s.overlap_edges.value;
    rep.mean_overlap_weight += s.overlap_weight.value;
  }
  rep.mean_dag_edges /= samples;
  rep.mean_overlap_edges /= samples;
  rep.mean_overlap_weight /= samples;
  return rep;
}

}  // namespace hyperencap
