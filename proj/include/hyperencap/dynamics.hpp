#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperencap/hypergraph.hpp"
#include "hyperencap/linegraph.hpp"
#include "hyperencap/rng.hpp"

namespace hyperencap {

enum class Variant { Strict, NonStrict, EmpiricalAdjacent, NodeThreshold };
enum class SeedStrategy { Uniform, SizeBiased, InverseSizeBiased, SmallestFirst };
enum class Comparison { AtLeast, MoreThan };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Strict: return "strict";
    case Variant::NonStrict: return "non-strict";
    case Variant::EmpiricalAdjacent: return "empirical-adjacent";
    case Variant::NodeThreshold: return "threshold";
  }
  return "?";
}

inline std::string_view to_string(SeedStrategy s) {
  switch (s) {
    case SeedStrategy::Uniform: return "uniform";
    case SeedStrategy::SizeBiased: return "size-biased";
    case SeedStrategy::InverseSizeBiased: return "inverse-size-biased";
    case SeedStrategy::SmallestFirst: return "smallest-first";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  for (auto v : {Variant::Strict, Variant::NonStrict, Variant::EmpiricalAdjacent, Variant::NodeThreshold})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown dynamics variant '" + std::string(s) + "'");
}

inline SeedStrategy parse_strategy(std::string_view s) {
  for (auto v : {SeedStrategy::Uniform, SeedStrategy::SizeBiased, SeedStrategy::InverseSizeBiased,
                 SeedStrategy::SmallestFirst})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown seed strategy '" + std::string(s) + "'");
}

struct DynamicsConfig {
  Variant variant = Variant::Strict;
  std::uint32_t tau = 1;
  std::size_t max_steps = 25;
  SeedStrategy strategy = SeedStrategy::Uniform;
  std::size_t seed_count = 1;
  std::uint64_t rng_seed = 0;
  Comparison comparison = Comparison::AtLeast;  // encapsulation variants only
  bool check_counters = false;                  // recount from scratch after every step

  void validate() const {
    if (variant != Variant::NodeThreshold && tau < 1)
      throw std::invalid_argument("dynamics: tau must be >= 1 for encapsulation dynamics");
    if (max_steps < 1) throw std::invalid_argument("dynamics: max_steps must be >= 1");
  }
};

/// The part of the encapsulation DAG that carries influence: an edge a -> b
/// means activation of b counts towards a.
struct InfluenceDag : LineDigraph {};

/// Only edges between hyperedges whose sizes differ by exactly one.
inline InfluenceDag adjacent_layer_dag(const EncapsulationDag& dag) {
  InfluenceDag d;
  d.sizes = dag.sizes;
  d.out_adj.assign(dag.num_vertices(), {});
  for (EdgeId a = 0; a < dag.num_vertices(); ++a)
    for (EdgeId b : dag.out_adj[a])
      if (dag.sizes[a] == dag.sizes[b] + 1) d.out_adj[a].push_back(b);
  d.rebuild_in_adj();
  return d;
}

/// For each hyperedge, only its encapsulated hyperedges of the largest size
/// it actually encapsulates.
inline InfluenceDag empirical_adjacent_dag(const EncapsulationDag& dag) {
  InfluenceDag d;
  d.sizes = dag.sizes;
  d.out_adj.assign(dag.num_vertices(), {});
  for (EdgeId a = 0; a < dag.num_vertices(); ++a) {
    std::uint32_t top = 0;
    for (EdgeId b : dag.out_adj[a]) top = std::max(top, dag.sizes[b]);
    for (EdgeId b : dag.out_adj[a])
      if (dag.sizes[b] == top) d.out_adj[a].push_back(b);
  }
  d.rebuild_in_adj();
  return d;
}

// Seed selection. Weighted strategies draw without replacement with weights
// renormalised after every draw; this is done in one pass with exponential
// keys log(U)/w (Efraimidis-Spirakis), which has the same distribution.
inline std::vector<EdgeId> select_seeds(std::span<const std::uint32_t> sizes, SeedStrategy strategy,
                                        std::size_t count, Rng& rng) {
  const std::size_t m = sizes.size();
  if (count > m)
    throw std::invalid_argument("select_seeds: " + std::to_string(count) + " seeds requested from " +
                                std::to_string(m) + " hyperedges");
  std::vector<EdgeId> ids(m);
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  switch (strategy) {
    case SeedStrategy::Uniform: {
      for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, m - 1);
        std::swap(ids[i], ids[pick(rng)]);
      }
      ids.resize(count);
      return ids;
    }
    case SeedStrategy::SizeBiased:
    case SeedStrategy::InverseSizeBiased: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<double> key(m);
      for (EdgeId e = 0; e < m; ++e) {
        const double w = strategy == SeedStrategy::SizeBiased ? double(sizes[e]) : 1.0 / sizes[e];
        double u = unit(rng);
        while (u == 0.0) u = unit(rng);
        key[e] = std::log(u) / w;
      }
      std::partial_sort(ids.begin(), ids.begin() + count, ids.end(),
                        [&](EdgeId a, EdgeId b) { return key[a] > key[b] || (key[a] == key[b] && a < b); });
      ids.resize(count);
      return ids;
    }
    case SeedStrategy::SmallestFirst: {
      std::shuffle(ids.begin(), ids.end(), rng);
      std::stable_sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) { return sizes[a] < sizes[b]; });
      ids.resize(count);
      return ids;
    }
  }
  return {};
}

template <class Label>
std::vector<EdgeId> select_seeds(const BasicHypergraph<Label>& h, SeedStrategy strategy, std::size_t count,
                                 Rng& rng) {
  const auto sizes = detail::edge_sizes(h);
  return select_seeds(std::span<const std::uint32_t>(sizes), strategy, count, rng);
}

struct Trajectory {
  std::vector<EdgeId> seeds;
  // rounds[0]: the seeds; rounds[t]: hyperedges first active at step t.
  // Each round is sorted.
  std::vector<std::vector<EdgeId>> rounds;
  std::size_t num_edges = 0;
  std::size_t final_active = 0;
  std::vector<std::string> warnings;

  std::size_t steps() const { return rounds.empty() ? 0 : rounds.size() - 1; }
  std::size_t non_seed_active() const { return final_active - seeds.size(); }
  bool all_seeded() const { return seeds.size() == num_edges; }
  /// Non-seed activations over non-seed hyperedges; 1 when everything was a seed.
  double proportion() const {
    return all_seeded() ? 1.0 : double(non_seed_active()) / double(num_edges - seeds.size());
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Encapsulation dynamics with synchronous updates. count_[a] tracks the
// active influencers of a; for size-2 hyperedges under the non-strict variant
// it tracks active member nodes instead (every node acting as a singleton).
template <class Label>
class EncapsulationProcess {
 public:
  EncapsulationProcess(const BasicHypergraph<Label>& h, const InfluenceDag& dag, Variant variant,
                       std::uint32_t tau, Comparison cmp = Comparison::AtLeast)
      : h_(h), dag_(dag), variant_(variant), tau_(tau), cmp_(cmp),
        edge_active_(h.num_edges(), 0), node_active_(h.num_nodes(), 0), pending_flag_(h.num_edges(), 0),
        count_(h.num_edges(), 0) {
    if (variant == Variant::NodeThreshold)
      throw std::invalid_argument("EncapsulationProcess: use ThresholdProcess for node thresholds");
    if (dag.num_vertices() != h.num_edges())
      throw std::invalid_argument("EncapsulationProcess: DAG does not match the hypergraph");
  }

  /// Activates the seeds; returns round 0.
  std::vector<EdgeId> seed(std::span<const EdgeId> seeds) {
    std::vector<EdgeId> round(seeds.begin(), seeds.end());
    for (EdgeId e : round) edge_active_[e] = 1;
    propagate(round);
    std::sort(round.begin(), round.end());
    return round;
  }

  /// One synchronous round; returns the newly active hyperedges (sorted).
  std::vector<EdgeId> step() {
    std::vector<EdgeId> round;
    round.swap(pending_);
    for (EdgeId e : round) {
      pending_flag_[e] = 0;
      edge_active_[e] = 1;
    }
    propagate(round);
    std::sort(round.begin(), round.end());
    return round;
  }

  bool edge_active(EdgeId e) const { return edge_active_[e]; }
  bool node_active(NodeId u) const { return node_active_[u]; }
  std::uint32_t active_sub_count(EdgeId e) const { return count_[e]; }
  std::size_t active_edges() const {
    return static_cast<std::size_t>(std::count(edge_active_.begin(), edge_active_.end(), 1));
  }

  /// Recounts every hyperedge from the activation vectors.
  bool verify_counters() const {
    for (EdgeId a = 0; a < h_.num_edges(); ++a) {
      std::uint32_t c = 0;
      if (uses_node_count(a)) {
        for (NodeId u : h_.edge(a)) c += node_active_[u];
      } else {
        for (EdgeId b : dag_.out_adj[a]) c += edge_active_[b];
      }
      if (c != count_[a]) return false;
    }
    return true;
  }

 private:
  bool uses_node_count(EdgeId a) const { return variant_ == Variant::NonStrict && h_.edge_size(a) == 2; }

  bool satisfied(std::uint32_t c) const { return cmp_ == Comparison::AtLeast ? c >= tau_ : c > tau_; }

  void bump(EdgeId a) {
    ++count_[a];
    if (!edge_active_[a] && !pending_flag_[a] && satisfied(count_[a])) {
      pending_flag_[a] = 1;
      pending_.push_back(a);
    }
  }

  void propagate(const std::vector<EdgeId>& round) {
    for (EdgeId e : round) {
      for (NodeId u : h_.edge(e)) {
        if (node_active_[u]) continue;
        node_active_[u] = 1;
        if (variant_ != Variant::NonStrict) continue;
        for (EdgeId pair : h_.memberships(u))
          if (h_.edge_size(pair) == 2) bump(pair);
      }
      for (EdgeId sup : dag_.in_adj[e])
        if (!uses_node_count(sup)) bump(sup);
    }
  }

  const BasicHypergraph<Label>& h_;
  const InfluenceDag& dag_;
  Variant variant_;
  std::uint32_t tau_;
  Comparison cmp_;
  std::vector<char> edge_active_, node_active_, pending_flag_;
  std::vector<std::uint32_t> count_;
  std::vector<EdgeId> pending_;
};

// Node-based threshold contagion: an inactive hyperedge a activates once at
// least |a| - tau of its nodes are active; activation switches on all of its
// nodes.
template <class Label>
class ThresholdProcess {
 public:
  ThresholdProcess(const BasicHypergraph<Label>& h, std::uint32_t tau)
      : h_(h), tau_(tau), edge_active_(h.num_edges(), 0), node_active_(h.num_nodes(), 0),
        pending_flag_(h.num_edges(), 0), count_(h.num_edges(), 0) {}

  std::vector<EdgeId> seed(std::span<const EdgeId> seeds) {
    std::vector<EdgeId> round(seeds.begin(), seeds.end());
    for (EdgeId e : round) edge_active_[e] = 1;
    // With tau >= |a| an edge is satisfied with no active node at all.
    for (EdgeId a = 0; a < h_.num_edges(); ++a) consider(a);
    propagate(round);
    std::sort(round.begin(), round.end());
    return round;
  }

  std::vector<EdgeId> step() {
    std::vector<EdgeId> round;
    round.swap(pending_);
    for (EdgeId e : round) {
      pending_flag_[e] = 0;
      edge_active_[e] = 1;
    }
    propagate(round);
    std::sort(round.begin(), round.end());
    return round;
  }

  bool edge_active(EdgeId e) const { return edge_active_[e]; }
  bool node_active(NodeId u) const { return node_active_[u]; }
  std::uint32_t active_node_count(EdgeId e) const { return count_[e]; }

  bool verify_counters() const {
    for (EdgeId a = 0; a < h_.num_edges(); ++a) {
      std::uint32_t c = 0;
      for (NodeId u : h_.edge(a)) c += node_active_[u];
      if (c != count_[a]) return false;
    }
    return true;
  }

 private:
  void consider(EdgeId a) {
    if (edge_active_[a] || pending_flag_[a]) return;
    if (static_cast<std::int64_t>(count_[a]) >=
        static_cast<std::int64_t>(h_.edge_size(a)) - static_cast<std::int64_t>(tau_)) {
      pending_flag_[a] = 1;
      pending_.push_back(a);
    }
  }

  void propagate(const std::vector<EdgeId>& round) {
    for (EdgeId e : round)
      for (NodeId u : h_.edge(e)) {
        if (node_active_[u]) continue;
        node_active_[u] = 1;
        for (EdgeId a : h_.memberships(u)) {
          ++count_[a];
          consider(a);
        }
      }
  }

  const BasicHypergraph<Label>& h_;
  std::uint32_t tau_;
  std::vector<char> edge_active_, node_active_, pending_flag_;
  std::vector<std::uint32_t> count_;
  std::vector<EdgeId> pending_;
};

namespace detail {

template <class Process>
Trajectory run_process(Process& proc, std::size_t num_edges, std::span<const EdgeId> seeds,
                       std::size_t max_steps, bool check_counters) {
  Trajectory t;
  t.seeds.assign(seeds.begin(), seeds.end());
  t.num_edges = num_edges;
  {
    std::vector<EdgeId> sorted = t.seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("simulate: repeated seed hyperedge");
    if (!sorted.empty() && sorted.back() >= num_edges)
      throw std::invalid_argument("simulate: seed id out of range");
  }
  t.rounds.push_back(proc.seed(seeds));
  t.final_active = t.rounds.back().size();
  if (check_counters && !proc.verify_counters()) throw std::logic_error("simulate: counter drift after seeding");
  for (std::size_t step = 1; step <= max_steps; ++step) {
    auto round = proc.step();
    if (check_counters && !proc.verify_counters()) throw std::logic_error("simulate: counter drift");
    if (round.empty()) break;
    t.final_active += round.size();
    t.rounds.push_back(std::move(round));
  }
  return t;
}

}  // namespace detail

/// Strict or non-strict encapsulation dynamics over an adjacent-layer DAG (or
/// any other influence DAG).
template <class Label>
Trajectory simulate_encapsulation(const BasicHypergraph<Label>& h, const InfluenceDag& dag,
                                  const DynamicsConfig& cfg, std::span<const EdgeId> seeds) {
  cfg.validate();
  EncapsulationProcess<Label> proc(h, dag, cfg.variant, cfg.tau, cfg.comparison);
  return detail::run_process(proc, h.num_edges(), seeds, cfg.max_steps, cfg.check_counters);
}

/// Influence comes from the largest encapsulated hyperedges each hyperedge
/// actually has, rather than from size |a| - 1 only. Node states never feed back.
template <class Label>
Trajectory simulate_encapsulation_empirical_adjacent(const BasicHypergraph<Label>& h,
                                                     const EncapsulationDag& dag, const DynamicsConfig& cfg,
                                                     std::span<const EdgeId> seeds) {
  auto c = cfg;
  c.variant = Variant::EmpiricalAdjacent;
  return simulate_encapsulation(h, empirical_adjacent_dag(dag), c, seeds);
}

template <class Label>
Trajectory simulate_threshold(const BasicHypergraph<Label>& h, const DynamicsConfig& cfg,
                              std::span<const EdgeId> seeds) {
  cfg.validate();
  ThresholdProcess<Label> proc(h, cfg.tau);
  auto t = detail::run_process(proc, h.num_edges(), seeds, cfg.max_steps, cfg.check_counters);
  std::size_t smallest = SIZE_MAX;
  for (EdgeId e = 0; e < h.num_edges(); ++e) smallest = std::min(smallest, h.edge_size(e));
  if (h.num_edges() && cfg.tau >= smallest)
    t.warnings.push_back("tau >= size of some hyperedge: such hyperedges activate with no active nodes");
  return t;
}

// Influence DAGs for every encapsulation variant, built once per hypergraph.
struct DynamicsGraphs {
  InfluenceDag adjacent;
  InfluenceDag empirical;

  template <class Label>
  static DynamicsGraphs build(const BasicHypergraph<Label>& h, unsigned threads = 1) {
    const auto dag = build_encapsulation_dag(h, threads);
    return {adjacent_layer_dag(dag), empirical_adjacent_dag(dag)};
  }
};

/// Seeds drawn with `rng`, then the variant named in cfg.
template <class Label>
Trajectory simulate(const BasicHypergraph<Label>& h, const DynamicsGraphs& g, const DynamicsConfig& cfg,
                    Rng& rng) {
  const auto seeds = select_seeds(h, cfg.strategy, cfg.seed_count, rng);
  switch (cfg.variant) {
    case Variant::Strict:
    case Variant::NonStrict: return simulate_encapsulation(h, g.adjacent, cfg, seeds);
    case Variant::EmpiricalAdjacent: return simulate_encapsulation(h, g.empirical, cfg, seeds);
    case Variant::NodeThreshold: return simulate_threshold(h, cfg, seeds);
  }
  return {};
}

// Experiment grid -----------------------------------------------------------

struct ExperimentCell {
  Variant variant = Variant::Strict;
  SeedStrategy strategy = SeedStrategy::Uniform;
  std::size_t seeds = 1;
  std::uint32_t tau = 1;
};

struct RunRecord {
  std::size_t cell = 0;
  std::size_t run = 0;
  std::size_t steps = 0;
  std::size_t final_active = 0;
  std::size_t non_seed_active = 0;
  double proportion = 0.0;
  bool all_seeded = false;
};

struct CellSummary {
  ExperimentCell cell;
  std::size_t runs = 0;
  double mean = 0.0;
  double std_error = 0.0;
  bool any_all_seeded = false;
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
  std::vector<RunRecord> runs;  // ordered by (cell, run)
  std::vector<CellSummary> summaries;
};

/// Seed stream for run `run` of grid cell `cell`.
inline std::uint64_t run_seed(std::uint64_t master, std::size_t cell, std::size_t run) {
  return derive_seed(derive_seed(master, "simulate", cell), "run", run);
}

inline CellSummary summarize(const ExperimentCell& cell, std::span<const RunRecord> runs) {
  CellSummary s;
  s.cell = cell;
  s.runs = runs.size();
  if (runs.empty()) return s;
  for (const auto& r : runs) {
    s.mean += r.proportion;
    s.any_all_seeded |= r.all_seeded;
  }
  s.mean /= runs.size();
  if (runs.size() > 1) {
    double ss = 0.0;
    for (const auto& r : runs) ss += (r.proportion - s.mean) * (r.proportion - s.mean);
    s.std_error = std::sqrt(ss / (runs.size() - 1)) / std::sqrt(double(runs.size()));
  }
  return s;
}

/// Every (cell, run) pair is independent; results do not depend on `jobs`.
template <class Label>
ExperimentResult run_experiment(const BasicHypergraph<Label>& h, const std::vector<ExperimentCell>& cells,
                                std::size_t runs, std::uint64_t master_seed, std::size_t max_steps = 25,
                                unsigned jobs = 1) {
  for (const auto& c : cells)
    if (c.seeds > h.num_edges())
      throw std::invalid_argument("run_experiment: " + std::to_string(c.seeds) + " seeds requested from " +
                                  std::to_string(h.num_edges()) + " hyperedges");
  const auto graphs = DynamicsGraphs::build(h);
  ExperimentResult res;
  res.cells = cells;
  res.runs.resize(cells.size() * runs);
  detail::parallel_blocks(res.runs.size(), jobs, [&](unsigned, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t c = i / runs, r = i % runs;
      DynamicsConfig cfg;
      cfg.variant = cells[c].variant;
      cfg.strategy = cells[c].strategy;
      cfg.seed_count = cells[c].seeds;
      cfg.tau = cells[c].tau;
      cfg.max_steps = max_steps;
      Rng rng(run_seed(master_seed, c, r));
      const auto t = simulate(h, graphs, cfg, rng);
      res.runs[i] = {c, r, t.steps(), t.final_active, t.non_seed_active(), t.proportion(), t.all_seeded()};
    }
  });
  for (std::size_t c = 0; c < cells.size(); ++c)
    res.summaries.push_back(
        summarize(cells[c], std::span<const RunRecord>(res.runs).subspan(c * runs, runs)));
  return res;
}

/// observed.mean - randomized.mean per cell; both results must share a grid.
inline std::vector<double> mean_difference(const ExperimentResult& observed, const ExperimentResult& randomized) {
  if (observed.summaries.size() != randomized.summaries.size())
    throw std::invalid_argument("mean_difference: grids differ");
  std::vector<double> d;
  for (std::size_t i = 0; i < observed.summaries.size(); ++i)
    d.push_back(observed.summaries[i].mean - randomized.summaries[i].mean);
  return d;
}

}  // namespace hyperencap
