#include <gtest/gtest.h>

#include <random>

#include "hyperencap/dag.hpp"
#include "hyperencap/io.hpp"
#include "hyperencap/linegraph.hpp"
#include "oracles.hpp"

using namespace hyperencap;

namespace {

Hypergraph from_oracle(const std::vector<oracle::Edge>& edges) {
  std::vector<std::vector<std::int64_t>> raw;
  for (const auto& e : edges) raw.emplace_back(e.begin(), e.end());
  return Hypergraph::from_edges(raw);
}

EdgeId id_of(const Hypergraph& h, std::vector<std::int64_t> labels) {
  auto e = h.find_edge_by_labels(std::move(labels));
  EXPECT_TRUE(e.has_value());
  return e.value_or(0);
}

// {e,f} overlaps both others but sits inside neither.
NamedHypergraph overlap_fragment() { return read_plain_string<std::string>("e f\na b c e\nb e\n"); }

}  // namespace

TEST(EncapsulationDag, DisjointFromSupersetsHasNoEdges) {
  auto h = overlap_fragment();
  auto dag = build_encapsulation_dag(h);
  const EdgeId ef = *h.find_edge_by_labels({"e", "f"});
  const EdgeId abce = *h.find_edge_by_labels({"a", "b", "c", "e"});
  const EdgeId be = *h.find_edge_by_labels({"b", "e"});
  EXPECT_EQ(dag.in_degree(ef), 0u);
  EXPECT_EQ(dag.out_degree(ef), 0u);
  EXPECT_TRUE(dag.has_edge(abce, be));
  EXPECT_EQ(dag.num_edges(), 1u);

  auto g = build_overlap_graph(h);
  EXPECT_GT(g.weight(ef, abce), 0u);
  EXPECT_GT(g.weight(ef, be), 0u);
}

TEST(EncapsulationDag, SingleEdge) {
  auto dag = build_encapsulation_dag(Hypergraph::from_edges({{1, 2}}));
  EXPECT_EQ(dag.num_vertices(), 1u);
  EXPECT_EQ(dag.num_edges(), 0u);
}

TEST(EncapsulationDag, ThreeEdgeChain) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {1}});
  auto dag = build_encapsulation_dag(h);
  const EdgeId a = id_of(h, {1, 2, 3}), b = id_of(h, {1, 2}), c = id_of(h, {1});
  EXPECT_EQ(dag.num_edges(), 3u);
  EXPECT_TRUE(dag.has_edge(a, b));
  EXPECT_TRUE(dag.has_edge(a, c));
  EXPECT_TRUE(dag.has_edge(b, c));
  EXPECT_TRUE(dag.is_transpose_consistent());
}

TEST(EncapsulationDag, MatchesAllPairsOracle) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto edges = oracle::random_edges(rng, 12, 60, 8);
    auto h = from_oracle(edges);
    auto dag = build_encapsulation_dag(h);
    std::set<std::pair<int, int>> got;
    // from_oracle keeps the order of distinct edges, so ids line up
    for (EdgeId a = 0; a < dag.num_vertices(); ++a)
      for (EdgeId b : dag.out_adj[a]) got.insert({int(a), int(b)});
    ASSERT_EQ(got, oracle::encapsulation_pairs(edges)) << "trial " << trial;
    for (EdgeId a = 0; a < dag.num_vertices(); ++a)
      for (EdgeId b : dag.out_adj[a]) ASSERT_GT(dag.sizes[a], dag.sizes[b]);
    EXPECT_NO_THROW(topological_order(dag));
    EXPECT_TRUE(dag.is_transpose_consistent());
    EXPECT_LE(dag.candidate_visits,
              std::uint64_t(h.num_edges()) * h.max_edge_size() * h.max_degree());
  }
}

TEST(EncapsulationDag, ThreadCountDoesNotChangeResult) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto h = from_oracle(oracle::random_edges(rng, 15, 200, 6));
    auto seq = build_encapsulation_dag(h, 1);
    for (unsigned t : {2u, 3u, 8u}) {
      auto par = build_encapsulation_dag(h, t);
      EXPECT_EQ(static_cast<const LineDigraph&>(seq), static_cast<const LineDigraph&>(par));
      EXPECT_EQ(seq.candidate_visits, par.candidate_visits);
      EXPECT_EQ(build_overlap_graph(h, 1), build_overlap_graph(h, t));
    }
  }
}

TEST(OverlapGraph, WeightsAndNormalization) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {3, 4}});
  auto g = build_overlap_graph(h);
  EXPECT_EQ(g.weight(0, 1), 1u);
  EXPECT_EQ(g.weight(1, 0), 1u);
  EXPECT_DOUBLE_EQ(g.normalized_weight(0, 1), 0.5);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.total_weight(), 1u);
}

TEST(OverlapGraph, DisjointEdgesHaveNoOverlap) {
  auto g = build_overlap_graph(Hypergraph::from_edges({{1, 2}, {3, 4}}));
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(OverlapGraph, MatchesAllPairsOracle) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto edges = oracle::random_edges(rng, 12, 60, 8);
    auto g = build_overlap_graph(from_oracle(edges));
    std::set<std::tuple<int, int, int>> got;
    for (EdgeId a = 0; a < g.num_vertices(); ++a)
      for (const auto& nb : g.adj[a]) {
        ASSERT_EQ(g.weight(nb.id, a), nb.weight);
        if (a < nb.id) got.insert({int(a), int(nb.id), int(nb.weight)});
      }
    ASSERT_EQ(got, oracle::overlap_triples(edges)) << "trial " << trial;
  }
}

TEST(OverlapDag, OrientsLargerToSmallerAndDropsEqualSizes) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {3, 4}, {4, 5}});
  auto d = build_overlap_dag(build_overlap_graph(h));
  EXPECT_TRUE(d.has_edge(0, 1));
  EXPECT_FALSE(d.has_edge(1, 0));
  EXPECT_FALSE(d.has_edge(1, 2));  // same size
  EXPECT_FALSE(d.has_edge(2, 1));
  EXPECT_EQ(d.num_edges(), 1u);
}

TEST(OverlapDag, ContainsEveryEncapsulationEdgeAndIsAcyclic) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto h = from_oracle(oracle::random_edges(rng, 10, 50, 6));
    auto dag = build_encapsulation_dag(h);
    auto odag = build_overlap_dag(build_overlap_graph(h));
    EXPECT_NO_THROW(topological_order(odag));
    for (EdgeId a = 0; a < dag.num_vertices(); ++a)
      for (EdgeId b : dag.out_adj[a]) EXPECT_TRUE(odag.has_edge(a, b));
  }
}

TEST(EncapsulationCounts, ThreeEdgeChain) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {1}});
  auto c = encapsulation_counts(h, build_encapsulation_dag(h));
  ASSERT_NE(c.find(3, 2), nullptr);
  EXPECT_EQ(c.find(3, 2)->count, 1u);
  EXPECT_EQ(c.find(3, 1)->count, 1u);
  EXPECT_EQ(c.find(2, 1)->count, 1u);
  EXPECT_EQ(c.pairs.size(), 3u);
}

TEST(EncapsulationCounts, FullComplexConcentratesAtOne) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {1, 3}, {2, 3}, {1}, {2}, {3}});
  auto c = encapsulation_counts(h, build_encapsulation_dag(h));
  for (const auto& [key, p] : c.pairs) {
    for (auto k : p.per_edge) EXPECT_DOUBLE_EQ(k / p.max_per_edge(), 1.0) << key.first << "," << key.second;
  }
  const auto* p32 = c.find(3, 2);
  ASSERT_NE(p32, nullptr);
  EXPECT_EQ(p32->histogram(), (std::vector<std::pair<std::uint32_t, std::uint64_t>>{{3, 1}}));
  EXPECT_DOUBLE_EQ(c.find(2, 1)->per_size_n_edge(), 2.0);
}

TEST(EncapsulationCounts, NoEncapsulationMeansZeroCounts) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {3, 4}, {5}});
  auto c = encapsulation_counts(h, build_encapsulation_dag(h));
  EXPECT_FALSE(c.pairs.empty());
  for (const auto& [key, p] : c.pairs) {
    EXPECT_EQ(p.count, 0u);
    EXPECT_TRUE(p.histogram().empty());
  }
}

TEST(EncapsulationCounts, BoundedByBinomial) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto h = from_oracle(oracle::random_edges(rng, 8, 60, 5));
    auto c = encapsulation_counts(h, build_encapsulation_dag(h));
    std::uint64_t total = 0;
    for (const auto& [key, p] : c.pairs) {
      EXPECT_LE(double(p.count), double(p.num_size_n) * p.max_per_edge());
      for (auto k : p.per_edge) EXPECT_LE(k / p.max_per_edge(), 1.0);
      total += p.count;
    }
    EXPECT_EQ(total, build_encapsulation_dag(h).num_edges());
  }
}

TEST(DatasetStats, SmallExample) {
  auto s = dataset_stats(Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {4, 5}}));
  EXPECT_EQ(s.n, 5u);
  EXPECT_EQ(s.m, 3u);
  EXPECT_EQ(s.dag_edge_count, 1u);
  EXPECT_DOUBLE_EQ(s.projected_density, 4.0 / 10.0);
}
