#include <gtest/gtest.h>

#include <cmath>

#include "hyperencap/linegraph.hpp"
#include "hyperencap/rnhm.hpp"

using namespace hyperencap;

TEST(Rnhm, FullNestingGivesEveryProperSubset) {
  for (bool singletons : {true, false}) {
    RnhmParams p;
    p.include_singletons = singletons;
    for (std::uint64_t s = 0; s < 30; ++s) {
      p.seed = s;
      auto r = generate_rnhm(p);
      const auto& h = r.hypergraph;
      EXPECT_EQ(r.rewired, 0u);
      const auto dag = build_encapsulation_dag(h);
      const double expect = std::pow(2.0, p.max_size) - 2 - (singletons ? 0 : p.max_size);
      ASSERT_EQ(r.maximal_edges.size(), p.num_max_edges);
      for (const auto& m : r.maximal_edges) {
        auto e = h.find_edge_by_labels(m);
        ASSERT_TRUE(e.has_value());
        EXPECT_EQ(dag.in_degree(*e), 0u);
        EXPECT_EQ(double(dag.out_degree(*e)), expect);
      }
      EXPECT_TRUE(is_connected(h));
      EXPECT_EQ(h.has_singletons(), singletons);
    }
  }
}

TEST(Rnhm, SingletonsCoverExactlyTheNodesInUse) {
  RnhmParams p;
  p.include_singletons = true;
  p.keep = {{2, 0.3}, {3, 0.5}};
  for (std::uint64_t s = 0; s < 30; ++s) {
    p.seed = s;
    const auto& h = generate_rnhm(p).hypergraph;
    std::size_t singles = 0;
    for (EdgeId e = 0; e < h.num_edges(); ++e) singles += h.edge_size(e) == 1;
    EXPECT_EQ(singles, h.num_nodes());
  }
}

TEST(Rnhm, NoKeepDestroysMostNesting) {
  RnhmParams full, none;
  none.keep = {{2, 0.0}, {3, 0.0}};
  std::uint64_t full_edges = 0, none_edges = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    full.seed = none.seed = s;
    auto a = generate_rnhm(full), b = generate_rnhm(none);
    full_edges += build_encapsulation_dag(a.hypergraph).num_edges();
    none_edges += build_encapsulation_dag(b.hypergraph).num_edges();
    EXPECT_GT(b.rewired, 0u);
  }
  EXPECT_LT(none_edges * 2, full_edges);
}

TEST(Rnhm, SameSeedSameSample) {
  RnhmParams p;
  p.keep = {{2, 0.5}};
  p.seed = 11;
  auto a = generate_rnhm(p), b = generate_rnhm(p);
  EXPECT_EQ(a.hypergraph, b.hypergraph);
  EXPECT_EQ(a.maximal_edges, b.maximal_edges);
  EXPECT_EQ(a.attempts, b.attempts);
}

TEST(Rnhm, ValidatesParameters) {
  RnhmParams p;
  p.max_size = 1;
  EXPECT_THROW(generate_rnhm(p), std::invalid_argument);
  p = {};
  p.keep = {{4, 0.5}};
  EXPECT_THROW(generate_rnhm(p), std::invalid_argument);
  p = {};
  p.keep = {{2, 1.5}};
  EXPECT_THROW(generate_rnhm(p), std::invalid_argument);
  p = {};
  p.num_nodes = 4;
  p.num_max_edges = 2;  // only one 4-set exists
  EXPECT_THROW(generate_rnhm(p), std::invalid_argument);
}

TEST(Rewire, KeepsPivotAndAvoidsSupersets) {
  EdgePool pool;
  pool.add({0, 1, 2, 3});
  pool.add({0, 1});
  pool.add({4, 5});
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto out = rewire({0, 1}, pool, 10, rng);
    ASSERT_EQ(out.size(), 2u);
    const bool has0 = std::count(out.begin(), out.end(), 0u), has1 = std::count(out.begin(), out.end(), 1u);
    EXPECT_TRUE(has0 != has1);
    for (NodeId u : out) EXPECT_TRUE(u == 0 || u == 1 || u >= 4);
    EXPECT_FALSE(pool.contains(out));
  }
}

TEST(Rewire, InfeasibleWhenNoCandidates) {
  EdgePool pool;
  pool.add({0, 1, 2});
  pool.add({0, 1});
  Rng rng(0);
  EXPECT_THROW(rewire({0, 1}, pool, 3, rng), RewireInfeasible);
}

TEST(Rewire, InfeasibleWhenEveryChoiceExists) {
  EdgePool pool;
  pool.add({0, 1});
  pool.add({0, 2});
  pool.add({1, 2});
  Rng rng(0);
  EXPECT_THROW(rewire({0, 1}, pool, 3, rng, 20), RewireInfeasible);
}

TEST(Rnhm, GeneratedEdgesAreDistinctAndWithinRange) {
  RnhmParams p;
  p.num_nodes = 12;
  p.max_size = 5;
  p.num_max_edges = 3;
  p.keep = {{2, 0.2}, {3, 0.4}, {4, 0.6}};
  for (std::uint64_t s = 0; s < 20; ++s) {
    p.seed = s;
    auto r = generate_rnhm(p);
    const auto& h = r.hypergraph;
    EXPECT_TRUE(h.check_invariants());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      EXPECT_LE(h.edge_size(e), p.max_size);
      EXPECT_GE(h.edge_size(e), 2u);
      for (auto l : h.edge_labels(e)) EXPECT_LT(l, std::int64_t(p.num_nodes));
    }
  }
}
