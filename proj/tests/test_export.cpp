#include <gtest/gtest.h>

#include <sstream>

#include "hyperencap/export.hpp"
#include "hyperencap/io.hpp"

using namespace hyperencap;

TEST(Export, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 2.0 / 6.0, 1e-12, 123456.789, 0.0})
    EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_TRUE(json_number(std::numeric_limits<double>::infinity()).is_null());
}

TEST(Export, EdgeLists) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {3, 4}});
  std::ostringstream d, o;
  write_edge_list(d, build_encapsulation_dag(h));
  write_edge_list(o, build_overlap_graph(h));
  EXPECT_EQ(d.str(), "0 1\n");
  EXPECT_EQ(o.str(), "0 1 2\n0 2 1\n");
}

TEST(Export, EncapsulationJsonRoundTrips) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {1, 3}, {4, 5}});
  auto c = encapsulation_counts(h, build_encapsulation_dag(h));
  auto j = Json::parse(to_json(c).dump());
  EXPECT_EQ(j["size_counts"]["2"], 3);
  const auto& p = j["pairs"]["3,2"];
  EXPECT_EQ(p["count"], 2);
  EXPECT_EQ(p["size_n_hyperedges"], 1);
  EXPECT_DOUBLE_EQ(p["per_size_n_hyperedge"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(p["max_per_hyperedge"].get<double>(), 3.0);
  ASSERT_EQ(p["histogram"].size(), 1u);
  EXPECT_DOUBLE_EQ(p["histogram"][0]["fraction"].get<double>(), 2.0 / 3.0);
}

TEST(Export, HeightsCsvParsesBack) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {1}});
  auto rep = rooted_heights(transitive_reduction(build_encapsulation_dag(h)));
  std::ostringstream out;
  write_heights_csv(out, rep);
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "root_id,size,dag_degree,max_height,norm_degree,norm_height");
  std::vector<std::string> cells;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(cells[3], "2");
  EXPECT_DOUBLE_EQ(std::stod(cells[4]), rep.roots[0].norm_degree);
}

TEST(Export, ResultsCsvMatchesRecords) {
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}, {2, 3}, {3, 4}});
  auto res = run_experiment(h, {{Variant::Strict, SeedStrategy::SmallestFirst, 1, 1}}, 3, 5);
  std::ostringstream out;
  write_results_csv(out, "toy", res);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kResultsCsvHeader);
  std::size_t n = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 10u);
    EXPECT_EQ(cells[0], "toy");
    EXPECT_EQ(cells[1], "strict");
    EXPECT_EQ(std::stoul(cells[7]), res.runs[n].final_active);
    EXPECT_EQ(std::stod(cells[9]), res.runs[n].proportion);
    ++n;
  }
  EXPECT_EQ(n, 3u);
}

TEST(Export, RetentionJson) {
  EXPECT_EQ(to_json(retention_ratio(0, 0)).dump(), R"({"value":1.0,"zero_over_zero":true})");
  EXPECT_EQ(to_json(retention_ratio(0, 3)).dump(), R"({"value":null})");
  auto h = Hypergraph::from_edges({{1, 2, 3}, {1, 2}});
  auto j = Json::parse(to_json(retention_report(h, 3, 1)).dump());
  EXPECT_EQ(j["samples"].size(), 3u);
  EXPECT_EQ(j["observed"]["dag_edges"], 1);
}
