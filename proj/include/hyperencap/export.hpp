#pragma once

// Text, CSV and JSON serialization. Kept apart from the algorithm headers so
// that only users of these formats pull in nlohmann/json.

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hyperencap/dag.hpp"
#include "hyperencap/dynamics.hpp"
#include "hyperencap/linegraph.hpp"
#include "hyperencap/randomizer.hpp"
#include "hyperencap/rnhm.hpp"

namespace hyperencap {

using Json = nlohmann::ordered_json;

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// JSON has no infinity; non-finite values are written as null.
inline Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

/// `src dst` per line.
inline void write_edge_list(std::ostream& out, const LineDigraph& g) {
  for (EdgeId a = 0; a < g.num_vertices(); ++a)
    for (EdgeId b : g.out_adj[a]) out << a << ' ' << b << '\n';
}

/// `src dst weight` per undirected edge, src < dst.
inline void write_edge_list(std::ostream& out, const OverlapGraph& g) {
  for (EdgeId a = 0; a < g.num_vertices(); ++a)
    for (const auto& nb : g.adj[a])
      if (a < nb.id) out << a << ' ' << nb.id << ' ' << nb.weight << '\n';
}

// Raw counts always; `normalized` adds the per-hyperedge and bound columns,
// `histograms` adds the per-hyperedge distribution including zero counts.
inline Json to_json(const EncapsulationCounts& c, bool normalized = true, bool histograms = true) {
  Json sizes = Json::object();
  for (std::size_t k = 1; k < c.size_counts.size(); ++k)
    if (c.size_counts[k]) sizes[std::to_string(k)] = c.size_counts[k];
  Json pairs = Json::object();
  for (const auto& [key, p] : c.pairs) {
    Json j = {{"n", p.n}, {"m", p.m}, {"count", p.count}, {"size_n_hyperedges", p.num_size_n}};
    if (normalized) {
      j["per_size_n_hyperedge"] = p.per_size_n_edge();
      j["max_per_hyperedge"] = p.max_per_edge();
    }
    if (histograms) {
      Json hist = Json::array();
      for (auto [k, cnt] : p.histogram(true))
        hist.push_back({{"subsets", k}, {"fraction", k / p.max_per_edge()}, {"hyperedges", cnt}});
      j["histogram"] = hist;
    }
    pairs[std::to_string(p.n) + "," + std::to_string(p.m)] = j;
  }
  return {{"size_counts", sizes}, {"pairs", pairs}};
}

inline void write_heights_csv(std::ostream& out, const HeightReport& r) {
  out << "root_id,size,dag_degree,max_height,norm_degree,norm_height\n";
  for (const auto& x : r.roots)
    out << x.root << ',' << x.size << ',' << x.dag_degree << ',' << x.max_height << ','
        << format_double(x.norm_degree) << ',' << format_double(x.norm_height) << '\n';
}

inline Json to_json(const HeightReport& r) {
  Json dist = Json::object();
  for (auto [h, n] : r.distribution) dist[std::to_string(h)] = n;
  return {{"roots", r.roots.size()}, {"max_height", r.max_height}, {"distribution", dist}};
}

inline Json to_json(const RelationTotals& t) {
  return {{"dag_edges", t.dag_edges}, {"overlap_edges", t.overlap_edges}, {"overlap_weight", t.overlap_weight}};
}

inline Json to_json(const Retention& r) {
  Json j = {{"value", json_number(r.value)}};
  if (r.zero_over_zero) j["zero_over_zero"] = true;
  return j;
}

inline Json to_json(const LayerRandomizationReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"seed", s.seed},
                       {"totals", to_json(s.totals)},
                       {"collapsed", s.collapsed},
                       {"retention",
                        {{"dag_edges", to_json(s.dag_edges)},
                         {"overlap_edges", to_json(s.overlap_edges)},
                         {"overlap_weight", to_json(s.overlap_weight)}}}});
  return {{"observed", to_json(r.observed)},
          {"samples", samples},
          {"means",
           {{"dag_edges", json_number(r.mean_dag_edges)},
            {"overlap_edges", json_number(r.mean_overlap_edges)},
            {"overlap_weight", json_number(r.mean_overlap_weight)}}},
          {"seed", r.seed}};
}

inline Json to_json(const RnhmParams& p) {
  Json keep = Json::object();
  for (auto [s, e] : p.keep) keep[std::to_string(s)] = e;
  return {{"num_nodes", p.num_nodes},
          {"max_size", p.max_size},
          {"num_max_edges", p.num_max_edges},
          {"keep", keep},
          {"include_singletons", p.include_singletons},
          {"seed", p.seed}};
}

inline Json to_json(const RnhmResult& r) {
  return {{"nodes", r.hypergraph.num_nodes()},
          {"hyperedges", r.hypergraph.num_edges()},
          {"attempts", r.attempts},
          {"rejected_disconnected", r.disconnected},
          {"rejected_infeasible", r.infeasible},
          {"rewired", r.rewired}};
}

/// Per-step newly activated hyperedge ids; element 0 is the seeding round.
inline Json trajectory_json(const Trajectory& t) {
  Json rounds = Json::array();
  for (const auto& r : t.rounds) rounds.push_back(r);
  return rounds;
}

inline constexpr const char* kResultsCsvHeader =
    "dataset,variant,strategy,seeds,tau,run,steps,final_active,non_seed_active,proportion";

inline void write_results_csv(std::ostream& out, const std::string& dataset, const ExperimentResult& res,
                              bool header = true) {
  if (header) out << kResultsCsvHeader << '\n';
  for (const auto& r : res.runs) {
    const auto& c = res.cells[r.cell];
    out << dataset << ',' << to_string(c.variant) << ',' << to_string(c.strategy) << ',' << c.seeds << ','
        << c.tau << ',' << r.run << ',' << r.steps << ',' << r.final_active << ',' << r.non_seed_active << ','
        << format_double(r.proportion) << '\n';
  }
}

inline Json to_json(const CellSummary& s) {
  Json j = {{"variant", to_string(s.cell.variant)},
            {"strategy", to_string(s.cell.strategy)},
            {"seeds", s.cell.seeds},
            {"tau", s.cell.tau},
            {"runs", s.runs},
            {"mean", s.mean},
            {"std_error", s.std_error}};
  if (s.any_all_seeded) j["all_seeded"] = true;
  return j;
}

}  // namespace hyperencap
