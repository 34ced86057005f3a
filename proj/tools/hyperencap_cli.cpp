#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperencap/export.hpp"
#include "hyperencap/hyperencap.hpp"
#include "hyperencap/io.hpp"
#include "run_manifest.hpp"

#ifndef HYPERENCAP_VERSION
#define HYPERENCAP_VERSION "unknown"
#endif

namespace hyperencap::cli {
namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string path;
  std::string format = "auto";
  bool lcc = false;
  std::size_t max_size = 25;
};

struct Loaded {
  Hypergraph h;
  std::string name;
  std::vector<fs::path> files;
};

Loaded load(const Input& in) {
  const fs::path p(in.path);
  Loaded out;
  fs::path nverts, simplices;
  std::string format = in.format;
  if (format == "auto") {
    fs::path prefixed = p;
    prefixed += "-nverts.txt";
    format = fs::is_directory(p) || fs::exists(prefixed) ? "simplex" : "plain";
  }
  if (format == "simplex") {
    if (fs::is_directory(p)) {
      out.name = p.filename().empty() ? p.parent_path().filename().string() : p.filename().string();
      nverts = p / (out.name + "-nverts.txt");
      simplices = p / (out.name + "-simplices.txt");
    } else {
      out.name = p.filename().string();
      nverts = p;
      nverts += "-nverts.txt";
      simplices = p;
      simplices += "-simplices.txt";
    }
    out.h = read_simplex_files(nverts, simplices);
    out.files = {nverts, simplices};
  } else if (format == "plain") {
    out.name = p.stem().string();
    out.h = read_plain_file(p);
    out.files = {p};
  } else {
    throw CLI::ValidationError("--format", "expected auto, simplex or plain");
  }
  if (out.h.num_edges() == 0) throw DataError(in.path + ": no hyperedges");
  out.h = preprocess(out.h, in.max_size, in.lcc);
  if (out.h.num_edges() == 0) throw DataError(in.path + ": no hyperedges left after filtering");
  return out;
}

void add_input_options(CLI::App* sub, Input& in) {
  sub->add_option("input", in.path, "Dataset directory, simplex prefix, or plain hyperedge file")->required();
  sub->add_option("--format", in.format, "auto | simplex | plain")->capture_default_str();
  sub->add_flag("--lcc", in.lcc, "Restrict to the largest connected component");
  sub->add_option("--max-size", in.max_size, "Drop hyperedges larger than this")->capture_default_str();
}

struct Common {
  std::string output;
  std::string manifest;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

// Per-invocation sink: the main output goes to -o or stdout, side files are
// written atomically, and every written file is checksummed for the manifest.
struct Sink {
  RunManifest manifest;
  std::ostringstream stdout_buf;
  const Common* common = nullptr;

  void main_output(const std::string& data) {
    if (common->output.empty()) {
      stdout_buf << data;
    } else {
      side_output(common->output, data);
    }
  }
  void side_output(const fs::path& p, const std::string& data) {
    write_atomic(p, data);
    manifest.add_output(p, data);
  }
};

Json option_values(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string key = opt->get_name();
    key.erase(0, key.find_first_not_of('-'));
    const auto& res = opt->results();
    if (res.empty()) {
      params[key] = opt->get_default_str();
    } else if (res.size() == 1) {
      params[key] = res[0];
    } else {
      params[key] = res;
    }
  }
  return params;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<Hypergraph> randomizations(const Hypergraph& h, std::size_t k, std::uint64_t seed) {
  std::vector<Hypergraph> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(layer_randomize(h, layer_sample_seed(seed, i)).hypergraph);
  return out;
}

std::string plain_text(const Hypergraph& h) {
  std::ostringstream out;
  write_plain(out, h);
  return out.str();
}

std::string csv_text(const HeightReport& rep) {
  std::ostringstream out;
  write_heights_csv(out, rep);
  return out.str();
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Encapsulation and overlap analysis of hypergraphs"};
  app.set_version_flag("--version", HYPERENCAP_VERSION);
  app.require_subcommand(1);

  Input in;
  Common common;
  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("-o,--output", common.output, "Write the main output here instead of stdout");
    sub->add_option("--manifest", common.manifest, "Run manifest path (default: <output>.manifest.json)");
    if (seeded) sub->add_option("--seed", common.seed, "Master RNG seed")->capture_default_str();
  };

  auto* stats = app.add_subcommand("stats", "Node, hyperedge and DAG edge counts and projected density");
  add_input_options(stats, in);
  add_common(stats, false);

  bool normalized = false, histograms = false;
  std::size_t randomize = 0;
  auto* encap = app.add_subcommand("encapsulation", "Encapsulation counts between size layers");
  add_input_options(encap, in);
  add_common(encap, true);
  encap->add_flag("--normalized", normalized, "Add per-hyperedge normalized counts");
  encap->add_flag("--histograms", histograms, "Add per-hyperedge distributions of encapsulated subsets");
  encap->add_option("--randomize", randomize, "Also report k layer randomizations");

  std::string roots_csv;
  auto* heights = app.add_subcommand("heights", "Rooted heights of the transitively reduced DAG");
  add_input_options(heights, in);
  add_common(heights, true);
  heights->add_option("--randomize", randomize, "Also report k layer randomizations");
  heights->add_option("--roots-csv", roots_csv, "Per-root table of the observed hypergraph");

  std::size_t samples = 1;
  std::string save_sample;
  auto* rand = app.add_subcommand("randomize", "Layer randomization and retained relations");
  add_input_options(rand, in);
  add_common(rand, true);
  rand->add_option("-k,--samples", samples, "Number of randomized samples")->capture_default_str();
  rand->add_option("--save", save_sample, "Write randomized sample 0 as a plain hyperedge file");
  rand->add_option("--jobs", common.jobs, "Worker threads")->capture_default_str();

  RnhmParams rp;
  std::vector<double> eps;
  std::string info;
  auto* rnhm = app.add_subcommand("rnhm", "Sample a random nested hypergraph (plain hyperedge list)");
  add_common(rnhm, true);
  rnhm->add_option("--nodes", rp.num_nodes, "Number of nodes N")->capture_default_str();
  rnhm->add_option("--max-size", rp.max_size, "Size of the maximal hyperedges")->capture_default_str();
  rnhm->add_option("--max-edges", rp.num_max_edges, "Number of maximal hyperedges")->capture_default_str();
  rnhm->add_option("--eps", eps, "Keep probabilities for sizes 2, 3, ..., max-size - 1")->delimiter(',');
  rnhm->add_flag("--singletons", rp.include_singletons, "Add a 1-node hyperedge for every node in use");
  rnhm->add_option("--info", info, "Write the generation summary as JSON");

  std::vector<std::string> variants{"strict"}, strategies{"uniform"};
  std::vector<std::size_t> seed_counts{1};
  std::vector<std::uint32_t> taus{1};
  std::size_t runs = 10, max_steps = 25;
  std::string results_csv, trajectories;
  auto* sim = app.add_subcommand("simulate", "Encapsulation or threshold dynamics over a grid of settings");
  add_input_options(sim, in);
  add_common(sim, true);
  sim->add_option("--variant", variants, "strict, non-strict, empirical-adjacent, threshold")
      ->delimiter(',')
      ->capture_default_str();
  sim->add_option("--strategy", strategies, "uniform, size-biased, inverse-size-biased, smallest-first")
      ->delimiter(',')
      ->capture_default_str();
  sim->add_option("--seeds", seed_counts, "Numbers of seed hyperedges")->delimiter(',')->capture_default_str();
  sim->add_option("--tau", taus, "Thresholds")->delimiter(',')->capture_default_str();
  sim->add_option("--runs", runs, "Runs per grid cell")->capture_default_str();
  sim->add_option("--max-steps", max_steps, "Step limit per run")->capture_default_str();
  sim->add_option("--randomize", randomize, "Also simulate on k layer randomizations");
  sim->add_option("--results-csv", results_csv, "Per-run table");
  sim->add_option("--trajectories", trajectories, "Per-run newly active hyperedge ids, as JSON");
  sim->add_option("--jobs", common.jobs, "Worker threads")->capture_default_str();

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare output checksums");
  replay->add_option("manifest", replay_path, "Manifest written by an earlier run")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  Sink sink;
  sink.common = &common;
  sink.manifest.version = HYPERENCAP_VERSION;
  sink.manifest.command = sub->get_name();
  sink.manifest.argv = args;

  try {
    if (sub == replay) {
      const Json m = Json::parse(read_file(replay_path));
      std::ostringstream rout;
      const int code = run(m.at("argv").get<std::vector<std::string>>(), rout, err);
      if (code != 0) return code;
      bool same = sha256_hex(rout.str()) == m.at("stdout_sha256").get<std::string>();
      for (const auto& o : m.at("outputs")) {
        const bool match = sha256_hex(read_file(o.at("path").get<std::string>())) == o.at("sha256");
        out << (match ? "match    " : "MISMATCH ") << o.at("path").get<std::string>() << '\n';
        same = same && match;
      }
      out << (same ? "replay reproduced every output\n" : "replay differs\n");
      return same ? 0 : kDataError;
    }

    sink.manifest.params = option_values(sub);
    if (sub->get_option_no_throw("--seed")) sink.manifest.seed = common.seed;
    Loaded data;
    if (sub != rnhm) {
      data = load(in);
      for (const auto& f : data.files) sink.manifest.add_input(f);
    }
    const Hypergraph& h = data.h;

    if (sub == stats) {
      const auto s = dataset_stats(h);
      Json j = {{"dataset", data.name},         {"lcc", in.lcc}, {"max_size", in.max_size}, {"nodes", s.n},
                {"hyperedges", s.m},            {"projected_density", json_number(s.projected_density)},
                {"dag_edges", s.dag_edge_count}};
      sink.main_output(dump(j));
    } else if (sub == encap) {
      Json j = {{"dataset", data.name},
                {"observed", to_json(encapsulation_counts(h, build_encapsulation_dag(h)), normalized, histograms)}};
      if (randomize) {
        Json r = Json::array();
        std::size_t i = 0;
        for (const auto& g : randomizations(h, randomize, common.seed)) {
          Json x = to_json(encapsulation_counts(g, build_encapsulation_dag(g)), normalized, histograms);
          x["seed"] = layer_sample_seed(common.seed, i++);
          r.push_back(x);
        }
        j["randomized"] = r;
      }
      sink.main_output(dump(j));
    } else if (sub == heights) {
      const auto rep = rooted_heights(transitive_reduction(build_encapsulation_dag(h)));
      Json j = {{"dataset", data.name}, {"observed", to_json(rep)}};
      if (randomize) {
        Json r = Json::array();
        std::size_t worst = 0, i = 0;
        for (const auto& g : randomizations(h, randomize, common.seed)) {
          const auto rr = rooted_heights(transitive_reduction(build_encapsulation_dag(g)));
          worst = std::max<std::size_t>(worst, rr.max_height);
          Json x = to_json(rr);
          x["seed"] = layer_sample_seed(common.seed, i++);
          r.push_back(x);
        }
        j["randomized"] = r;
        j["randomized_max_height"] = worst;
      }
      if (!roots_csv.empty()) sink.side_output(roots_csv, csv_text(rep));
      sink.main_output(dump(j));
    } else if (sub == rand) {
      if (samples == 0) throw CLI::ValidationError("--samples", "must be at least 1");
      const auto rep = retention_report(h, samples, common.seed, common.jobs);
      Json j = to_json(rep);
      j["dataset"] = data.name;
      if (!save_sample.empty())
        sink.side_output(save_sample, plain_text(layer_randomize(h, layer_sample_seed(common.seed, 0)).hypergraph));
      sink.main_output(dump(j));
    } else if (sub == rnhm) {
      rp.seed = common.seed;
      for (std::size_t i = 0; i < eps.size(); ++i) rp.keep[static_cast<unsigned>(i + 2)] = eps[i];
      const auto r = generate_rnhm(rp);
      Json j = {{"params", to_json(rp)}, {"result", to_json(r)}, {"maximal_hyperedges", r.maximal_edges}};
      err << j.dump() << '\n';
      if (!info.empty()) sink.side_output(info, dump(j));
      sink.main_output(plain_text(r.hypergraph));
    } else if (sub == sim) {
      std::vector<ExperimentCell> cells;
      for (const auto& v : variants)
        for (const auto& s : strategies)
          for (auto k : seed_counts)
            for (auto t : taus) cells.push_back({parse_variant(v), parse_strategy(s), k, t});
      const auto observed = run_experiment(h, cells, runs, common.seed, max_steps, common.jobs);

      std::ostringstream table;
      write_results_csv(table, data.name, observed);
      Json summaries = Json::array();
      for (const auto& s : observed.summaries) summaries.push_back(to_json(s));
      Json j = {{"dataset", data.name}, {"hyperedges", h.num_edges()}, {"observed", summaries}};

      if (randomize) {
        std::vector<double> mean(cells.size(), 0.0);
        std::size_t i = 0;
        for (const auto& g : randomizations(h, randomize, common.seed)) {
          const auto res = run_experiment(g, cells, runs, derive_seed(common.seed, "randomized", i), max_steps,
                                          common.jobs);
          write_results_csv(table, data.name + ":random-" + std::to_string(i), res, false);
          for (std::size_t c = 0; c < cells.size(); ++c) mean[c] += res.summaries[c].mean / randomize;
          ++i;
        }
        Json r = Json::array();
        for (std::size_t c = 0; c < cells.size(); ++c)
          r.push_back({{"variant", to_string(cells[c].variant)},
                       {"strategy", to_string(cells[c].strategy)},
                       {"seeds", cells[c].seeds},
                       {"tau", cells[c].tau},
                       {"mean", mean[c]},
                       {"observed_minus_randomized", observed.summaries[c].mean - mean[c]}});
        j["randomized"] = r;
      }
      if (!results_csv.empty()) sink.side_output(results_csv, table.str());
      if (!trajectories.empty()) {
        const auto graphs = DynamicsGraphs::build(h);
        Json all = Json::array();
        for (std::size_t c = 0; c < cells.size(); ++c)
          for (std::size_t r = 0; r < runs; ++r) {
            DynamicsConfig cfg;
            cfg.variant = cells[c].variant;
            cfg.strategy = cells[c].strategy;
            cfg.seed_count = cells[c].seeds;
            cfg.tau = cells[c].tau;
            cfg.max_steps = max_steps;
            Rng rng(run_seed(common.seed, c, r));
            all.push_back({{"cell", c}, {"run", r}, {"rounds", trajectory_json(simulate(h, graphs, cfg, rng))}});
          }
        sink.side_output(trajectories, all.dump() + "\n");
      }
      sink.main_output(dump(j));
    }

    const std::string printed = sink.stdout_buf.str();
    sink.manifest.stdout_sha256 = sha256_hex(printed);
    std::string manifest_path = common.manifest;
    if (manifest_path.empty() && !common.output.empty()) manifest_path = common.output + ".manifest.json";
    if (!manifest_path.empty()) write_atomic(manifest_path, dump(sink.manifest.to_json()));
    out << printed;
    return 0;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const MalformedGraphError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace hyperencap::cli

int main(int argc, char** argv) {
  return hyperencap::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
