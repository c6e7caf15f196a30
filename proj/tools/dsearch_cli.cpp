// dsearch: generate topologies, run decentralized-search experiments, and
// report topology statistics.

#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "dsearch/error.hpp"
#include "dsearch/generator.hpp"
#include "dsearch/harness.hpp"
#include "dsearch/topology_io.hpp"
#include "json.hpp"

namespace {

using namespace dsearch;

// "--ba 10000,3" -> BaConfig
BaConfig parse_ba_spec(const std::string& spec, std::uint64_t seed) {
  BaConfig cfg;
  const auto comma = spec.find(',');
  try {
    cfg.n = std::stoull(spec.substr(0, comma));
    if (comma != std::string::npos) cfg.m_attach = std::stoull(spec.substr(comma + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_config, "--ba expects N,M (got \"" + spec + "\")");
  }
  cfg.seed_size = std::max<std::size_t>(cfg.m_attach, 3);
  cfg.rng_seed = seed;
  return cfg;
}

int fail(const Error& e) {
  nlohmann::json msg = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  std::cerr << msg.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-based decentralized search simulator"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a Barabasi-Albert topology as an edge list");
  BaConfig ba;
  std::string gen_out;
  gen->add_option("--nodes", ba.n, "Node count")->required();
  gen->add_option("--m-attach", ba.m_attach, "Edges added per new node")->capture_default_str();
  gen->add_option("--seed-size", ba.seed_size, "Initial clique size (default max(m-attach, 3))");
  gen->add_option("--seed", ba.rng_seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output edge-list file")->required();

  // run
  auto* run = app.add_subcommand("run", "Run a search experiment");
  run->set_help_flag("--help", "Print this help message and exit");
  std::string topology_file, ba_spec, out_dir;
  std::vector<int> hs{2};
  std::vector<std::size_t> consults{0};
  bool refine = false, refine_raw = false, keep_all_components = false;
  std::size_t pairs = 500, rounds = 10, hist_width = 10;
  std::optional<std::size_t> step_cap;
  std::uint64_t seed = 1;
  int threads = 0;
  auto* topo_opt = run->add_option("--topology", topology_file, "Edge-list file");
  auto* ba_opt = run->add_option("--ba", ba_spec, "Generate BA graph: N[,M] (M defaults to 2)");
  topo_opt->excludes(ba_opt);
  ba_opt->excludes(topo_opt);
  run->add_option("--h", hs, "Visibility radius (1, 2 or 3); repeatable")->capture_default_str();
  run->add_option("--consult", consults, "Consult budget; repeatable, budgets > 0 only pair with h=2")
      ->capture_default_str();
  run->add_flag("--refine", refine, "Refine found routes");
  run->add_flag("--refine-raw", refine_raw, "Refine the raw traversal list instead of the loop-erased route");
  run->add_flag("--all-components", keep_all_components, "Do not restrict a loaded topology to its giant component");
  run->add_option("--pairs", pairs, "Pairs per round")->capture_default_str();
  run->add_option("--rounds", rounds, "Rounds")->capture_default_str();
  run->add_option("--step-cap", step_cap, "Forward/deflection limit (default: node count)");
  run->add_option("--seed", seed, "Master seed")->capture_default_str();
  run->add_option("--hist-width", hist_width, "Histogram bin width")->capture_default_str();
  run->add_option("--threads", threads, "Worker threads (0 = OpenMP default)");
  run->add_option("--out-dir", out_dir, "Output directory")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Degree and path-length statistics of a topology");
  std::string stats_file;
  std::size_t path_samples = 200;
  std::uint64_t stats_seed = 1;
  stats->add_option("--topology", stats_file, "Edge-list file")->required();
  stats->add_option("--path-samples", path_samples, "BFS sources for the mean shortest path (0 = all)")
      ->capture_default_str();
  stats->add_option("--seed", stats_seed, "Seed for source sampling")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (gen->count("--seed-size") == 0) ba.seed_size = std::max<std::size_t>(ba.m_attach, 3);
      const Graph g = generate_ba(ba);
      save_edge_list(g, gen_out);
      std::cout << "wrote " << g.node_count() << " nodes, " << g.edge_count() << " edges to "
                << gen_out << '\n';
      return 0;
    }

    if (*run) {
      if (threads > 0) omp_set_num_threads(threads);
      ExperimentPlan plan;
      if (!topology_file.empty()) {
        plan.topology = FileTopology{topology_file, !keep_all_components};
      } else if (!ba_spec.empty()) {
        plan.topology = parse_ba_spec(ba_spec, seed);
      } else {
        throw Error(ErrorKind::invalid_config, "run needs --topology FILE or --ba N,M");
      }
      for (int h : hs) {
        for (std::size_t c : consults) {
          if (c > 0 && h != 2) continue;
          Variant v = Variant::make(h, c, refine || refine_raw);
          v.refine_raw_trace = refine_raw;
          if (refine_raw) v.name += "-raw";
          v.step_cap = step_cap;
          plan.variants.push_back(v);
        }
      }
      if (plan.variants.empty()) {
        throw Error(ErrorKind::invalid_config, "no valid (h, consult) combination requested");
      }
      plan.pairs_per_round = pairs;
      plan.rounds = rounds;
      plan.master_seed = seed;

      const auto result = run_experiment(plan);
      write_outputs(plan, result, out_dir, hist_width);
      std::cout << summary_to_json(result.summary);
      return 0;
    }

    if (*stats) {
      const auto topo = load_edge_list(stats_file, false);
      const Graph& g = topo.graph;
      const auto ds = degree_stats(g);
      auto comps = connected_components(g);
      std::size_t giant = 0;
      for (const auto& c : comps) giant = std::max(giant, c.size());

      // Mean shortest path over the giant component, from sampled sources.
      const auto giant_topo = load_edge_list(stats_file, true);
      std::vector<NodeId> sources(giant_topo.graph.node_count());
      std::iota(sources.begin(), sources.end(), NodeId{0});
      if (path_samples > 0 && path_samples < sources.size()) {
        std::mt19937_64 rng(stats_seed);
        std::shuffle(sources.begin(), sources.end(), rng);
        sources.resize(path_samples);
      }
      const auto totals = shortest_path_totals(giant_topo.graph, sources);

      nlohmann::json out;
      out["node_count"] = g.node_count();
      out["edge_count"] = g.edge_count();
      out["components"] = comps.size();
      out["giant_component_size"] = giant;
      out["min_degree"] = ds.min_degree;
      out["max_degree"] = ds.max_degree;
      out["mean_degree"] = 2.0 * g.edge_count() / g.node_count();
      out["fitted_exponent"] = ds.fitted_exponent ? nlohmann::json(*ds.fitted_exponent) : nlohmann::json(nullptr);
      nlohmann::json hist = nlohmann::json::object();
      for (const auto& [k, count] : ds.histogram) hist[std::to_string(k)] = count;
      out["degree_histogram"] = hist;
      out["path_sources"] = sources.size();
      out["mean_shortest_path"] = totals.mean();
      std::cout << out.dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(Error(ErrorKind::io, e.what()));
  }
  return 1;
}
