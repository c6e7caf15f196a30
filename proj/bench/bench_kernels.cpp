// Times the OpenMP kernels against their serial reference paths.
//
//   dsearch_bench [nodes] [pairs]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numeric>

#include <omp.h>

#include "dsearch/generator.hpp"
#include "dsearch/harness.hpp"

using namespace dsearch;

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int main(int argc, char** argv) {
  const std::size_t nodes = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000;
  const std::size_t pairs = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 200;

  const Graph g = generate_ba({nodes, 3, 3, 42});
  std::cout << "graph: " << g.node_count() << " nodes, " << g.edge_count() << " edges, "
            << omp_get_max_threads() << " threads\n";

  std::vector<NodeId> sources(std::min<std::size_t>(nodes, 1000));
  std::iota(sources.begin(), sources.end(), NodeId{0});
  PathLengthSummary a, b;
  const double bfs_serial = time_ms([&] { a = shortest_path_totals(g, sources, Execution::serial); });
  const double bfs_parallel = time_ms([&] { b = shortest_path_totals(g, sources, Execution::parallel); });
  std::cout << "bfs totals (" << sources.size() << " sources): serial " << bfs_serial
            << " ms, parallel " << bfs_parallel << " ms, mean " << a.mean()
            << (a.total_hops == b.total_hops ? "" : "  MISMATCH") << '\n';

  ExperimentPlan plan;
  plan.variants = {Variant::make(1), Variant::make(2, 0, true), Variant::make(2, 5),
                   Variant::make(3)};
  plan.pairs_per_round = pairs;
  plan.rounds = 1;
  plan.master_seed = 7;
  ExperimentResult rs, rp;
  const double exp_serial = time_ms([&] { rs = run_experiment(g, plan, Execution::serial); });
  const double exp_parallel = time_ms([&] { rp = run_experiment(g, plan, Execution::parallel); });
  std::cout << "experiment (" << pairs << " pairs x " << plan.variants.size()
            << " variants): serial " << exp_serial << " ms, parallel " << exp_parallel << " ms"
            << (rs.records == rp.records ? "" : "  MISMATCH") << '\n';
  return rs.records == rp.records && a.total_hops == b.total_hops ? 0 : 1;
}
