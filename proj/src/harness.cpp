#include "dsearch/harness.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "dsearch/error.hpp"
#include "dsearch/refine.hpp"
#include "dsearch/topology_io.hpp"

namespace dsearch {

Variant Variant::make(int h, std::size_t consult, bool refine) {
  Variant v;
  v.visibility_h = h;
  v.consult_budget = consult;
  v.refine = refine;
  v.name = "h" + std::to_string(h);
  if (consult > 0) v.name += "-c" + std::to_string(consult);
  if (refine) v.name += "+refine";
  return v;
}

void validate(const ExperimentPlan& plan) {
  if (plan.pairs_per_round < 1 || plan.rounds < 1) {
    throw Error(ErrorKind::invalid_config, "pairs_per_round and rounds must both be >= 1");
  }
  std::set<std::string> names;
  for (const auto& v : plan.variants) {
    if (!names.insert(v.name).second) {
      throw Error(ErrorKind::invalid_config, "duplicate variant name \"" + v.name + "\"");
    }
    if (v.name.find_first_of(",\"\n\r") != std::string::npos || v.name.empty()) {
      throw Error(ErrorKind::invalid_config, "variant name \"" + v.name + "\" is empty or not CSV-safe");
    }
    validate(SearchConfig{v.visibility_h, v.consult_budget, v.step_cap, 0});
  }
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t state = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t w : words) state = splitmix(state ^ splitmix(w));
  return state;
}

std::vector<Edge> sample_pairs(const Graph& g, std::size_t count, std::uint64_t rng_seed) {
  std::vector<NodeId> pool;
  for (auto& comp : connected_components(g)) {
    if (comp.size() > pool.size()) pool = std::move(comp);
  }
  if (pool.size() < 2) {
    throw Error(ErrorKind::precondition, "pair sampling needs a component with at least 2 nodes");
  }
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<Edge> pairs;
  pairs.reserve(count);
  while (pairs.size() < count) {
    const NodeId s = pool[pick(rng)];
    NodeId t = pool[pick(rng)];
    while (t == s) t = pool[pick(rng)];
    pairs.emplace_back(s, t);
  }
  return pairs;
}

Graph load_topology(const TopologySource& source) {
  if (const auto* ba = std::get_if<BaConfig>(&source)) return generate_ba(*ba);
  const auto& file = std::get<FileTopology>(source);
  return load_edge_list(file.path, file.take_giant_component).graph;
}

namespace {

// All variants for one (round, pair); fills records[base .. base + variants).
void run_pair(const Graph& g, const ExperimentPlan& plan, std::size_t round, std::size_t pair_index,
              Edge pair, std::vector<SearchRecord>& records) {
  const auto [s, t] = pair;
  const auto oracle = shortest_path(g, s, t);
  const std::uint64_t stream = derive_seed({plan.master_seed, round, pair_index});
  const std::size_t base = (round * plan.pairs_per_round + pair_index) * plan.variants.size();

  for (std::size_t vi = 0; vi < plan.variants.size(); ++vi) {
    const Variant& variant = plan.variants[vi];
    SearchConfig cfg{variant.visibility_h, variant.consult_budget, variant.step_cap, stream};
    const WalkTrace trace = run_search(g, s, t, cfg);

    SearchRecord& rec = records[base + vi];
    rec.round = round;
    rec.pair_index = pair_index;
    rec.source = s;
    rec.target = t;
    rec.variant = vi;
    rec.outcome = trace.outcome;
    rec.walk_steps = trace.walk_steps();
    rec.consults = trace.consults;
    if (oracle) rec.oracle_distance = static_cast<std::uint32_t>(oracle->length());

    if (trace.outcome != SearchOutcome::found) continue;
    const auto raw = raw_route_nodes(g, trace, t);
    const Route route{loop_erase(raw, t)};
    rec.route_length = route.length();
    if (variant.refine) {
      rec.refined_length = variant.refine_raw_trace ? refine_walk(g, raw).refined.length()
                                                    : refine_route(g, route).refined.length();
    }
  }
}

}  // namespace

ExperimentResult run_experiment(const Graph& g, const ExperimentPlan& plan, Execution exec) {
  validate(plan);
  const std::size_t per_round = plan.pairs_per_round * plan.variants.size();
  std::vector<SearchRecord> records(per_round * plan.rounds);

  for (std::size_t round = 0; round < plan.rounds; ++round) {
    const auto pairs =
        sample_pairs(g, plan.pairs_per_round, derive_seed({plan.master_seed, round, 0x7061697273ULL}));
    const auto count = static_cast<std::int64_t>(pairs.size());
    if (exec == Execution::serial) {
      for (std::int64_t i = 0; i < count; ++i) run_pair(g, plan, round, i, pairs[i], records);
    } else {
      // Each iteration writes a disjoint slice of `records`.
#pragma omp parallel for schedule(dynamic, 4)
      for (std::int64_t i = 0; i < count; ++i) run_pair(g, plan, round, i, pairs[i], records);
    }
  }

  ExperimentResult result;
  result.summary = summarize(plan.variants, records, g.node_count(), g.edge_count(),
                             plan.pairs_per_round, plan.rounds, plan.master_seed);
  result.records = std::move(records);
  return result;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, Execution exec) {
  validate(plan);
  return run_experiment(load_topology(plan.topology), plan, exec);
}

ExperimentSummary summarize(const std::vector<Variant>& variants,
                            const std::vector<SearchRecord>& records, std::size_t node_count,
                            std::size_t edge_count, std::size_t pairs_per_round,
                            std::size_t rounds, std::uint64_t master_seed) {
  ExperimentSummary summary{node_count, edge_count, pairs_per_round, rounds, master_seed, {}};

  struct Totals {
    std::uint64_t walk = 0, route = 0, refined = 0, refined_count = 0, oracle = 0, consults = 0,
                  under_10 = 0;
  };
  std::vector<Totals> totals(variants.size());
  summary.variants.resize(variants.size());
  for (std::size_t i = 0; i < variants.size(); ++i) summary.variants[i].variant = variants[i].name;

  for (const auto& rec : records) {
    if (rec.variant >= variants.size()) {
      throw Error(ErrorKind::precondition, "record references unknown variant " + std::to_string(rec.variant));
    }
    auto& vs = summary.variants[rec.variant];
    auto& tot = totals[rec.variant];
    ++vs.searches;
    if (!rec.found()) continue;
    ++vs.successes;
    tot.walk += rec.walk_steps;
    tot.route += rec.route_length.value_or(0);
    tot.oracle += rec.oracle_distance.value_or(0);
    tot.consults += rec.consults;
    if (rec.walk_steps < 10) ++tot.under_10;
    ++vs.length_histogram[rec.walk_steps];
    if (rec.refined_length) {
      tot.refined += *rec.refined_length;
      ++tot.refined_count;
      vs.max_refined_length = std::max(vs.max_refined_length.value_or(0), *rec.refined_length);
    }
  }

  for (std::size_t i = 0; i < variants.size(); ++i) {
    auto& vs = summary.variants[i];
    const auto& tot = totals[i];
    if (vs.searches > 0) vs.success_rate = static_cast<double>(vs.successes) / vs.searches;
    if (vs.successes == 0) continue;
    const double n = static_cast<double>(vs.successes);
    vs.mean_walk_steps = tot.walk / n;
    vs.mean_route_length = tot.route / n;
    vs.fraction_under_10 = tot.under_10 / n;
    vs.oracle_mean_shortest_path = tot.oracle / n;
    vs.mean_consults = tot.consults / n;
    if (tot.refined_count > 0) {
      vs.mean_refined_length = static_cast<double>(tot.refined) / tot.refined_count;
    }
  }
  return summary;
}

const VariantSummary& ExperimentSummary::at(const std::string& name) const {
  for (const auto& v : variants) {
    if (v.variant == name) return v;
  }
  throw Error(ErrorKind::precondition, "no variant named \"" + name + "\" in summary");
}

}  // namespace dsearch
