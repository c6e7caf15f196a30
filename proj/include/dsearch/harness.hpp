#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsearch/execution.hpp"
#include "dsearch/generator.hpp"
#include "dsearch/graph.hpp"
#include "dsearch/search.hpp"

namespace dsearch {

/// One search strategy evaluated by an experiment.
struct Variant {
  std::string name;
  int visibility_h = 2;
  std::size_t consult_budget = 0;
  bool refine = false;
  bool refine_raw_trace = false;  // refine the unerased traversal list instead of the route
  std::optional<std::size_t> step_cap;  // defaults to N

  /// Named "h2", "h2-c5", "h2+refine", ...
  static Variant make(int h, std::size_t consult = 0, bool refine = false);
};

struct FileTopology {
  std::filesystem::path path;
  bool take_giant_component = true;
};

using TopologySource = std::variant<BaConfig, FileTopology>;

struct ExperimentPlan {
  TopologySource topology = BaConfig{};
  std::vector<Variant> variants;
  std::size_t pairs_per_round = 500;
  std::size_t rounds = 10;
  std::uint64_t master_seed = 1;
};

/// Throws Error{invalid_config} for zero pairs or rounds, duplicate variant
/// names, or any variant whose search settings are invalid.
void validate(const ExperimentPlan& plan);

/// Splitmix64 fold of the given words; used to derive every RNG stream.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept;

/// Ordered (s, t) pairs with s != t, drawn uniformly and with replacement
/// from the largest connected component. Throws Error{precondition} when
/// that component has fewer than two nodes.
std::vector<Edge> sample_pairs(const Graph& g, std::size_t count, std::uint64_t rng_seed);

struct SearchRecord {
  std::size_t round = 0;
  std::size_t pair_index = 0;
  NodeId source = 0;
  NodeId target = 0;
  std::size_t variant = 0;  // index into the plan's variants
  SearchOutcome outcome = SearchOutcome::found;
  std::size_t walk_steps = 0;
  std::optional<std::size_t> route_length;    // found only
  std::optional<std::size_t> refined_length;  // found and refinement enabled
  std::size_t consults = 0;
  std::optional<std::uint32_t> oracle_distance;

  bool found() const noexcept { return outcome == SearchOutcome::found; }
  bool operator==(const SearchRecord&) const = default;
};

/// Per-variant aggregates. Means are over successful searches only.
struct VariantSummary {
  std::string variant;
  std::size_t searches = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_walk_steps = 0.0;
  double mean_route_length = 0.0;
  std::optional<double> mean_refined_length;
  double fraction_under_10 = 0.0;  // successful searches with walk_steps < 10
  std::optional<std::size_t> max_refined_length;
  std::map<std::size_t, std::size_t> length_histogram;  // walk_steps -> count
  double oracle_mean_shortest_path = 0.0;  // over the successful pairs
  double mean_consults = 0.0;

  bool operator==(const VariantSummary&) const = default;
};

struct ExperimentSummary {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t pairs_per_round = 0;
  std::size_t rounds = 0;
  std::uint64_t master_seed = 0;
  std::vector<VariantSummary> variants;

  const VariantSummary& at(const std::string& name) const;
  bool operator==(const ExperimentSummary&) const = default;
};

struct ExperimentResult {
  ExperimentSummary summary;
  std::vector<SearchRecord> records;  // ordered by (round, pair_index, variant)
};

/// Builds the topology named by the plan.
Graph load_topology(const TopologySource& source);

/// Runs every variant on the same pair sets: each round draws a fresh pair
/// sample, and each pair gets one tie-break stream shared by all variants.
/// Results do not depend on the execution mode or thread count.
ExperimentResult run_experiment(const Graph& g, const ExperimentPlan& plan,
                                Execution exec = Execution::parallel);
ExperimentResult run_experiment(const ExperimentPlan& plan, Execution exec = Execution::parallel);

/// Recomputes the summary from per-search records.
ExperimentSummary summarize(const std::vector<Variant>& variants,
                            const std::vector<SearchRecord>& records,
                            std::size_t node_count, std::size_t edge_count,
                            std::size_t pairs_per_round, std::size_t rounds,
                            std::uint64_t master_seed);

// Output files.

/// Columns: round,pair_index,s,t,variant,outcome,walk_steps,route_length,
/// refined_length,consults,oracle_distance. Missing values are empty fields.
void emit_csv(const std::vector<Variant>& variants, const std::vector<SearchRecord>& records,
              const std::filesystem::path& path);

/// Parses a file written by emit_csv; variant names must be in `variants`.
std::vector<SearchRecord> load_records_csv(const std::vector<Variant>& variants,
                                           const std::filesystem::path& path);

void emit_summary_json(const ExperimentSummary& summary, const std::filesystem::path& path);
std::string summary_to_json(const ExperimentSummary& summary);

/// Columns: variant,bin_lower_bound,count over walk_steps of successful
/// searches, bins [k*w, (k+1)*w).
void emit_histogram(const std::vector<Variant>& variants, const std::vector<SearchRecord>& records,
                    std::size_t bin_width, const std::filesystem::path& path);

/// Writes searches.csv, summary.json and histogram.csv into `dir`.
void write_outputs(const ExperimentPlan& plan, const ExperimentResult& result,
                   const std::filesystem::path& dir, std::size_t bin_width = 10);

}  // namespace dsearch
