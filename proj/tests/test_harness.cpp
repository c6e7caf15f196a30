#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dsearch/error.hpp"
#include "dsearch/harness.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace dsearch;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "dsearch_test_harness";
  fs::create_directories(dir);
  return dir / name;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const fs::path& p) {
  const auto text = read_file(p);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.topology = BaConfig{800, 2, 3, 5};
  plan.variants = {Variant::make(1), Variant::make(2, 0, true), Variant::make(2, 3), Variant::make(3, 0, true)};
  plan.pairs_per_round = 40;
  plan.rounds = 3;
  plan.master_seed = 17;
  return plan;
}

}  // namespace

TEST_CASE("variant names") {
  CHECK(Variant::make(2).name == "h2");
  CHECK(Variant::make(2, 5).name == "h2-c5");
  CHECK(Variant::make(3, 0, true).name == "h3+refine");
}

TEST_CASE("plan validation") {
  auto plan = small_plan();
  plan.rounds = 0;
  CHECK_THROWS_AS(validate(plan), Error);
  plan = small_plan();
  plan.variants.push_back(Variant::make(1));
  CHECK_THROWS_AS(validate(plan), Error);
  plan = small_plan();
  plan.variants.push_back(Variant::make(3, 2));
  CHECK_THROWS_AS(validate(plan), Error);
}

TEST_CASE("sample_pairs on two nodes") {
  const auto pairs = sample_pairs(testing::path_graph(2), 50, 3);
  CHECK(pairs.size() == 50);
  for (const auto& [s, t] : pairs) CHECK(((s == 0 && t == 1) || (s == 1 && t == 0)));
}

TEST_CASE("sample_pairs: 500 distinct-endpoint pairs, deterministic") {
  const Graph g = generate_ba({10'000, 2, 3, 1});
  const auto a = sample_pairs(g, 500, 42);
  CHECK(a.size() == 500);
  for (const auto& [s, t] : a) CHECK(s != t);
  CHECK(a == sample_pairs(g, 500, 42));
  CHECK(a != sample_pairs(g, 500, 43));
}

TEST_CASE("sample_pairs stays inside the largest component") {
  const std::vector<Edge> edges{{0, 1}, {2, 3}, {3, 4}, {4, 5}};
  for (const auto& [s, t] : sample_pairs(build_graph(edges, 7), 200, 1)) {
    CHECK(s >= 2);
    CHECK(s <= 5);
    CHECK(t >= 2);
    CHECK(t <= 5);
  }
  CHECK_THROWS_AS(sample_pairs(build_graph({}, 3), 1, 1), Error);
}

TEST_CASE("single adjacent pair with one-hop visibility") {
  ExperimentPlan plan;
  plan.variants = {Variant::make(1)};
  plan.pairs_per_round = 1;
  plan.rounds = 1;
  const auto res = run_experiment(testing::path_graph(2), plan);
  const auto& v = res.summary.at("h1");
  CHECK(v.mean_walk_steps == 0.0);
  CHECK(v.success_rate == 1.0);
  CHECK(v.fraction_under_10 == 1.0);
  CHECK(v.oracle_mean_shortest_path == 1.0);
  CHECK(v.mean_route_length == 1.0);
}

TEST_CASE("serial and parallel execution give identical records") {
  const auto plan = small_plan();
  const Graph g = load_topology(plan.topology);
  const auto serial = run_experiment(g, plan, Execution::serial);
  const auto parallel = run_experiment(g, plan, Execution::parallel);
  CHECK(serial.records == parallel.records);
  CHECK(serial.summary == parallel.summary);
}

TEST_CASE("experiment invariants") {
  const auto plan = small_plan();
  const auto res = run_experiment(plan);
  const std::size_t nv = plan.variants.size();
  REQUIRE(res.records.size() == plan.pairs_per_round * plan.rounds * nv);

  // all variants see the same pair at the same slot
  for (std::size_t i = 0; i < res.records.size(); i += nv) {
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& r = res.records[i + v];
      CHECK(r.variant == v);
      CHECK(r.source == res.records[i].source);
      CHECK(r.target == res.records[i].target);
      CHECK(r.round == res.records[i].round);
      CHECK(r.source != r.target);
      REQUIRE(r.oracle_distance.has_value());
      if (r.found()) {
        CHECK(*r.route_length >= *r.oracle_distance);
        if (plan.variants[v].refine) {
          REQUIRE(r.refined_length.has_value());
          CHECK(*r.refined_length >= *r.oracle_distance);
          CHECK(*r.refined_length <= *r.route_length);
        }
      }
    }
  }
  for (const auto& vs : res.summary.variants) {
    CHECK(vs.searches == plan.pairs_per_round * plan.rounds);
    CHECK(vs.success_rate >= 0.0);
    CHECK(vs.success_rate <= 1.0);
    std::size_t hist_total = 0;
    for (const auto& [len, count] : vs.length_histogram) hist_total += count;
    CHECK(hist_total == vs.successes);
    if (vs.mean_refined_length) CHECK(*vs.mean_refined_length >= vs.oracle_mean_shortest_path);
  }
}

TEST_CASE("rounds draw fresh pairs") {
  const auto res = run_experiment(small_plan());
  const std::size_t nv = 4, per_round = 40 * nv;
  bool differs = false;
  for (std::size_t i = 0; i < per_round; i += nv) {
    differs |= res.records[i].source != res.records[per_round + i].source;
  }
  CHECK(differs);
}

TEST_CASE("CSV: header plus one row per search, and reload reproduces the summary") {
  auto plan = small_plan();
  const auto res = run_experiment(plan);
  const auto p = scratch("searches.csv");
  emit_csv(plan.variants, res.records, p);
  CHECK(line_count(p) == res.records.size() + 1);
  const auto reloaded = load_records_csv(plan.variants, p);
  CHECK(reloaded == res.records);
  const auto again = summarize(plan.variants, reloaded, res.summary.node_count, res.summary.edge_count,
                               plan.pairs_per_round, plan.rounds, plan.master_seed);
  CHECK(again == res.summary);

  plan.pairs_per_round = 1;
  plan.rounds = 1;
  plan.variants = {Variant::make(2)};
  const auto one = run_experiment(plan);
  emit_csv(plan.variants, one.records, p);
  CHECK(line_count(p) == 2);
}

TEST_CASE("identical plans give byte-identical CSV") {
  const auto plan = small_plan();
  const auto a = scratch("a.csv"), b = scratch("b.csv");
  emit_csv(plan.variants, run_experiment(plan, Execution::parallel).records, a);
  emit_csv(plan.variants, run_experiment(plan, Execution::serial).records, b);
  CHECK(read_file(a) == read_file(b));
}

TEST_CASE("empty variant list gives header-only files") {
  auto plan = small_plan();
  plan.variants.clear();
  const auto res = run_experiment(plan);
  CHECK(res.records.empty());
  const auto dir = scratch("empty_out");
  write_outputs(plan, res, dir);
  CHECK(line_count(dir / "searches.csv") == 1);
  CHECK(line_count(dir / "histogram.csv") == 1);
  CHECK(nlohmann::json::parse(read_file(dir / "summary.json"))["variants"].empty());
}

TEST_CASE("CSV reader rejects damaged input") {
  const std::vector<Variant> variants{Variant::make(2)};
  const auto p = scratch("bad.csv");
  std::ofstream(p) << "round,pair_index,s,t,variant,outcome,walk_steps,route_length,refined_length,"
                      "consults,oracle_distance\n0,0,1,2,h9,found,3,3,,0,2\n";
  CHECK_THROWS_AS(load_records_csv(variants, p), Error);
  std::ofstream(p) << "round,pair_index,s,t,variant,outcome,walk_steps,route_length,refined_length,"
                      "consults,oracle_distance\n0,0,1,2,h2,found,x,3,,0,2\n";
  CHECK_THROWS_AS(load_records_csv(variants, p), Error);
}

TEST_CASE("histogram binning") {
  const std::vector<Variant> variants{Variant::make(2), Variant::make(3)};
  std::vector<SearchRecord> records;
  for (std::size_t steps : {0, 0, 5, 12}) {
    SearchRecord r;
    r.walk_steps = steps;
    records.push_back(r);
  }
  for (int i = 0; i < 3; ++i) {
    SearchRecord r;
    r.variant = 1;
    r.walk_steps = 7;
    records.push_back(r);
  }
  SearchRecord failed;
  failed.variant = 1;
  failed.walk_steps = 99;
  failed.outcome = SearchOutcome::step_cap_exhausted;
  records.push_back(failed);

  const auto p = scratch("hist.csv");
  emit_histogram(variants, records, 10, p);
  CHECK(read_file(p) == "variant,bin_lower_bound,count\nh2,0,3\nh2,10,1\nh3,0,3\n");
  CHECK_THROWS_AS(emit_histogram(variants, records, 0, p), Error);
}

TEST_CASE("summary JSON uses the summary field names") {
  const auto res = run_experiment(small_plan());
  const auto doc = nlohmann::json::parse(summary_to_json(res.summary));
  CHECK(doc["rounds"] == 3);
  const auto& v = doc["variants"][1];
  for (const char* key : {"variant", "mean_walk_steps", "mean_route_length", "mean_refined_length",
                          "success_rate", "fraction_under_10", "max_refined_length",
                          "length_histogram", "oracle_mean_shortest_path", "mean_consults"}) {
    CHECK_MESSAGE(v.contains(key), key);
  }
  CHECK(v["variant"] == "h2+refine");
  CHECK(doc["variants"][0]["mean_refined_length"].is_null());
}
