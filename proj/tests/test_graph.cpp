#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dsearch/error.hpp"
#include "dsearch/graph.hpp"
#include "test_support.hpp"

using namespace dsearch;
using testing::kInf;

namespace {

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> d;
  for (NodeId u = 0; u < g.node_count(); ++u) d.push_back(g.degree(u));
  return d;
}

void check_invariants(const Graph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto adj = g.neighbors(u);
    CHECK(std::is_sorted(adj.begin(), adj.end()));
    CHECK(std::adjacent_find(adj.begin(), adj.end()) == adj.end());
    for (NodeId v : adj) {
      CHECK(v != u);
      CHECK(v < g.node_count());
      CHECK(g.has_edge(v, u));
    }
    CHECK(g.degree(u) == adj.size());
  }
}

}  // namespace

TEST_CASE("build_graph drops self-loops and duplicate edges") {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 1}};
  const Graph g = build_graph(edges, 2);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(degrees(g) == std::vector<std::size_t>{1, 1});
  check_invariants(g);
}

TEST_CASE("build_graph with no edges yields isolated nodes") {
  const Graph g = build_graph({}, 3);
  CHECK(g.node_count() == 3);
  CHECK(degrees(g) == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("star graph degrees") {
  CHECK(degrees(testing::star_graph(4)) == std::vector<std::size_t>{4, 1, 1, 1, 1});
}

TEST_CASE("build_graph rejects out-of-range IDs and names the edge") {
  const std::vector<Edge> edges{{0, 1}, {2, 7}};
  try {
    build_graph(edges, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_node);
    CHECK(std::string(e.what()).find("(2, 7)") != std::string::npos);
  }
}

TEST_CASE("build_graph is insensitive to edge order and duplication") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_graph(30, 0.15, seed);
    auto edges = g.edges();
    std::vector<Edge> shuffled = edges;
    for (const auto& [u, v] : edges) shuffled.emplace_back(v, u);
    std::mt19937_64 rng(seed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(build_graph(shuffled, 30) == g);
  }
}

TEST_CASE("bfs_distances small cases") {
  const auto star = bfs_distances(testing::star_graph(4), 1);
  CHECK(star == std::vector<Distance>{1, 0, 2, 2, 2});
  const auto path = bfs_distances(testing::path_graph(4), 0);
  CHECK(path == std::vector<Distance>{0, 1, 2, 3});
}

TEST_CASE("bfs_distances marks unreachable nodes as absent") {
  const std::vector<Edge> edges{{0, 1}};
  const auto d = bfs_distances(build_graph(edges, 3), 0);
  CHECK(d[1] == Distance{1});
  CHECK_FALSE(d[2].has_value());
  CHECK_THROWS_AS(bfs_distances(build_graph(edges, 3), 3), Error);
}

TEST_CASE("bfs_distances equals Floyd-Warshall on random graphs up to 64 nodes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 63;
    const double p = 0.02 + 0.2 * (rng() % 100) / 100.0;
    const Graph g = testing::random_graph(n, p, rng());
    const auto fw = testing::all_pairs(g);
    for (NodeId s = 0; s < n; ++s) {
      const auto d = bfs_distances(g, s);
      for (NodeId v = 0; v < n; ++v) {
        if (fw[s][v] >= kInf) {
          CHECK_FALSE(d[v].has_value());
        } else {
          REQUIRE(d[v].has_value());
          CHECK(*d[v] == fw[s][v]);
        }
      }
      // adjacent nodes differ by at most one level
      for (const auto& [u, v] : g.edges()) {
        if (d[u] && d[v]) CHECK(std::max(*d[u], *d[v]) - std::min(*d[u], *d[v]) <= 1);
      }
    }
  }
}

TEST_CASE("shortest_path basics") {
  const Graph star = testing::star_graph(4);
  CHECK(shortest_path(star, 2, 2)->nodes == std::vector<NodeId>{2});
  CHECK(shortest_path(star, 2, 2)->length() == 0);
  const auto r = shortest_path(star, 1, 3);
  REQUIRE(r);
  CHECK(r->nodes == std::vector<NodeId>{1, 0, 3});

  const std::vector<Edge> edges{{0, 1}};
  CHECK_FALSE(shortest_path(build_graph(edges, 3), 0, 2).has_value());
}

TEST_CASE("shortest_path breaks ties toward the smallest predecessor") {
  // 0 reaches 5 through 1..4 equally; reconstruction from 5 picks 1.
  std::vector<Edge> edges;
  for (NodeId mid = 1; mid <= 4; ++mid) {
    edges.emplace_back(0, mid);
    edges.emplace_back(mid, 5);
  }
  CHECK(shortest_path(build_graph(edges, 6), 0, 5)->nodes == std::vector<NodeId>{0, 1, 5});
}

TEST_CASE("shortest_path routes are valid and match the brute-force length") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    const Graph g = testing::random_graph(n, 0.08, rng(), trial % 2 == 0);
    const auto fw = testing::all_pairs(g);
    for (NodeId s = 0; s < n; ++s) {
      for (NodeId t = 0; t < n; ++t) {
        const auto r = shortest_path(g, s, t);
        if (fw[s][t] >= kInf) {
          CHECK_FALSE(r.has_value());
          continue;
        }
        REQUIRE(r.has_value());
        CHECK(r->length() == fw[s][t]);
        CHECK(r->nodes.front() == s);
        CHECK(r->nodes.back() == t);
        CHECK_NOTHROW(validate_route(g, *r));
      }
    }
  }
}

TEST_CASE("validate_route rejects broken routes") {
  const Graph g = testing::path_graph(4);
  CHECK_NOTHROW(validate_route(g, Route{{0, 1, 2}}));
  CHECK_THROWS_AS(validate_route(g, Route{{}}), Error);
  CHECK_THROWS_AS(validate_route(g, Route{{0, 2}}), Error);
  CHECK_THROWS_AS(validate_route(g, Route{{0, 1, 0}}), Error);
  CHECK_THROWS_AS(validate_route(g, Route{{0, 9}}), Error);
}

TEST_CASE("connected components") {
  const std::vector<Edge> edges{{0, 1}, {2, 3}, {3, 4}};
  const auto comps = connected_components(build_graph(edges, 6));
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<NodeId>{0, 1});
  CHECK(comps[1] == std::vector<NodeId>{2, 3, 4});
  CHECK(comps[2] == std::vector<NodeId>{5});
  CHECK(is_connected(testing::cycle_graph(5)));
  CHECK_FALSE(is_connected(build_graph(edges, 6)));
}

TEST_CASE("degree_stats of a star") {
  const auto s = degree_stats(testing::star_graph(4));
  CHECK(s.histogram == std::map<std::size_t, std::size_t>{{1, 4}, {4, 1}});
  CHECK(s.min_degree == 1);
  CHECK(s.max_degree == 4);
  CHECK_FALSE(s.fitted_exponent.has_value());
}

TEST_CASE("degree_stats of K5 has no exponent") {
  const auto s = degree_stats(testing::complete_graph(5));
  CHECK(s.histogram == std::map<std::size_t, std::size_t>{{4, 5}});
  CHECK_FALSE(s.fitted_exponent.has_value());
}

TEST_CASE("degree_stats recovers an exact power law") {
  // Disjoint cliques K_{k+1}: every node has degree k, and the number of
  // nodes of degree k is roughly 2000 * k^-2.5.
  std::vector<Edge> edges;
  NodeId next = 0;
  std::map<std::size_t, std::size_t> expected;
  for (std::size_t k : {2, 3, 4, 6, 8}) {
    const double target = 2000.0 * std::pow(static_cast<double>(k), -2.5);
    const std::size_t blocks = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(target / (k + 1))));
    for (std::size_t b = 0; b < blocks; ++b) {
      for (NodeId i = 0; i <= k; ++i)
        for (NodeId j = i + 1; j <= k; ++j) edges.emplace_back(next + i, next + j);
      next += k + 1;
    }
    expected[k] = blocks * (k + 1);
  }
  const auto s = degree_stats(build_graph(edges, next));
  CHECK(s.histogram == expected);
  // independent least squares over the same points
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (const auto& [k, c] : expected) {
    if (c < 5) continue;
    const double x = std::log(double(k)), y = std::log(double(c));
    sx += x; sy += y; sxx += x * x; sxy += x * y; n += 1;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  REQUIRE(s.fitted_exponent.has_value());
  CHECK(*s.fitted_exponent == doctest::Approx(-slope).epsilon(1e-12));
  CHECK(*s.fitted_exponent == doctest::Approx(2.5).epsilon(0.15));
}

TEST_CASE("degree_stats needs two nodes") {
  CHECK_THROWS_AS(degree_stats(build_graph({}, 1)), Error);
}

TEST_CASE("shortest_path_totals: serial and parallel agree with Floyd-Warshall") {
  const Graph g = testing::random_graph(60, 0.05, 3);
  const auto fw = testing::all_pairs(g);
  std::uint64_t pairs = 0, hops = 0;
  for (NodeId s = 0; s < 60; ++s)
    for (NodeId v = 0; v < 60; ++v)
      if (v != s && fw[s][v] < kInf) {
        ++pairs;
        hops += fw[s][v];
      }
  std::vector<NodeId> all(60);
  std::iota(all.begin(), all.end(), NodeId{0});
  for (auto exec : {Execution::serial, Execution::parallel}) {
    const auto t = shortest_path_totals(g, all, exec);
    CHECK(t.reachable_pairs == pairs);
    CHECK(t.total_hops == hops);
  }
}
