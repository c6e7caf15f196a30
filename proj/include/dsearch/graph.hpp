#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dsearch {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Hop distance from a BFS source; std::nullopt marks an unreachable node.
using Distance = std::optional<std::uint32_t>;

/// Immutable undirected simple graph in compressed sparse row form.
/// Neighbor lists are sorted ascending, symmetric, and free of self-loops
/// and duplicates. Safe to share read-only across threads.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on nodes [0, node_count). Self-loops and repeated edges
  /// (in either orientation) are dropped. Throws Error{invalid_node} naming
  /// the first edge with an endpoint out of range.
  static Graph from_edges(std::span<const Edge> edges, std::size_t node_count);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  /// O(log degree) adjacency test.
  bool has_edge(NodeId u, NodeId v) const;

  bool contains(NodeId u) const noexcept { return u < node_count(); }

  /// Every edge once as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

/// Free-function spelling of Graph::from_edges.
Graph build_graph(std::span<const Edge> edges, std::size_t node_count);

/// Ordered node path; length is the hop count.
struct Route {
  std::vector<NodeId> nodes;

  std::size_t length() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  bool operator==(const Route&) const = default;
};

/// Throws Error{precondition} unless the route is non-empty, simple, and every
/// consecutive pair is adjacent in g.
void validate_route(const Graph& g, const Route& route);

std::vector<Distance> bfs_distances(const Graph& g, NodeId source);

/// Shortest path by BFS. Among equal-length predecessors the smallest node ID
/// is taken, so the result is a deterministic function of (g, source, target).
std::optional<Route> shortest_path(const Graph& g, NodeId source, NodeId target);

/// Nodes of each connected component; components ordered by their smallest node.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

bool is_connected(const Graph& g);

struct DegreeStats {
  std::map<std::size_t, std::size_t> histogram;  // degree -> node count
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  std::optional<double> fitted_exponent;         // alpha in P(k) ~ k^-alpha
};

/// Degree histogram plus a least-squares power-law fit of log(count) against
/// log(degree) over degrees >= 1 with at least `min_bin_count` nodes. The
/// exponent is absent when the graph has fewer than 3 distinct degrees or
/// fewer than 3 bins qualify. Requires N >= 2.
DegreeStats degree_stats(const Graph& g, std::size_t min_bin_count = 5);

}  // namespace dsearch

#include "dsearch/execution.hpp"

namespace dsearch {

struct PathLengthSummary {
  std::uint64_t reachable_pairs = 0;  // ordered (source, v) pairs with v != source reachable
  std::uint64_t total_hops = 0;
  double mean() const noexcept {
    return reachable_pairs == 0 ? 0.0 : static_cast<double>(total_hops) / reachable_pairs;
  }
};

/// Sums BFS distances from each listed source to every node it reaches.
/// Passing every node gives the exact all-pairs mean shortest path.
PathLengthSummary shortest_path_totals(const Graph& g, std::span<const NodeId> sources,
                                       Execution exec = Execution::parallel);

}  // namespace dsearch
