#include "dsearch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "dsearch/error.hpp"

namespace dsearch {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_node: return "invalid_node";
    case ErrorKind::invalid_config: return "invalid_config";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    case ErrorKind::precondition: return "precondition";
  }
  return "unknown";
}

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

void require_node(const Graph& g, NodeId u, const char* what) {
  if (!g.contains(u)) {
    throw Error(ErrorKind::invalid_node, std::string(what) + " " + std::to_string(u) +
                                             " out of range [0, " +
                                             std::to_string(g.node_count()) + ")");
  }
}

// Level-synchronous BFS into a caller-owned buffer; kUnreached marks misses.
void bfs_levels(const Graph& g, NodeId source, std::vector<std::uint32_t>& dist,
                std::vector<NodeId>& queue) {
  dist.assign(g.node_count(), kUnreached);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const std::uint32_t next = dist[u] + 1;
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = next;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace

Graph Graph::from_edges(std::span<const Edge> edges, std::size_t node_count) {
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw Error(ErrorKind::invalid_config, "node count exceeds NodeId range");
  }
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw Error(ErrorKind::invalid_node, "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                               ") has an endpoint outside [0, " +
                                               std::to_string(node_count) + ")");
    }
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& e : directed) ++g.offsets_[e.first + 1];
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.reserve(directed.size());
  for (const auto& e : directed) g.neighbors_.push_back(e.second);
  return g;
}

Graph build_graph(std::span<const Edge> edges, std::size_t node_count) {
  return Graph::from_edges(edges, node_count);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void validate_route(const Graph& g, const Route& route) {
  if (route.nodes.empty()) {
    throw Error(ErrorKind::precondition, "route is empty");
  }
  std::vector<char> seen(g.node_count(), 0);
  for (std::size_t i = 0; i < route.nodes.size(); ++i) {
    const NodeId u = route.nodes[i];
    require_node(g, u, "route node");
    if (seen[u]) {
      throw Error(ErrorKind::precondition,
                  "route revisits node " + std::to_string(u) + " at index " + std::to_string(i));
    }
    seen[u] = 1;
    if (i > 0 && !g.has_edge(route.nodes[i - 1], u)) {
      throw Error(ErrorKind::precondition, "route hop " + std::to_string(route.nodes[i - 1]) +
                                               " -> " + std::to_string(u) + " is not an edge");
    }
  }
}

std::vector<Distance> bfs_distances(const Graph& g, NodeId source) {
  require_node(g, source, "source");
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> queue;
  bfs_levels(g, source, dist, queue);
  std::vector<Distance> out(dist.size());
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreached) out[v] = dist[v];
  }
  return out;
}

std::optional<Route> shortest_path(const Graph& g, NodeId source, NodeId target) {
  require_node(g, source, "source");
  require_node(g, target, "target");
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> queue;
  bfs_levels(g, source, dist, queue);
  if (dist[target] == kUnreached) return std::nullopt;

  Route route;
  route.nodes.resize(dist[target] + 1);
  NodeId v = target;
  for (std::size_t i = route.nodes.size(); i-- > 0;) {
    route.nodes[i] = v;
    if (i == 0) break;
    // neighbors are sorted, so the first hit is the smallest predecessor
    for (NodeId p : g.neighbors(v)) {
      if (dist[p] + 1 == dist[v]) {
        v = p;
        break;
      }
    }
  }
  return route;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<char> seen(g.node_count(), 0);
  for (NodeId root = 0; root < g.node_count(); ++root) {
    if (seen[root]) continue;
    std::vector<NodeId> comp{root};
    seen[root] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (NodeId v : g.neighbors(comp[head])) {
        if (!seen[v]) {
          seen[v] = 1;
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const Graph& g) {
  return g.node_count() > 0 && connected_components(g).size() == 1;
}

DegreeStats degree_stats(const Graph& g, std::size_t min_bin_count) {
  if (g.node_count() < 2) {
    throw Error(ErrorKind::precondition, "degree_stats needs at least 2 nodes");
  }
  DegreeStats stats;
  for (NodeId u = 0; u < g.node_count(); ++u) ++stats.histogram[g.degree(u)];
  stats.min_degree = stats.histogram.begin()->first;
  stats.max_degree = stats.histogram.rbegin()->first;
  if (stats.histogram.size() < 3) return stats;

  std::vector<double> xs, ys;
  for (const auto& [k, count] : stats.histogram) {
    if (k == 0 || count < min_bin_count) continue;
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(static_cast<double>(count)));
  }
  if (xs.size() < 3) return stats;

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0) return stats;
  stats.fitted_exponent = -(n * sxy - sx * sy) / denom;
  return stats;
}

PathLengthSummary shortest_path_totals(const Graph& g, std::span<const NodeId> sources,
                                       Execution exec) {
  for (NodeId s : sources) require_node(g, s, "source");
  const auto count = static_cast<std::int64_t>(sources.size());
  std::uint64_t pairs = 0, hops = 0;

  auto accumulate_from = [&g](NodeId s, std::vector<std::uint32_t>& dist,
                              std::vector<NodeId>& queue, std::uint64_t& p, std::uint64_t& h) {
    bfs_levels(g, s, dist, queue);
    // queue holds exactly the reached nodes, source first
    p += queue.size() - 1;
    for (NodeId v : queue) h += dist[v];
  };

  if (exec == Execution::serial) {
    std::vector<std::uint32_t> dist;
    std::vector<NodeId> queue;
    for (std::int64_t i = 0; i < count; ++i) accumulate_from(sources[i], dist, queue, pairs, hops);
  } else {
#pragma omp parallel reduction(+ : pairs, hops)
    {
      std::vector<std::uint32_t> dist;
      std::vector<NodeId> queue;
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < count; ++i) accumulate_from(sources[i], dist, queue, pairs, hops);
    }
  }
  return {pairs, hops};
}

}  // namespace dsearch
