#include "dsearch/refine.hpp"

#include <string>

namespace dsearch {

RefinementResult refine_route(const Graph& g, const Route& route) {
  validate_route(g, route);
  return refine_nodes(route.nodes, [&g](NodeId u, NodeId v) { return g.has_edge(u, v); });
}

RefinementResult refine_walk(const Graph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) {
    throw Error(ErrorKind::precondition, "refine: empty node list");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!g.contains(nodes[i])) {
      throw Error(ErrorKind::invalid_node, "refine: node " + std::to_string(nodes[i]) + " out of range");
    }
    if (i > 0 && !g.has_edge(nodes[i - 1], nodes[i])) {
      throw Error(ErrorKind::precondition, "refine: hop " + std::to_string(nodes[i - 1]) + " -> " +
                                               std::to_string(nodes[i]) + " is not an edge");
    }
  }
  return refine_nodes(nodes, [&g](NodeId u, NodeId v) { return g.has_edge(u, v); });
}

}  // namespace dsearch
