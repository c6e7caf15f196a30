#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsearch/error.hpp"
#include "dsearch/graph.hpp"

namespace dsearch {

struct RefinementResult {
  Route original;
  Route refined;
  std::vector<std::size_t> pivot_indices;  // indices into original.nodes, strictly decreasing
};

/// Greedy prefix-scan shortcutting. Starting from the last node, repeatedly
/// take the first node in the list (lowest index, strictly below the current
/// pivot) adjacent to the current pivot, until the first node is reached.
///
/// `adjacent(u, v)` is the only view of the topology the scan uses. `nodes`
/// must be non-empty with consecutive entries adjacent; repeats are allowed
/// and never appear in the output, since a pivot is always a node's first
/// occurrence.
template <typename Adjacent>
RefinementResult refine_nodes(std::span<const NodeId> nodes, Adjacent&& adjacent) {
  if (nodes.empty()) {
    throw Error(ErrorKind::precondition, "refine: empty node list");
  }
  RefinementResult result;
  result.original.nodes.assign(nodes.begin(), nodes.end());

  std::size_t current = nodes.size() - 1;
  while (current > 0) {
    std::size_t pick = current;
    for (std::size_t i = 0; i < current; ++i) {
      if (adjacent(nodes[i], nodes[current])) {
        pick = i;
        break;
      }
    }
    if (pick == current) {
      throw Error(ErrorKind::precondition,
                  "refine: no earlier node adjacent to index " + std::to_string(current));
    }
    result.pivot_indices.push_back(pick);
    current = pick;
  }

  result.refined.nodes.reserve(result.pivot_indices.size() + 1);
  for (auto it = result.pivot_indices.rbegin(); it != result.pivot_indices.rend(); ++it) {
    result.refined.nodes.push_back(nodes[*it]);
  }
  result.refined.nodes.push_back(nodes.back());
  return result;
}

/// Refines a validated simple route (see validate_route).
RefinementResult refine_route(const Graph& g, const Route& route);

/// Refines a raw traversal list that may revisit nodes. Consecutive entries
/// must still be adjacent.
RefinementResult refine_walk(const Graph& g, std::span<const NodeId> nodes);

}  // namespace dsearch
