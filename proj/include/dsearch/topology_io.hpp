#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsearch/graph.hpp"

namespace dsearch {

/// Bijection between the labels found in a topology file and dense node IDs.
struct IdMap {
  std::unordered_map<std::string, NodeId> external_to_internal;
  std::vector<std::string> internal_to_external;
};

struct LoadedTopology {
  Graph graph;
  IdMap ids;
};

/// Reads a whitespace-separated edge list: one "u v" pair per line, blank
/// lines and lines whose first non-blank character is '#' skipped, CRLF
/// accepted. Labels are arbitrary tokens. When every label is a non-negative
/// integer, IDs follow numeric order; otherwise they follow first appearance.
/// With take_giant_component the graph is cut down to its largest connected
/// component (ties go to the component holding the smallest label) and
/// renumbered densely in the same relative order.
LoadedTopology load_edge_list(const std::filesystem::path& path, bool take_giant_component = true);

/// Same format, parsed from an in-memory string. `source_name` appears in errors.
LoadedTopology parse_edge_list(const std::string& text, bool take_giant_component = true,
                               const std::string& source_name = "<string>");

/// Writes "u v" with u < v, one edge per line, sorted. Isolated nodes are
/// not representable in this format and are not written.
void save_edge_list(const Graph& g, const std::filesystem::path& path);

std::string format_edge_list(const Graph& g);

}  // namespace dsearch
