#include "dsearch/topology_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dsearch/error.hpp"

namespace dsearch {

namespace {

bool is_unsigned_integer(const std::string& s) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::uint64_t as_unsigned(const std::string& s) {
  std::uint64_t value = 0;
  std::from_chars(s.data(), s.data() + s.size(), value);
  return value;
}

struct RawEdges {
  std::vector<std::string> labels;  // first-appearance order
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;          // in first-appearance IDs

  NodeId intern(const std::string& label) {
    auto [it, inserted] = index.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  }
};

RawEdges tokenize(std::istream& in, const std::string& source_name) {
  RawEdges raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw Error(ErrorKind::parse, source_name + ":" + std::to_string(line_no) +
                                        ": expected exactly two tokens, got \"" + line + "\"");
    }
    const NodeId u = raw.intern(a);
    const NodeId v = raw.intern(b);
    raw.edges.emplace_back(u, v);
  }
  return raw;
}

LoadedTopology assemble(RawEdges raw, bool take_giant_component, const std::string& source_name) {
  const std::size_t n = raw.labels.size();

  // Final order of the labels: numeric when every label is an integer.
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  const bool numeric = std::all_of(raw.labels.begin(), raw.labels.end(), is_unsigned_integer);
  if (numeric) {
    std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
      return as_unsigned(raw.labels[x]) < as_unsigned(raw.labels[y]);
    });
  }
  std::vector<NodeId> rank(n);
  for (NodeId i = 0; i < n; ++i) rank[order[i]] = i;
  for (auto& [u, v] : raw.edges) {
    u = rank[u];
    v = rank[v];
  }
  std::vector<std::string> labels(n);
  for (NodeId i = 0; i < n; ++i) labels[rank[i]] = std::move(raw.labels[i]);

  Graph g = Graph::from_edges(raw.edges, n);

  if (take_giant_component && n > 0) {
    auto comps = connected_components(g);
    // Ties go to the component holding the smallest label. In numeric mode
    // IDs follow label order, so that is the component's first node.
    auto smaller_label = [&](const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
      if (numeric) return a.front() < b.front();
      auto by_label = [&](NodeId x, NodeId y) { return labels[x] < labels[y]; };
      return labels[*std::min_element(a.begin(), a.end(), by_label)] <
             labels[*std::min_element(b.begin(), b.end(), by_label)];
    };
    const std::vector<NodeId>* best = &comps.front();
    for (const auto& comp : comps) {
      if (comp.size() > best->size() || (comp.size() == best->size() && smaller_label(comp, *best))) {
        best = &comp;
      }
    }
    if (best->size() < n) {
      std::vector<NodeId> remap(n, static_cast<NodeId>(-1));
      for (NodeId i = 0; i < best->size(); ++i) remap[(*best)[i]] = i;
      std::vector<Edge> kept;
      for (const auto& [u, v] : g.edges()) {
        if (remap[u] != static_cast<NodeId>(-1)) kept.emplace_back(remap[u], remap[v]);
      }
      std::vector<std::string> kept_labels;
      kept_labels.reserve(best->size());
      for (NodeId u : *best) kept_labels.push_back(std::move(labels[u]));
      labels = std::move(kept_labels);
      g = Graph::from_edges(kept, labels.size());
    }
  }

  if (g.edge_count() == 0) {
    throw Error(ErrorKind::parse, source_name + ": topology has no edges after filtering");
  }

  LoadedTopology out;
  out.graph = std::move(g);
  out.ids.internal_to_external = std::move(labels);
  for (NodeId i = 0; i < out.ids.internal_to_external.size(); ++i) {
    out.ids.external_to_internal.emplace(out.ids.internal_to_external[i], i);
  }
  return out;
}

}  // namespace

LoadedTopology parse_edge_list(const std::string& text, bool take_giant_component,
                               const std::string& source_name) {
  std::istringstream in(text);
  return assemble(tokenize(in, source_name), take_giant_component, source_name);
}

LoadedTopology load_edge_list(const std::filesystem::path& path, bool take_giant_component) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open topology file " + path.string());
  }
  auto raw = tokenize(in, path.string());
  if (in.bad()) {
    throw Error(ErrorKind::io, "read error in " + path.string());
  }
  return assemble(std::move(raw), take_giant_component, path.string());
}

std::string format_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  }
  out << format_edge_list(g);
  out.flush();
  if (!out) {
    throw Error(ErrorKind::io, "write failed for " + path.string());
  }
}

}  // namespace dsearch
