#include "dsearch/search.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>

#include "dsearch/error.hpp"

namespace dsearch {

namespace {

void require_node(const Graph& g, NodeId u, const char* what) {
  if (!g.contains(u)) {
    throw Error(ErrorKind::invalid_node, std::string(what) + " " + std::to_string(u) +
                                             " out of range [0, " +
                                             std::to_string(g.node_count()) + ")");
  }
}

// Hop distances to the target, truncated at `radius`. dist(u, t) <= h is
// then a lookup, which matches khop_contains(u, t, h) for every h <= radius.
class TargetBall {
 public:
  TargetBall(const Graph& g, NodeId target, int radius)
      : dist_(g.node_count(), kOutside) {
    std::vector<NodeId> frontier{target}, next;
    dist_[target] = 0;
    for (int depth = 1; depth <= radius && !frontier.empty(); ++depth) {
      next.clear();
      for (NodeId u : frontier) {
        for (NodeId v : g.neighbors(u)) {
          if (dist_[v] == kOutside) {
            dist_[v] = static_cast<std::uint8_t>(depth);
            next.push_back(v);
          }
        }
      }
      frontier.swap(next);
    }
  }

  bool within(NodeId u, int h) const { return dist_[u] <= h; }

 private:
  static constexpr std::uint8_t kOutside = 0xff;
  std::vector<std::uint8_t> dist_;
};

}  // namespace

void validate(const SearchConfig& cfg) {
  if (cfg.visibility_h < 1 || cfg.visibility_h > 3) {
    throw Error(ErrorKind::invalid_config,
                "visibility_h must be 1, 2 or 3 (got " + std::to_string(cfg.visibility_h) + ")");
  }
  if (cfg.consult_budget > 0 && cfg.visibility_h != 2) {
    throw Error(ErrorKind::invalid_config, "consult_budget > 0 requires visibility_h = 2");
  }
  if (cfg.step_cap && *cfg.step_cap == 0) {
    throw Error(ErrorKind::invalid_config, "step_cap must be positive");
  }
}

std::string_view to_string(SearchOutcome outcome) noexcept {
  switch (outcome) {
    case SearchOutcome::found: return "found";
    case SearchOutcome::step_cap_exhausted: return "step_cap_exhausted";
    case SearchOutcome::stuck_at_source: return "stuck_at_source";
  }
  return "unknown";
}

std::optional<SearchOutcome> parse_outcome(std::string_view text) noexcept {
  for (auto o : {SearchOutcome::found, SearchOutcome::step_cap_exhausted,
                 SearchOutcome::stuck_at_source}) {
    if (to_string(o) == text) return o;
  }
  return std::nullopt;
}

bool khop_contains(const Graph& g, NodeId center, NodeId target, int h) {
  require_node(g, center, "center");
  require_node(g, target, "target");
  if (h < 1) {
    throw Error(ErrorKind::invalid_config, "khop_contains needs h >= 1");
  }
  if (center == target) return true;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> frontier{center}, next;
  seen[center] = 1;
  for (int depth = 1; depth <= h && !frontier.empty(); ++depth) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId v : g.neighbors(u)) {
        if (v == target) return true;
        if (!seen[v]) {
          seen[v] = 1;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return false;
}

WalkTrace run_search(const Graph& g, NodeId source, NodeId target, const SearchConfig& cfg) {
  validate(cfg);
  require_node(g, source, "source");
  require_node(g, target, "target");

  const int h = cfg.visibility_h;
  const std::size_t cap = cfg.step_cap.value_or(g.node_count());
  const TargetBall ball(g, target, cfg.consult_budget > 0 ? std::max(h, 2) : h);
  std::mt19937_64 rng(cfg.rng_seed);

  WalkTrace trace;
  std::vector<char> occupied(g.node_count(), 0);
  std::vector<char> consulted(g.node_count(), 0);  // occupied nodes included
  std::vector<NodeId> entered_from;                // deflection stack
  std::vector<NodeId> ties;
  std::vector<NodeId> candidates;

  NodeId current = source;
  occupied[source] = consulted[source] = 1;
  trace.occupied_sequence.push_back(source);

  for (;;) {
    if (ball.within(current, h)) {
      trace.outcome = SearchOutcome::found;
      trace.found_via = current;
      return trace;
    }

    if (cfg.consult_budget > 0) {
      candidates.clear();
      for (NodeId v : g.neighbors(current)) {
        if (!consulted[v]) candidates.push_back(v);
      }
      const std::size_t asked = std::min(cfg.consult_budget, candidates.size());
      std::partial_sort(candidates.begin(), candidates.begin() + asked, candidates.end(),
                        [&g](NodeId a, NodeId b) {
                          const auto da = g.degree(a), db = g.degree(b);
                          return da != db ? da > db : a < b;
                        });
      std::optional<NodeId> positive;
      for (std::size_t i = 0; i < asked; ++i) {
        const NodeId w = candidates[i];
        consulted[w] = 1;
        if (!positive && ball.within(w, 2)) positive = w;
      }
      trace.consults += asked;
      if (positive) {
        trace.outcome = SearchOutcome::found;
        trace.found_via = *positive;
        return trace;
      }
    }

    if (trace.walk_steps() >= cap) {
      trace.outcome = SearchOutcome::step_cap_exhausted;
      return trace;
    }

    ties.clear();
    std::size_t best_degree = 0;
    for (NodeId v : g.neighbors(current)) {
      if (occupied[v]) continue;
      const std::size_t d = g.degree(v);
      if (ties.empty() || d > best_degree) {
        ties.assign(1, v);
        best_degree = d;
      } else if (d == best_degree) {
        ties.push_back(v);
      }
    }

    if (!ties.empty()) {
      NodeId next = ties.front();
      if (ties.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
        next = ties[pick(rng)];
      }
      entered_from.push_back(current);
      current = next;
      occupied[current] = consulted[current] = 1;
      ++trace.forwards;
    } else if (!entered_from.empty()) {
      current = entered_from.back();
      entered_from.pop_back();
      ++trace.deflections;
    } else {
      trace.outcome = SearchOutcome::stuck_at_source;
      return trace;
    }
    trace.occupied_sequence.push_back(current);
  }
}

std::vector<NodeId> raw_route_nodes(const Graph& g, const WalkTrace& trace, NodeId target) {
  if (trace.outcome != SearchOutcome::found || !trace.found_via ||
      trace.occupied_sequence.empty()) {
    throw Error(ErrorKind::precondition,
                std::string("cannot materialize a route from outcome ") +
                    std::string(to_string(trace.outcome)));
  }
  require_node(g, target, "target");
  const NodeId via = *trace.found_via;
  std::vector<NodeId> nodes = trace.occupied_sequence;
  if (nodes.back() != via) {
    if (!g.has_edge(nodes.back(), via)) {
      throw Error(ErrorKind::precondition, "found_via is neither the last occupied node nor adjacent to it");
    }
    nodes.push_back(via);
  }
  auto tail = shortest_path(g, via, target);
  if (!tail) {
    throw Error(ErrorKind::precondition, "target unreachable from found_via");
  }
  nodes.insert(nodes.end(), tail->nodes.begin() + 1, tail->nodes.end());
  return nodes;
}

std::vector<NodeId> loop_erase(const std::vector<NodeId>& nodes, std::optional<NodeId> stop_at) {
  std::vector<NodeId> out;
  std::unordered_map<NodeId, std::size_t> position;
  for (NodeId u : nodes) {
    if (auto it = position.find(u); it != position.end()) {
      for (std::size_t i = it->second + 1; i < out.size(); ++i) position.erase(out[i]);
      out.resize(it->second + 1);
    } else {
      position.emplace(u, out.size());
      out.push_back(u);
    }
    if (stop_at && u == *stop_at) break;
  }
  return out;
}

Route materialize_route(const Graph& g, const WalkTrace& trace, NodeId target) {
  return Route{loop_erase(raw_route_nodes(g, trace, target), target)};
}

}  // namespace dsearch
