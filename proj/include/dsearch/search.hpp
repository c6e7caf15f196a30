#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dsearch/graph.hpp"

namespace dsearch {

struct SearchConfig {
  int visibility_h = 2;                 // target detected iff within this many hops
  std::size_t consult_budget = 0;       // neighbors consulted per node; requires h == 2
  std::optional<std::size_t> step_cap;  // forward + deflection limit; defaults to N
  std::uint64_t rng_seed = 0;           // tie-break stream for equal-degree forwards
};

/// Throws Error{invalid_config} for h outside {1,2,3}, a consult budget with
/// h != 2, or a zero step cap.
void validate(const SearchConfig& cfg);

enum class SearchOutcome { found, step_cap_exhausted, stuck_at_source };

std::string_view to_string(SearchOutcome outcome) noexcept;
std::optional<SearchOutcome> parse_outcome(std::string_view text) noexcept;

struct WalkTrace {
  std::vector<NodeId> occupied_sequence;  // starts at the source; one entry per move
  std::size_t forwards = 0;
  std::size_t deflections = 0;
  std::size_t consults = 0;
  SearchOutcome outcome = SearchOutcome::step_cap_exhausted;
  std::optional<NodeId> found_via;  // node whose neighborhood held the target

  std::size_t walk_steps() const noexcept { return forwards + deflections; }
  bool operator==(const WalkTrace&) const = default;
};

/// True iff dist(center, target) <= h, by BFS from center cut off at depth h.
bool khop_contains(const Graph& g, NodeId center, NodeId target, int h);

/// Degree-based decentralized search.
///
/// At every occupied node u: if the target is within h hops of u the search
/// succeeds. Otherwise, with a consult budget, u asks up to that many of its
/// highest-degree neighbors (ties by smaller ID) that no node has consulted
/// or occupied yet whether the target lies within their two-hop reach; a
/// positive reply ends the search. Failing that, and unless the step cap is
/// reached, the request is forwarded to the highest-degree never-occupied
/// neighbor (ties broken uniformly from the seeded stream) or deflected
/// back to the node u was first entered from.
///
/// The arrival check precedes the step-cap check. Consultations do not count
/// as steps.
WalkTrace run_search(const Graph& g, NodeId source, NodeId target, const SearchConfig& cfg);

/// Turns a successful trace into a simple source-to-target path: the
/// occupied sequence, then the consulted node when the target was found by
/// consultation, then the oracle shortest path from there to the target,
/// loop-erased. Throws Error{precondition} for an unsuccessful trace.
Route materialize_route(const Graph& g, const WalkTrace& trace, NodeId target);

/// The same concatenation without loop erasure; may revisit nodes.
std::vector<NodeId> raw_route_nodes(const Graph& g, const WalkTrace& trace, NodeId target);

/// Truncates back to the first occurrence on every revisit, and stops at the
/// first occurrence of `stop_at` when given.
std::vector<NodeId> loop_erase(const std::vector<NodeId>& nodes,
                               std::optional<NodeId> stop_at = std::nullopt);

}  // namespace dsearch
