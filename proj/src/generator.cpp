#include "dsearch/generator.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dsearch/error.hpp"

namespace dsearch {

void validate(const BaConfig& cfg) {
  if (cfg.m_attach < 1 || cfg.m_attach > cfg.seed_size || cfg.seed_size >= cfg.n) {
    throw Error(ErrorKind::invalid_config,
                "BA config requires 1 <= m_attach <= seed_size < n (got m_attach=" +
                    std::to_string(cfg.m_attach) + ", seed_size=" + std::to_string(cfg.seed_size) +
                    ", n=" + std::to_string(cfg.n) + ")");
  }
  if (cfg.seed_size < 2) {
    throw Error(ErrorKind::invalid_config, "BA seed clique needs at least 2 nodes");
  }
}

Graph generate_ba(const BaConfig& cfg) {
  validate(cfg);
  std::vector<Edge> edges;
  edges.reserve(cfg.seed_size * (cfg.seed_size - 1) / 2 + cfg.m_attach * (cfg.n - cfg.seed_size));

  // Urn of edge endpoints: a node appears once per incident edge, so a
  // uniform draw from it is a degree-proportional draw.
  std::vector<NodeId> urn;
  urn.reserve(2 * edges.capacity());
  for (NodeId u = 0; u < cfg.seed_size; ++u) {
    for (NodeId v = u + 1; v < cfg.seed_size; ++v) {
      edges.emplace_back(u, v);
      urn.push_back(u);
      urn.push_back(v);
    }
  }

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<NodeId> targets;
  targets.reserve(cfg.m_attach);
  for (auto fresh = static_cast<NodeId>(cfg.seed_size); fresh < cfg.n; ++fresh) {
    targets.clear();
    // Targets are drawn against the urn as it stood before this node arrived.
    std::uniform_int_distribution<std::size_t> pick(0, urn.size() - 1);
    while (targets.size() < cfg.m_attach) {
      const NodeId candidate = urn[pick(rng)];
      if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) {
        targets.push_back(candidate);
      }
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, fresh);
      urn.push_back(t);
      urn.push_back(fresh);
    }
  }
  return Graph::from_edges(edges, cfg.n);
}

}  // namespace dsearch
