#pragma once

#include <cstddef>
#include <cstdint>

#include "dsearch/graph.hpp"

namespace dsearch {

struct BaConfig {
  std::size_t n = 10'000;
  std::size_t m_attach = 2;
  std::size_t seed_size = 3;  // size of the initial complete clique
  std::uint64_t rng_seed = 1;
};

/// Throws Error{invalid_config} unless 1 <= m_attach <= seed_size < n.
void validate(const BaConfig& cfg);

/// Barabasi-Albert preferential attachment. Starts from a complete clique on
/// seed_size nodes; each later node links to m_attach distinct existing nodes
/// drawn with probability proportional to their current degree. Edge count is
/// C(seed_size, 2) + m_attach * (n - seed_size). Deterministic in rng_seed,
/// and the graph for n is a prefix extension of the graph for any smaller n.
Graph generate_ba(const BaConfig& cfg);

}  // namespace dsearch
