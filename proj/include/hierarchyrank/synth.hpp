#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hierarchyrank/network.hpp"
#include "hierarchyrank/ranking.hpp"

namespace hierarchyrank {

struct PlantedConfig {
  std::size_t n_nodes = 50;
  std::size_t n_edges = 2000;
  double p_down = 0.9;
  /// Producer i is drawn with probability proportional to rank(i)^-skew.
  double producer_skew = 1.0;
  std::uint64_t seed = 0;

  /// Throws ContractError unless n_nodes >= 2, n_edges >= 1,
  /// p_down in [0.5, 1] and producer_skew >= 0.
  void validate() const;
};

struct Placement {
  NodeId phd = 0;
  NodeId hire = 0;
};

struct PlantedNetwork {
  HiringNetwork network;
  /// Identity: node k (named inst_000{k+1}) has true rank k + 1.
  Ranking truth;
  /// Unit edges in generation order.
  std::vector<Placement> placements;
};

/// Name of the node with the given 1-based true rank, zero padded so that
/// lexicographic order equals rank order.
std::string planted_name(std::size_t rank, std::size_t n_nodes);

/// Each unit edge draws a producer by skewed rank, then with probability
/// p_down an employer uniformly among lower-ranked nodes, otherwise among
/// higher-ranked nodes. The top and bottom nodes fall back to the side that
/// exists. No self-loops are generated.
PlantedNetwork generate_planted(const PlantedConfig& cfg);

}  // namespace hierarchyrank
