#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hierarchyrank/network.hpp"

namespace hierarchyrank {

/// A permutation of nodes. Ranks are 1-based; rank 1 is the most
/// prestigious position.
class Ranking {
 public:
  Ranking() = default;

  static Ranking identity(std::size_t n);
  /// `order[k]` is the node at rank k + 1. Throws ContractError unless
  /// `order` is a permutation of 0..n-1.
  static Ranking from_order(std::vector<NodeId> order);
  /// `ranks[i]` is the 1-based rank of node i.
  static Ranking from_ranks(const std::vector<std::size_t>& ranks);

  std::size_t size() const noexcept { return node_at_.size(); }
  std::size_t rank_of(NodeId node) const { return rank_of_[node]; }
  /// Node at a 1-based rank.
  NodeId node_at(std::size_t rank) const { return node_at_[rank - 1]; }
  /// Nodes from rank 1 downwards.
  std::span<const NodeId> order() const noexcept { return node_at_; }
  std::span<const std::size_t> ranks() const noexcept { return rank_of_; }

  /// Exchanges the ranks of two nodes.
  void swap_nodes(NodeId a, NodeId b);
  Ranking reversed() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<std::size_t> rank_of_;
  std::vector<NodeId> node_at_;
};

}  // namespace hierarchyrank
