#include "hierarchyrank/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "hierarchyrank/errors.hpp"

namespace hierarchyrank {

Ranking Ranking::identity(std::size_t n) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  return from_order(std::move(order));
}

Ranking Ranking::from_order(std::vector<NodeId> order) {
  const auto n = order.size();
  Ranking r;
  r.rank_of_.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto node = order[k];
    if (node >= n || r.rank_of_[node] != 0) {
      throw ContractError("ranking order is not a permutation");
    }
    r.rank_of_[node] = k + 1;
  }
  r.node_at_ = std::move(order);
  return r;
}

Ranking Ranking::from_ranks(const std::vector<std::size_t>& ranks) {
  const auto n = ranks.size();
  std::vector<NodeId> order(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto rank = ranks[i];
    if (rank < 1 || rank > n || seen[rank - 1]) {
      throw ContractError("ranks are not a permutation of 1..N");
    }
    seen[rank - 1] = true;
    order[rank - 1] = static_cast<NodeId>(i);
  }
  return from_order(std::move(order));
}

void Ranking::swap_nodes(NodeId a, NodeId b) {
  std::swap(rank_of_[a], rank_of_[b]);
  node_at_[rank_of_[a] - 1] = a;
  node_at_[rank_of_[b] - 1] = b;
}

Ranking Ranking::reversed() const {
  std::vector<NodeId> order(node_at_.rbegin(), node_at_.rend());
  return from_order(std::move(order));
}

}  // namespace hierarchyrank
