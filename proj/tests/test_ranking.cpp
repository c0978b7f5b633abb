#include <doctest.h>

#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/ranking.hpp"

using namespace hierarchyrank;

TEST_CASE("ranking inverse maps") {
  const auto r = Ranking::from_order({2, 0, 1});
  CHECK(r.rank_of(2) == 1);
  CHECK(r.rank_of(0) == 2);
  CHECK(r.rank_of(1) == 3);
  CHECK(r.node_at(1) == 2);
  CHECK(r == Ranking::from_ranks({2, 3, 1}));
}

TEST_CASE("swap and reverse keep the bijection") {
  auto r = Ranking::identity(5);
  r.swap_nodes(0, 4);
  CHECK(r.rank_of(0) == 5);
  CHECK(r.rank_of(4) == 1);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(r.rank_of(r.node_at(k)) == k);

  const auto rev = r.reversed();
  for (NodeId i = 0; i < 5; ++i) CHECK(rev.rank_of(i) == 6 - r.rank_of(i));
}

TEST_CASE("invalid permutations are rejected") {
  CHECK_THROWS_AS(Ranking::from_order({0, 0, 1}), ContractError);
  CHECK_THROWS_AS(Ranking::from_order({0, 3}), ContractError);
  CHECK_THROWS_AS(Ranking::from_ranks({1, 1}), ContractError);
  CHECK_THROWS_AS(Ranking::from_ranks({0, 1}), ContractError);
}
