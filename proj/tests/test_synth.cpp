#include <doctest.h>

#include <cmath>

#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/mvr.hpp"
#include "hierarchyrank/synth.hpp"

using namespace hierarchyrank;

TEST_CASE("perfect hierarchy when p_down is one") {
  for (double skew : {0.0, 1.0, 2.5}) {
    PlantedConfig cfg;
    cfg.n_nodes = 30;
    cfg.n_edges = 400;
    cfg.p_down = 1.0;
    cfg.producer_skew = skew;
    cfg.seed = 6;
    const auto planted = generate_planted(cfg);
    CHECK(rho(planted.network, planted.truth) == 1.0);
  }
}

TEST_CASE("two nodes give a single weighted edge") {
  PlantedConfig cfg;
  cfg.n_nodes = 2;
  cfg.n_edges = 25;
  cfg.p_down = 1.0;
  const auto planted = generate_planted(cfg);
  REQUIRE(planted.network.edges().size() == 1);
  CHECK(planted.network.edges()[0] == Edge{0, 1, 25});
}

TEST_CASE("names sort in rank order") {
  CHECK(planted_name(1, 50) == "inst_0001");
  CHECK(planted_name(12345, 20000) == "inst_12345");
  CHECK(planted_name(7, 20000) == "inst_00007");
  PlantedConfig cfg;
  cfg.n_nodes = 12;
  const auto planted = generate_planted(cfg);
  for (std::size_t k = 1; k <= 12; ++k) {
    CHECK(planted.network.registry().name(planted.truth.node_at(k)) == planted_name(k, 12));
  }
}

TEST_CASE("downward fraction concentrates around p_down") {
  PlantedConfig cfg;
  cfg.n_nodes = 50;
  cfg.n_edges = 2000;
  cfg.p_down = 0.9;
  cfg.producer_skew = 1.0;
  cfg.seed = 42;
  const auto planted = generate_planted(cfg);
  const auto b = edge_balance(planted.network, planted.truth);
  const double fraction = static_cast<double>(b.down) / static_cast<double>(b.down + b.up);
  CHECK(std::abs(fraction - 0.9) <= 0.03);
}

TEST_CASE("property: planted rho lower bound, no self-loops, determinism") {
  for (double p : {0.6, 0.8, 0.95}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      PlantedConfig cfg;
      cfg.n_nodes = 40;
      cfg.n_edges = 1000;
      cfg.p_down = p;
      cfg.seed = seed;
      const auto planted = generate_planted(cfg);
      CHECK(planted.network.self_loop_weight() == 0);
      CHECK(planted.network.total_weight() == 1000);
      const double e = static_cast<double>(cfg.n_edges);
      CHECK(rho(planted.network, planted.truth) >= p - 3.0 * std::sqrt(p * (1 - p) / e));
      CHECK(generate_planted(cfg).network == planted.network);
    }
  }
}

TEST_CASE("config bounds") {
  PlantedConfig cfg;
  cfg.p_down = 0.4;
  CHECK_THROWS_AS(generate_planted(cfg), ContractError);
  cfg = {};
  cfg.p_down = 1.01;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = {};
  cfg.n_nodes = 1;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = {};
  cfg.n_edges = 0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = {};
  cfg.producer_skew = -1;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
}
