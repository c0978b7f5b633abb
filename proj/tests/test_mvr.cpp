#include <doctest.h>

#include <random>

#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/mvr.hpp"
#include "oracles.hpp"

using namespace hierarchyrank;

namespace {

HiringNetwork star() {
  return HiringNetwork::from_named_edges({{"A", "B", 1}, {"A", "C", 1}, {"A", "D", 1}});
}

HiringNetwork three_cycle() {
  return HiringNetwork::from_named_edges({{"1", "2", 1}, {"2", "3", 1}, {"3", "1", 1}});
}

std::vector<std::size_t> ranks_of(const Ranking& r) {
  return {r.ranks().begin(), r.ranks().end()};
}

SamplerConfig quick_config(std::uint64_t seed = 1) {
  SamplerConfig cfg;
  cfg.total_iterations = 20'000;
  cfg.burn_in = 5'000;
  cfg.sample_interval = 50;
  cfg.restarts = 4;
  cfg.seed = seed;
  return cfg;
}

Ranking random_ranking(std::mt19937_64& rng, std::size_t n) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  return Ranking::from_order(order);
}

}  // namespace

TEST_CASE("net_score by hand") {
  const auto net = HiringNetwork::from_named_edges({{"1", "2", 2}, {"3", "1", 1}});
  const auto id = Ranking::identity(3);
  // 2 * sign(2 - 1) + 1 * sign(1 - 3)
  CHECK(net_score(net, id) == 1);
  CHECK(oracle::score(net, ranks_of(id)) == 1);
  CHECK(net_score(net, id.reversed()) == -1);
}

TEST_CASE("self-loops score zero and leave rho undefined") {
  const auto loops = HiringNetwork::from_named_edges({{"A", "A", 3}, {"B", "B", 1}});
  CHECK(net_score(loops, Ranking::identity(2)) == 0);
  CHECK_THROWS_AS(rho(loops, Ranking::identity(2)), UndefinedRhoError);
  CHECK_THROWS_AS(run_chain(loops, quick_config(), 0), UndefinedRhoError);
}

TEST_CASE("rho examples") {
  const auto one = HiringNetwork::from_named_edges({{"1", "2", 1}});
  CHECK(rho(one, Ranking::identity(2)) == 1.0);

  const auto mutual = HiringNetwork::from_named_edges({{"1", "2", 1}, {"2", "1", 1}});
  CHECK(rho(mutual, Ranking::identity(2)) == 0.5);
  CHECK(rho(mutual, Ranking::identity(2).reversed()) == 0.5);

  // best of the six permutations of a 3-cycle
  const auto cycle = three_cycle();
  std::vector<NodeId> order = {0, 1, 2};
  double best = 0.0;
  do {
    best = std::max(best, rho(cycle, Ranking::from_order(order)));
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(best == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("ranking size must match the network") {
  CHECK_THROWS_AS(net_score(star(), Ranking::identity(3)), ContractError);
}

TEST_CASE("delta_swap examples") {
  const auto one = HiringNetwork::from_named_edges({{"1", "2", 1}});
  const auto id = Ranking::identity(2);
  CHECK(delta_swap(one, id, 0, 1) == -2);
  CHECK(delta_swap(one, id, 1, 0) == -2);
  CHECK_THROWS_AS(delta_swap(one, id, 1, 1), ContractError);

  // isolated pair: nodes 2 and 3 only carry self-loops
  const auto isolated = HiringNetwork::from_named_edges(
      {{"a", "b", 1}, {"c", "c", 1}, {"d", "d", 2}});
  CHECK(delta_swap(isolated, Ranking::identity(4), 2, 3) == 0);
}

TEST_CASE("property: algebraic identities on random networks") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 2 + rng() % 19;
    const auto net = oracle::random_network(rng, n, 3 * n, 4, true);
    auto r = random_ranking(rng, n);
    const auto s = net_score(net, r);
    CHECK(s == oracle::score(net, ranks_of(r)));
    CHECK(net_score(net, r.reversed()) == -s);

    const auto b = edge_balance(net, r);
    CHECK(b.down + b.up == net.non_self_loop_weight());
    if (b.down + b.up > 0) {
      const double p = rho(net, r);
      CHECK(static_cast<double>(b.down + b.up) * (2.0 * p - 1.0) ==
            doctest::Approx(static_cast<double>(s)).epsilon(1e-12));
      CHECK(rho_from_score(net, s) == doctest::Approx(p).epsilon(1e-15));
    }

    for (int swap = 0; swap < 5; ++swap) {
      const auto a = static_cast<NodeId>(rng() % n);
      auto c = static_cast<NodeId>(rng() % (n - 1));
      if (c >= a) ++c;
      const auto before = net_score(net, r);
      const auto delta = delta_swap(net, r, a, c);
      r.swap_nodes(a, c);
      CHECK(delta == oracle::score(net, ranks_of(r)) - before);
    }
  }
}

TEST_CASE("initial ranking orders by out-degree then id") {
  const auto net = HiringNetwork::from_named_edges(
      {{"a", "b", 1}, {"c", "a", 2}, {"c", "b", 1}, {"b", "a", 1}});
  // out-degrees: a=1, b=1, c=3
  CHECK(initial_ranking(net) == Ranking::from_order({2, 0, 1}));
}

TEST_CASE("sampler config validation") {
  SamplerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.burn_in = 99'950;
  cfg.sample_interval = 100;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = {};
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg = {};
  cfg.burn_in = 0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
}

TEST_CASE("run_chain on a star keeps the producer on top") {
  // exhaustive: S = 3 exactly when A is ranked first
  const auto best = brute_force_mvr(star());
  CHECK(best.optimal_score == 3);
  CHECK(best.optima.size() == 6);
  for (const auto& r : best.optima) CHECK(r.rank_of(0) == 1);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto chain = run_chain(star(), quick_config(), seed);
    CHECK(chain.best_score == 3);
    CHECK(chain.best_rho == 1.0);
    for (std::size_t s = 0; s < chain.samples.size(); ++s) {
      if (chain.sample_scores[s] == chain.best_score) CHECK(chain.samples[s].rank_of(0) == 1);
    }
  }
}

TEST_CASE("run_chain on a single edge") {
  const auto net = HiringNetwork::from_named_edges({{"1", "2", 1}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto chain = run_chain(net, quick_config(), seed);
    for (auto s : chain.sample_scores) CHECK(s == 1);
    CHECK(chain.best_rho == 1.0);
  }
}

TEST_CASE("run_chain preconditions") {
  const auto one_node = HiringNetwork::from_named_edges({{"A", "A", 1}});
  CHECK_THROWS_AS(run_chain(one_node, quick_config(), 0), ContractError);
  SamplerConfig bad = quick_config();
  bad.sample_interval = 0;
  CHECK_THROWS_AS(run_chain(star(), bad, 0), ContractError);
}

TEST_CASE("property: accepted scores never decrease and match recomputation") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = 3 + rng() % 40;
    const auto net = oracle::random_network(rng, n, 4 * n, 3, true);
    Weight last = std::numeric_limits<Weight>::min();
    bool monotone = true;
    bool consistent = true;
    std::size_t checked = 0;
    const auto chain = run_chain(net, quick_config(trial), trial, ChainStart::Random, [&](const Ranking& r, Weight s) {
      monotone = monotone && s >= last;
      last = s;
      if (checked++ % 97 == 0) consistent = consistent && s == net_score(net, r);
    });
    CHECK(monotone);
    CHECK(consistent);
    for (std::size_t k = 0; k < chain.samples.size(); ++k) {
      CHECK(chain.sample_scores[k] == net_score(net, chain.samples[k]));
    }
  }
}

TEST_CASE("sample_mvr on a star") {
  SamplerConfig cfg;
  cfg.seed = 5;
  const auto result = sample_mvr(star(), cfg);
  CHECK(result.best_score == 3);
  CHECK(result.best_rho == 1.0);
  CHECK(result.prestige_score[0] == 1.0);
  // uniform over the six optima: (2 + 3 + 4) / 3
  for (NodeId i = 1; i < 4; ++i) CHECK(result.prestige_score[i] == doctest::Approx(3.0).epsilon(0.05));
  CHECK(result.consensus.node_at(1) == 0);
  CHECK(result.ci95[0] == Interval{1.0, 1.0});
  CHECK(result.ci95[1].low == 2.0);
  CHECK(result.ci95[1].high == 4.0);
}

TEST_CASE("sample_mvr on a single edge") {
  const auto net = HiringNetwork::from_named_edges({{"1", "2", 1}});
  const auto result = sample_mvr(net, quick_config());
  CHECK(result.consensus == Ranking::identity(2));
  CHECK(result.prestige_score == std::vector<double>{1.0, 2.0});
  CHECK(result.best_rho == 1.0);
  CHECK(result.best_score == 1);
}

TEST_CASE("sample_mvr is deterministic") {
  std::mt19937_64 rng(8);
  const auto net = oracle::random_network(rng, 25, 120, 3);
  const auto a = sample_mvr(net, quick_config(42));
  const auto b = sample_mvr(net, quick_config(42));
  CHECK(a == b);
}

TEST_CASE("sample_mvr summaries are consistent") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = 3 + rng() % 30;
    const auto net = oracle::random_network(rng, n, 3 * n, 3);
    const auto result = sample_mvr(net, quick_config(trial));
    REQUIRE_FALSE(result.samples.empty());
    double sum = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      sum += result.prestige_score[i];
      CHECK(result.prestige_score[i] >= 1.0);
      CHECK(result.prestige_score[i] <= static_cast<double>(n));
      CHECK(result.ci95[i].low <= result.prestige_score[i]);
      CHECK(result.ci95[i].high >= result.prestige_score[i]);
    }
    CHECK(sum / static_cast<double>(n) == doctest::Approx((n + 1) / 2.0).epsilon(1e-12));
    for (const auto& s : result.samples) CHECK(net_score(net, s) == result.best_score);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(result.prestige_score[result.consensus.node_at(k)] <=
            result.prestige_score[result.consensus.node_at(k + 1)]);
    }
    CHECK(result.best_rho >= 0.5);
  }
}

TEST_CASE("consensus ties fall back to out-degree then id") {
  // out-degrees: a=1, b=0, c=2, d=0
  const auto net = HiringNetwork::from_named_edges({{"a", "b", 1}, {"c", "d", 2}});
  // rank sums: a and c tie (1 + 3), b and d tie (2 + 4)
  const auto summary = summarize_samples(
      net, {Ranking::from_order({0, 1, 2, 3}), Ranking::from_order({2, 3, 0, 1})});
  CHECK(summary.prestige_score == std::vector<double>{2.0, 3.0, 2.0, 3.0});
  // c beats a on out-degree; b and d tie on out-degree too, so id decides
  CHECK(summary.consensus == Ranking::from_order({2, 0, 1, 3}));
  CHECK(summary.best_score == 3);
  CHECK(summary.ci95[0].low == doctest::Approx(1.05));
  CHECK(summary.ci95[0].high == doctest::Approx(2.95));
  CHECK_THROWS_AS(summarize_samples(net, {}), ContractError);
}

TEST_CASE("brute_force_mvr examples") {
  const auto cycle = brute_force_mvr(three_cycle());
  CHECK(cycle.optimal_score == 1);
  CHECK(cycle.optimal_rho == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  REQUIRE(cycle.optima.size() == 3);
  // the optima are the rotations 1>2>3, 2>3>1, 3>1>2
  CHECK(cycle.optima[0] == Ranking::from_order({0, 1, 2}));
  CHECK(cycle.optima[1] == Ranking::from_order({1, 2, 0}));
  CHECK(cycle.optima[2] == Ranking::from_order({2, 0, 1}));

  const auto one = brute_force_mvr(HiringNetwork::from_named_edges({{"1", "2", 1}}));
  CHECK(one.optimal_score == 1);
  CHECK(one.optima.size() == 1);

  const auto mutual =
      brute_force_mvr(HiringNetwork::from_named_edges({{"1", "2", 1}, {"2", "1", 1}}));
  CHECK(mutual.optimal_score == 0);
  CHECK(mutual.optima.size() == 2);
}

TEST_CASE("brute_force_mvr size limit") {
  std::vector<NamedEdge> edges;
  for (int k = 0; k < 10; ++k) edges.push_back({"n" + std::to_string(k), "n" + std::to_string(k + 1), 1});
  CHECK_THROWS_AS(brute_force_mvr(HiringNetwork::from_named_edges(edges)), SizeLimitError);
}

TEST_CASE("property: sampler reaches the exhaustive optimum on small networks") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const auto n = 4 + rng() % 4;
    const auto net = oracle::random_network(rng, n, 20, 3);
    const auto exact = oracle::best_score(net);
    CHECK(brute_force_mvr(net).optimal_score == exact);
    auto cfg = quick_config(trial);
    cfg.restarts = 20;
    CHECK(sample_mvr(net, cfg).best_score == exact);
  }
}

TEST_CASE("random restarts escape a trapped out-degree start") {
  // Search for a network whose out-degree ordering admits no non-worsening
  // swap yet is not optimal; chain 0 alone stays there, the pool does not.
  std::mt19937_64 rng(1000);
  bool found = false;
  for (int t = 0; t < 400 && !found; ++t) {
    const auto n = 4 + rng() % 4;
    const auto net = oracle::random_network(rng, n, 20, 3);
    const auto start = initial_ranking(net);
    bool trapped = true;
    for (NodeId a = 0; a < n && trapped; ++a) {
      for (NodeId b = a + 1; b < n && trapped; ++b) trapped = delta_swap(net, start, a, b) < 0;
    }
    const auto exact = oracle::best_score(net);
    if (!trapped || net_score(net, start) == exact) continue;
    found = true;
    CHECK(run_chain(net, quick_config(), 0, ChainStart::OutDegree).best_score ==
          net_score(net, start));
    SamplerConfig cfg;
    cfg.restarts = 20;
    CHECK(sample_mvr(net, cfg).best_score == exact);
  }
  CHECK(found);
}
