#pragma once

// Minimum violation rankings.
//
// Under a ranking r, an edge i -> j with r(i) < r(j) points down the
// hierarchy (the graduate was hired by a less prestigious institution) and
// one with r(i) > r(j) is a violation. The objective
//
//   S(r) = sum_ij m_ij * sign(r(j) - r(i)) = W_down - W_up
//
// is maximised by a minimum violation ranking, and the hierarchy strength is
// rho = W_down / (W_down + W_up). Self-loops count towards neither side.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hierarchyrank/network.hpp"
#include "hierarchyrank/ranking.hpp"

namespace hierarchyrank {

struct EdgeBalance {
  Weight down = 0;
  Weight up = 0;
};

/// Downward and upward non-self-loop weight under `r`.
EdgeBalance edge_balance(const HiringNetwork& net, const Ranking& r);

Weight net_score(const HiringNetwork& net, const Ranking& r);

/// Throws UndefinedRhoError when every edge is a self-loop.
double rho(const HiringNetwork& net, const Ranking& r);

/// rho of a ranking whose score is `score`, without touching the edges.
double rho_from_score(const HiringNetwork& net, Weight score);

/// Change in net_score from exchanging the ranks of `a` and `b`. Only the
/// net flows of a and b towards nodes ranked between them are examined.
Weight delta_swap(const HiringNetwork& net, const Ranking& r, NodeId a, NodeId b);

struct SamplerConfig {
  std::uint64_t total_iterations = 100'000;
  std::uint64_t burn_in = 20'000;
  std::uint64_t sample_interval = 100;
  std::uint64_t restarts = 10;
  std::uint64_t seed = 0;

  /// Throws ContractError on an invalid combination.
  void validate() const;

  friend bool operator==(const SamplerConfig&, const SamplerConfig&) = default;
};

/// Starting point of every chain: descending out-degree, ties by node id.
Ranking initial_ranking(const HiringNetwork& net);

enum class ChainStart {
  OutDegree,  ///< initial_ranking(net)
  Random,     ///< uniform permutation drawn from the chain's generator
};

/// Called after every accepted move with the new ranking and its score.
using ChainObserver = std::function<void(const Ranking&, Weight)>;

struct ChainResult {
  std::vector<Ranking> samples;
  std::vector<Weight> sample_scores;
  Weight best_score = 0;
  double best_rho = 0.0;
  std::uint64_t accepted = 0;
};

/// One zero-temperature Metropolis-Hastings chain over rankings. Each
/// iteration proposes swapping the ranks of a uniformly drawn node pair and
/// accepts iff the score does not decrease. After `burn_in` iterations the
/// current ranking is recorded every `sample_interval` iterations.
ChainResult run_chain(const HiringNetwork& net, const SamplerConfig& cfg,
                      std::uint64_t chain_seed, ChainStart start = ChainStart::OutDegree,
                      const ChainObserver& observer = {});

struct Interval {
  double low = 0.0;
  double high = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct MvrResult {
  /// Pooled samples that attain best_score, in chain order.
  std::vector<Ranking> samples;
  Weight best_score = 0;
  double best_rho = 0.0;
  /// Mean rank of each node over `samples`.
  std::vector<double> prestige_score;
  /// 2.5th and 97.5th percentiles of each node's sampled ranks.
  std::vector<Interval> ci95;
  /// Ascending prestige score; ties by descending out-degree, then node id.
  Ranking consensus;
  /// Samples recorded by all chains before filtering on best_score.
  std::size_t n_recorded = 0;

  friend bool operator==(const MvrResult&, const MvrResult&) = default;
};

/// Prestige scores, intervals and consensus of a nonempty set of rankings
/// that share one score. `n_recorded` is set to samples.size().
MvrResult summarize_samples(const HiringNetwork& net, std::vector<Ranking> samples);

/// Runs `cfg.restarts` chains (chain k seeded with cfg.seed + k), pools their
/// samples, keeps those at the pooled maximum score and summarises them.
/// Chain 0 starts from the out-degree ordering, later chains from random
/// permutations, since a zero-temperature chain never leaves a ranking that
/// no single swap can improve or match. Chains run in parallel; the result
/// does not depend on scheduling.
MvrResult sample_mvr(const HiringNetwork& net, const SamplerConfig& cfg);

inline constexpr std::size_t kBruteForceMaxNodes = 10;

struct BruteForceResult {
  Weight optimal_score = 0;
  double optimal_rho = 0.0;
  /// Every optimal ranking, in lexicographic order of Ranking::order().
  std::vector<Ranking> optima;
};

/// Exhaustive search over all N! rankings. Throws SizeLimitError when
/// N > kBruteForceMaxNodes.
BruteForceResult brute_force_mvr(const HiringNetwork& net);

}  // namespace hierarchyrank
