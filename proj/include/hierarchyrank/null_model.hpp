#pragma once

// Degree-preserving randomisation, bootstrap distributions of the optimal
// hierarchy strength, and the significance test comparing the two.

#include <cstdint>
#include <vector>

#include "hierarchyrank/mvr.hpp"
#include "hierarchyrank/network.hpp"

namespace hierarchyrank {

struct RhoDistribution {
  std::vector<double> values;
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation (n - 1 denominator)
  std::size_t n = 0;

  /// Throws ContractError for fewer than two values.
  static RhoDistribution from_values(std::vector<double> values);
};

struct SignificanceReport {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  /// One-sided Welch test, alternative: empirical mean > null mean.
  double p_value_t = 1.0;
  /// (1 + #{null >= min(empirical)}) / (B_null + 1).
  double p_value_empirical = 1.0;
  double empirical_mean = 0.0;
  double null_mean = 0.0;
};

inline constexpr std::uint64_t kDefaultReplicates = 100;
inline constexpr std::uint64_t kSwapsPerUnitEdge = 20;
inline constexpr int kMaxRedraws = 100;

/// Expands the network into one unit edge per placement, attempts `n_swaps`
/// double-edge swaps (a->b, c->d) => (a->d, c->b) on uniformly drawn distinct
/// unit edges, and re-aggregates. Multi-edges and self-loops are allowed, so
/// every swap is applied. Per-node in- and out-degrees are preserved and the
/// registry is unchanged. Throws ContractError with fewer than 2 unit edges.
HiringNetwork degree_preserving_rewire(const HiringNetwork& net, std::uint64_t n_swaps,
                                       std::uint64_t seed);

/// Resamples `total_weight` unit edges with replacement, B times, and records
/// the optimal rho of each replicate. A replicate consisting only of
/// self-loops is redrawn, at most kMaxRedraws times.
RhoDistribution bootstrap_rho(const HiringNetwork& net, std::uint64_t replicates,
                              const SamplerConfig& sampler, std::uint64_t seed);

/// Optimal rho of B degree-preserving randomisations, each rewired with
/// kSwapsPerUnitEdge swaps per unit edge.
RhoDistribution null_rho_distribution(const HiringNetwork& net, std::uint64_t replicates,
                                      const SamplerConfig& sampler, std::uint64_t seed);

/// Welch's t-test and empirical p-value. Throws DegenerateTestError when both
/// samples have zero variance and equal means.
SignificanceReport significance(const RhoDistribution& empirical,
                                const RhoDistribution& null);

}  // namespace hierarchyrank
