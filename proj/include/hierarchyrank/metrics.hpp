#pragma once

// Inequality of faculty production and mobility relative to a prestige
// ranking.

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hierarchyrank/network.hpp"
#include "hierarchyrank/ranking.hpp"

namespace hierarchyrank {

/// Population Gini coefficient, sum_ij |x_i - x_j| / (2 n^2 mean).
/// Throws ContractError on empty or negative input and UndefinedGiniError
/// when every value is zero.
double gini(std::span<const double> production);

struct LorenzPoint {
  double population = 0.0;  ///< cumulative fraction of institutions
  double production = 0.0;  ///< cumulative fraction of faculty produced
};

struct LorenzCurve {
  /// From (0, 0) to (1, 1), institutions in ascending order of production.
  std::vector<LorenzPoint> points;
};

LorenzCurve lorenz(std::span<const double> production);

/// Trapezoidal area under the curve. For any input, gini = 1 - 2 * area.
double lorenz_area(const LorenzCurve& curve);

/// Institution names with their 1-based ranks.
class InstitutionRanking {
 public:
  /// `order[k]` holds rank k + 1. Throws ContractError on duplicates.
  static InstitutionRanking from_order(std::vector<std::string> order);
  static InstitutionRanking from_ranking(const NodeRegistry& registry, const Ranking& r);

  std::size_t size() const noexcept { return order_.size(); }
  const std::vector<std::string>& order() const noexcept { return order_; }
  std::optional<std::size_t> rank_of(const std::string& name) const;

 private:
  std::vector<std::string> order_;
  std::unordered_map<std::string, std::size_t> rank_;
};

struct RankChange {
  std::string person_id;
  std::size_t phd_rank = 0;
  std::size_t hire_rank = 0;
  double value = 0.0;  ///< (hire_rank - phd_rank) / N
};

/// Relative rank changes of a set of placements. Negative values are moves
/// up the hierarchy.
struct RankChangeSample {
  std::vector<RankChange> entries;
  std::vector<double> values;
  std::size_t n_total = 0;
  std::size_t n_up = 0;       ///< strictly negative values
  std::size_t n_dropped = 0;  ///< records naming an unranked institution
};

/// (rank(hire) - rank(phd)) / N per record. Records with an institution
/// missing from `ranking` are dropped and counted. Throws ContractError when
/// no record survives.
RankChangeSample relative_rank_change(const std::vector<HiringRecord>& records,
                                      const InstitutionRanking& ranking);

/// n_up / n_total.
double upward_fraction(const RankChangeSample& sample);
double mean_rank_change(const RankChangeSample& sample);

struct KsResult {
  double statistic = 0.0;  ///< D
  double p_value = 1.0;
};

/// Two-sided two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// at effective size n_a n_b / (n_a + n_b).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(lambda) = 2 sum_k (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

}  // namespace hierarchyrank
