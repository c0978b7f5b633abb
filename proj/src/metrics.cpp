#include "hierarchyrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hierarchyrank/errors.hpp"

namespace hierarchyrank {

namespace {

std::vector<double> sorted_production(std::span<const double> production) {
  if (production.empty()) throw ContractError("production sequence is empty");
  std::vector<double> x(production.begin(), production.end());
  for (double v : x) {
    if (!(v >= 0.0)) throw ContractError("production values must be non-negative");
  }
  std::sort(x.begin(), x.end());
  if (x.back() == 0.0) throw UndefinedGiniError("Gini is undefined for all-zero production");
  return x;
}

}  // namespace

double gini(std::span<const double> production) {
  const auto x = sorted_production(production);
  const double n = static_cast<double>(x.size());
  // Sorted form of the pairwise sum: sum_i (2i - n - 1) x_(i), i = 1..n.
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * x[i];
    total += x[i];
  }
  return weighted / (n * total);
}

LorenzCurve lorenz(std::span<const double> production) {
  const auto x = sorted_production(production);
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  const double n = static_cast<double>(x.size());
  LorenzCurve curve;
  curve.points.reserve(x.size() + 1);
  curve.points.push_back({0.0, 0.0});
  double running = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    running += x[k];
    curve.points.push_back({static_cast<double>(k + 1) / n, running / total});
  }
  curve.points.back() = {1.0, 1.0};
  return curve;
}

double lorenz_area(const LorenzCurve& curve) {
  double area = 0.0;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const auto& p = curve.points[k - 1];
    const auto& q = curve.points[k];
    area += (q.population - p.population) * (p.production + q.production) / 2.0;
  }
  return area;
}

InstitutionRanking InstitutionRanking::from_order(std::vector<std::string> order) {
  InstitutionRanking r;
  r.rank_.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!r.rank_.emplace(order[k], k + 1).second) {
      throw ContractError("institution '" + order[k] + "' ranked twice");
    }
  }
  r.order_ = std::move(order);
  return r;
}

InstitutionRanking InstitutionRanking::from_ranking(const NodeRegistry& registry,
                                                    const Ranking& ranking) {
  if (ranking.size() != registry.size()) {
    throw ContractError("ranking and registry sizes differ");
  }
  std::vector<std::string> order;
  order.reserve(ranking.size());
  for (NodeId node : ranking.order()) order.push_back(registry.name(node));
  return from_order(std::move(order));
}

std::optional<std::size_t> InstitutionRanking::rank_of(const std::string& name) const {
  auto it = rank_.find(name);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

RankChangeSample relative_rank_change(const std::vector<HiringRecord>& records,
                                      const InstitutionRanking& ranking) {
  RankChangeSample sample;
  const double n = static_cast<double>(ranking.size());
  for (const auto& rec : records) {
    const auto phd = ranking.rank_of(rec.phd_institution);
    const auto hire = ranking.rank_of(rec.hire_institution);
    if (!phd || !hire) {
      ++sample.n_dropped;
      continue;
    }
    const double value =
        (static_cast<double>(*hire) - static_cast<double>(*phd)) / n;
    sample.entries.push_back({rec.person_id, *phd, *hire, value});
    sample.values.push_back(value);
    if (*hire < *phd) ++sample.n_up;
  }
  sample.n_total = sample.values.size();
  if (sample.n_total == 0) {
    throw ContractError("no record refers to two ranked institutions");
  }
  return sample;
}

double upward_fraction(const RankChangeSample& sample) {
  if (sample.n_total == 0) throw ContractError("rank-change sample is empty");
  return static_cast<double>(sample.n_up) / static_cast<double>(sample.n_total);
}

double mean_rank_change(const RankChangeSample& sample) {
  if (sample.values.empty()) throw ContractError("rank-change sample is empty");
  return std::accumulate(sample.values.begin(), sample.values.end(), 0.0) /
         static_cast<double>(sample.values.size());
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // The alternating series converges slowly for small lambda; use the
    // equivalent theta-function form of the CDF there.
    const double pi = std::numbers::pi;
    const double c = -pi * pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(odd * odd * c);
      cdf += term;
      if (term < 1e-300) break;
    }
    cdf *= std::sqrt(2.0 * pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ContractError("KS test needs two nonempty samples");
  std::vector<double> xs(a.begin(), a.end());
  std::vector<double> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  // |i/na - j/nb| = |i nb - j na| / (na nb), kept in integers until the end.
  const auto na = static_cast<long long>(xs.size());
  const auto nb = static_cast<long long>(ys.size());
  long long i = 0;
  long long j = 0;
  long long widest = 0;
  while (i < na && j < nb) {
    const double t = std::min(xs[i], ys[j]);
    while (i < na && xs[i] <= t) ++i;
    while (j < nb && ys[j] <= t) ++j;
    widest = std::max(widest, std::llabs(i * nb - j * na));
  }
  KsResult out;
  out.statistic = static_cast<double>(widest) / static_cast<double>(na * nb);
  const double effective = static_cast<double>(na) * static_cast<double>(nb) /
                           static_cast<double>(na + nb);
  out.p_value = kolmogorov_survival(std::sqrt(effective) * out.statistic);
  return out;
}

}  // namespace hierarchyrank
