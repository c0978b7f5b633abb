#include "hierarchyrank/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/parallel.hpp"
#include "hierarchyrank/random.hpp"

namespace hierarchyrank {

namespace {

// Stream ids for derive_seed.
constexpr std::uint64_t kBootstrapStream = 1;
constexpr std::uint64_t kNullStream = 2;

struct UnitEdge {
  NodeId src;
  NodeId dst;
};

std::vector<UnitEdge> unit_edges(const HiringNetwork& net) {
  std::vector<UnitEdge> units;
  units.reserve(static_cast<std::size_t>(net.total_weight()));
  for (const Edge& e : net.edges()) {
    for (Weight k = 0; k < e.weight; ++k) units.push_back({e.src, e.dst});
  }
  return units;
}

HiringNetwork aggregate(const NodeRegistry& registry, const std::vector<UnitEdge>& units) {
  std::vector<Edge> edges;
  edges.reserve(units.size());
  for (const auto& u : units) edges.push_back({u.src, u.dst, 1});
  return HiringNetwork::from_edges(registry, std::move(edges));
}

void require_replicates(std::uint64_t replicates) {
  if (replicates < 2) {
    throw ContractError("at least 2 replicates are required, got " +
                        std::to_string(replicates));
  }
}

SamplerConfig replicate_sampler(const SamplerConfig& sampler, std::uint64_t seed) {
  SamplerConfig cfg = sampler;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

RhoDistribution RhoDistribution::from_values(std::vector<double> values) {
  if (values.size() < 2) throw ContractError("a distribution needs at least two values");
  RhoDistribution d;
  d.n = values.size();
  const double n = static_cast<double>(d.n);
  d.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - d.mean) * (v - d.mean);
  d.std = std::sqrt(ss / (n - 1.0));
  d.values = std::move(values);
  return d;
}

HiringNetwork degree_preserving_rewire(const HiringNetwork& net, std::uint64_t n_swaps,
                                       std::uint64_t seed) {
  auto units = unit_edges(net);
  if (units.size() < 2) {
    throw ContractError("rewiring needs at least 2 unit edges, network has " +
                        std::to_string(units.size()));
  }
  Engine rng(seed);
  const auto m = units.size();
  for (std::uint64_t s = 0; s < n_swaps; ++s) {
    const auto x = uniform_index(rng, m);
    auto y = uniform_index(rng, m - 1);
    if (y >= x) ++y;
    std::swap(units[x].dst, units[y].dst);
  }
  return aggregate(net.registry(), units);
}

RhoDistribution bootstrap_rho(const HiringNetwork& net, std::uint64_t replicates,
                              const SamplerConfig& sampler, std::uint64_t seed) {
  require_replicates(replicates);
  sampler.validate();
  const auto units = unit_edges(net);

  std::vector<double> values(replicates);
  parallel_for(replicates, [&](std::size_t r) {
    Engine rng(derive_seed(seed, kBootstrapStream, r));
    std::vector<UnitEdge> drawn(units.size());
    for (int attempt = 0;; ++attempt) {
      bool any_move = false;
      for (auto& u : drawn) {
        u = units[uniform_index(rng, units.size())];
        any_move = any_move || u.src != u.dst;
      }
      if (any_move) break;
      if (attempt + 1 >= kMaxRedraws) {
        throw UndefinedRhoError("bootstrap replicate " + std::to_string(r) +
                                " contained only self-loops after " +
                                std::to_string(kMaxRedraws) + " draws");
      }
    }
    const auto resampled = aggregate(net.registry(), drawn);
    values[r] = sample_mvr(resampled, replicate_sampler(sampler, rng())).best_rho;
  });
  return RhoDistribution::from_values(std::move(values));
}

RhoDistribution null_rho_distribution(const HiringNetwork& net, std::uint64_t replicates,
                                      const SamplerConfig& sampler, std::uint64_t seed) {
  require_replicates(replicates);
  sampler.validate();
  const auto n_swaps = kSwapsPerUnitEdge * static_cast<std::uint64_t>(net.total_weight());

  std::vector<double> values(replicates);
  parallel_for(replicates, [&](std::size_t r) {
    const auto replicate_seed = derive_seed(seed, kNullStream, r);
    for (int attempt = 0;; ++attempt) {
      const auto rewired =
          degree_preserving_rewire(net, n_swaps, derive_seed(replicate_seed, 0, attempt));
      if (rewired.non_self_loop_weight() > 0) {
        values[r] = sample_mvr(rewired, replicate_sampler(sampler, mix_seed(replicate_seed)))
                        .best_rho;
        return;
      }
      if (attempt + 1 >= kMaxRedraws) {
        throw UndefinedRhoError("null replicate " + std::to_string(r) +
                                " rewired into self-loops only after " +
                                std::to_string(kMaxRedraws) + " attempts");
      }
    }
  });
  return RhoDistribution::from_values(std::move(values));
}

SignificanceReport significance(const RhoDistribution& empirical,
                                const RhoDistribution& null) {
  if (empirical.n < 2 || null.n < 2) {
    throw ContractError("significance needs at least two values per distribution");
  }
  SignificanceReport rep;
  rep.empirical_mean = empirical.mean;
  rep.null_mean = null.mean;

  const double va = empirical.std * empirical.std / static_cast<double>(empirical.n);
  const double vb = null.std * null.std / static_cast<double>(null.n);
  const double diff = empirical.mean - null.mean;
  if (va + vb == 0.0) {
    if (diff == 0.0) {
      throw DegenerateTestError(
          "t-test is degenerate: both distributions are constant with equal means");
    }
    rep.t_statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
    rep.degrees_of_freedom = std::numeric_limits<double>::quiet_NaN();
    rep.p_value_t = diff > 0 ? 0.0 : 1.0;
  } else {
    rep.t_statistic = diff / std::sqrt(va + vb);
    const double na = static_cast<double>(empirical.n);
    const double nb = static_cast<double>(null.n);
    rep.degrees_of_freedom =
        (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    const boost::math::students_t dist(rep.degrees_of_freedom);
    rep.p_value_t = boost::math::cdf(boost::math::complement(dist, rep.t_statistic));
  }

  const double threshold = *std::min_element(empirical.values.begin(), empirical.values.end());
  const auto at_least = std::count_if(null.values.begin(), null.values.end(),
                                      [&](double v) { return v >= threshold; });
  rep.p_value_empirical =
      static_cast<double>(1 + at_least) / static_cast<double>(null.n + 1);
  return rep;
}

}  // namespace hierarchyrank
