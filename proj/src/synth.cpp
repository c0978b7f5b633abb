#include "hierarchyrank/synth.hpp"

#include <algorithm>
#include <cmath>

#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/random.hpp"

namespace hierarchyrank {

void PlantedConfig::validate() const {
  if (n_nodes < 2) throw ContractError("planted network needs at least 2 nodes");
  if (n_edges < 1) throw ContractError("planted network needs at least 1 edge");
  if (!(p_down >= 0.5 && p_down <= 1.0)) throw ContractError("p_down must lie in [0.5, 1]");
  if (!(producer_skew >= 0.0) || !std::isfinite(producer_skew)) {
    throw ContractError("producer_skew must be a finite non-negative number");
  }
}

std::string planted_name(std::size_t rank, std::size_t n_nodes) {
  const auto width = std::max<std::size_t>(4, std::to_string(n_nodes).size());
  auto digits = std::to_string(rank);
  return "inst_" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

PlantedNetwork generate_planted(const PlantedConfig& cfg) {
  cfg.validate();
  const auto n = cfg.n_nodes;

  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) names.push_back(planted_name(k, n));
  auto registry = NodeRegistry::from_names(names);

  std::vector<double> cumulative(n);
  double total = 0.0;
  // With p_down = 1 the bottom node has no admissible employer, so it never
  // produces.
  const std::size_t producers = cfg.p_down == 1.0 ? n - 1 : n;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < producers) total += std::pow(static_cast<double>(k + 1), -cfg.producer_skew);
    cumulative[k] = total;
  }

  Engine rng(cfg.seed);
  PlantedNetwork out;
  out.placements.reserve(cfg.n_edges);
  std::vector<Edge> edges;
  edges.reserve(cfg.n_edges);
  for (std::size_t e = 0; e < cfg.n_edges; ++e) {
    const double u = uniform_unit(rng) * total;
    const auto producer = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                     cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(producers - 1)));
    bool down = uniform_unit(rng) < cfg.p_down;
    if (producer == 0) down = true;
    if (producer == n - 1) down = false;
    const std::size_t employer = down
        ? producer + 1 + uniform_index(rng, n - 1 - producer)
        : uniform_index(rng, producer);
    const auto src = static_cast<NodeId>(producer);
    const auto dst = static_cast<NodeId>(employer);
    out.placements.push_back({src, dst});
    edges.push_back({src, dst, 1});
  }
  out.network = HiringNetwork::from_edges(std::move(registry), std::move(edges));
  out.truth = Ranking::identity(n);
  return out;
}

}  // namespace hierarchyrank
