#include "hierarchyrank/mvr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/parallel.hpp"
#include "hierarchyrank/random.hpp"

namespace hierarchyrank {

namespace {

void require_matching(const HiringNetwork& net, const Ranking& r) {
  if (r.size() != net.n_nodes()) {
    throw ContractError("ranking covers " + std::to_string(r.size()) +
                        " nodes but the network has " + std::to_string(net.n_nodes()));
  }
}

void require_rankable(const HiringNetwork& net) {
  if (net.n_nodes() < 2) throw ContractError("sampling needs at least two nodes");
  if (net.non_self_loop_weight() == 0) {
    throw UndefinedRhoError("rho is undefined: every edge is a self-loop");
  }
}

// Above this size the dense net-flow matrix is not built.
constexpr std::size_t kDenseLimit = 1024;

/// Swap evaluation for the chain. With a dense net-flow matrix the nodes
/// ranked between the pair can be scanned directly, which beats walking the
/// adjacency when the pair is close in rank.
class SwapScorer {
 public:
  explicit SwapScorer(const HiringNetwork& net) : net_(net), n_(net.n_nodes()) {
    if (n_ <= kDenseLimit) {
      dense_.assign(n_ * n_, 0);
      for (NodeId i = 0; i < n_; ++i) {
        for (const NetFlow& f : net.net_flows(i)) dense_[i * n_ + f.other] = f.net;
      }
    }
  }

  Weight delta(const Ranking& r, NodeId a, NodeId b) const {
    if (r.rank_of(a) > r.rank_of(b)) std::swap(a, b);
    const auto upper = r.rank_of(a);
    const auto lower = r.rank_of(b);
    const auto between = lower - upper - 1;
    const auto degree = net_.net_flows(a).size() + net_.net_flows(b).size();
    if (dense_.empty() || degree < between) return sparse_delta(net_, r, a, b);

    const Weight* row_a = dense_.data() + a * n_;
    const Weight* row_b = dense_.data() + b * n_;
    Weight sum = 0;
    for (auto k = upper + 1; k < lower; ++k) {
      const NodeId c = r.node_at(k);
      sum += row_b[c] - row_a[c];
    }
    return 2 * (sum - row_a[b]);
  }

  /// `a` must be ranked above `b`.
  static Weight sparse_delta(const HiringNetwork& net, const Ranking& r, NodeId a,
                             NodeId b) {
    const auto upper = r.rank_of(a);
    const auto lower = r.rank_of(b);
    Weight sum = 0;
    Weight pair = 0;
    for (const NetFlow& f : net.net_flows(a)) {
      if (f.other == b) {
        pair = f.net;
        continue;
      }
      const auto rc = r.rank_of(f.other);
      if (upper < rc && rc < lower) sum -= f.net;
    }
    for (const NetFlow& f : net.net_flows(b)) {
      if (f.other == a) continue;
      const auto rc = r.rank_of(f.other);
      if (upper < rc && rc < lower) sum += f.net;
    }
    return 2 * (sum - pair);
  }

 private:
  const HiringNetwork& net_;
  std::size_t n_;
  std::vector<Weight> dense_;
};

/// Linear interpolation between order statistics of a sorted sample.
double percentile(const std::vector<std::size_t>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return static_cast<double>(sorted[lo]) +
         frac * (static_cast<double>(sorted[hi]) - static_cast<double>(sorted[lo]));
}

}  // namespace

EdgeBalance edge_balance(const HiringNetwork& net, const Ranking& r) {
  require_matching(net, r);
  EdgeBalance b;
  for (const Edge& e : net.edges()) {
    const auto ri = r.rank_of(e.src);
    const auto rj = r.rank_of(e.dst);
    if (ri < rj) {
      b.down += e.weight;
    } else if (ri > rj) {
      b.up += e.weight;
    }
  }
  return b;
}

Weight net_score(const HiringNetwork& net, const Ranking& r) {
  const auto b = edge_balance(net, r);
  return b.down - b.up;
}

double rho(const HiringNetwork& net, const Ranking& r) {
  const auto b = edge_balance(net, r);
  if (b.down + b.up == 0) {
    throw UndefinedRhoError("rho is undefined: every edge is a self-loop");
  }
  return static_cast<double>(b.down) / static_cast<double>(b.down + b.up);
}

double rho_from_score(const HiringNetwork& net, Weight score) {
  const Weight total = net.non_self_loop_weight();
  if (total == 0) throw UndefinedRhoError("rho is undefined: every edge is a self-loop");
  // down - up = score and down + up = total
  return static_cast<double>(total + score) / (2.0 * static_cast<double>(total));
}

Weight delta_swap(const HiringNetwork& net, const Ranking& r, NodeId a, NodeId b) {
  require_matching(net, r);
  if (a == b) throw ContractError("delta_swap needs two distinct nodes");
  if (a >= net.n_nodes() || b >= net.n_nodes()) {
    throw ContractError("delta_swap node outside the network");
  }
  if (r.rank_of(a) > r.rank_of(b)) std::swap(a, b);
  return SwapScorer::sparse_delta(net, r, a, b);
}

void SamplerConfig::validate() const {
  if (total_iterations == 0) throw ContractError("total_iterations must be positive");
  if (burn_in == 0) throw ContractError("burn_in must be positive");
  if (sample_interval == 0) throw ContractError("sample_interval must be positive");
  if (restarts == 0) throw ContractError("restarts must be positive");
  if (burn_in + sample_interval > total_iterations) {
    throw ContractError("burn_in + sample_interval must not exceed total_iterations");
  }
}

Ranking initial_ranking(const HiringNetwork& net) {
  const auto degrees = degree_sequences(net);
  std::vector<NodeId> order(net.n_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
    return degrees.out_degree[x] > degrees.out_degree[y];
  });
  return Ranking::from_order(std::move(order));
}

ChainResult run_chain(const HiringNetwork& net, const SamplerConfig& cfg,
                      std::uint64_t chain_seed, ChainStart start,
                      const ChainObserver& observer) {
  cfg.validate();
  require_rankable(net);

  const SwapScorer scorer(net);
  const auto n = net.n_nodes();
  Engine rng(chain_seed);

  Ranking current = initial_ranking(net);
  if (start == ChainStart::Random) {
    std::vector<NodeId> order(current.order().begin(), current.order().end());
    // Fisher-Yates with the portable index draw
    for (std::size_t k = n - 1; k > 0; --k) std::swap(order[k], order[uniform_index(rng, k + 1)]);
    current = Ranking::from_order(std::move(order));
  }
  Weight score = net_score(net, current);

  ChainResult result;
  result.samples.reserve((cfg.total_iterations - cfg.burn_in) / cfg.sample_interval);
  for (std::uint64_t t = 1; t <= cfg.total_iterations; ++t) {
    const auto a = static_cast<NodeId>(uniform_index(rng, n));
    auto b = static_cast<NodeId>(uniform_index(rng, n - 1));
    if (b >= a) ++b;

    const Weight delta = scorer.delta(current, a, b);
    if (delta >= 0) {
      current.swap_nodes(a, b);
      score += delta;
      ++result.accepted;
      if (observer) observer(current, score);
    }
    if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.sample_interval == 0) {
      result.samples.push_back(current);
      result.sample_scores.push_back(score);
    }
  }

  result.best_score = *std::max_element(result.sample_scores.begin(),
                                        result.sample_scores.end());
  result.best_rho = rho_from_score(net, result.best_score);
  return result;
}

MvrResult sample_mvr(const HiringNetwork& net, const SamplerConfig& cfg) {
  cfg.validate();
  require_rankable(net);

  std::vector<ChainResult> chains(cfg.restarts);
  parallel_for(chains.size(), [&](std::size_t k) {
    chains[k] = run_chain(net, cfg, cfg.seed + k,
                          k == 0 ? ChainStart::OutDegree : ChainStart::Random);
  });

  Weight best = chains.front().best_score;
  std::size_t recorded = 0;
  for (const auto& c : chains) {
    best = std::max(best, c.best_score);
    recorded += c.samples.size();
  }
  std::vector<Ranking> kept;
  for (auto& c : chains) {
    for (std::size_t s = 0; s < c.samples.size(); ++s) {
      if (c.sample_scores[s] == best) kept.push_back(std::move(c.samples[s]));
    }
  }

  auto result = summarize_samples(net, std::move(kept));
  result.n_recorded = recorded;
  return result;
}

MvrResult summarize_samples(const HiringNetwork& net, std::vector<Ranking> samples) {
  if (samples.empty()) throw ContractError("no samples to summarise");
  for (const auto& s : samples) require_matching(net, s);
  MvrResult out;
  out.samples = std::move(samples);
  out.n_recorded = out.samples.size();
  out.best_score = net_score(net, out.samples.front());
  out.best_rho = net.non_self_loop_weight() > 0 ? rho_from_score(net, out.best_score) : 0.0;

  const auto n = net.n_nodes();
  const auto m = out.samples.size();
  std::vector<std::size_t> rank_sums(n, 0);
  std::vector<std::vector<std::size_t>> per_node(n, std::vector<std::size_t>(m));
  for (std::size_t s = 0; s < m; ++s) {
    for (NodeId i = 0; i < n; ++i) {
      const auto rank = out.samples[s].rank_of(i);
      rank_sums[i] += rank;
      per_node[i][s] = rank;
    }
  }
  out.prestige_score.resize(n);
  out.ci95.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    out.prestige_score[i] = static_cast<double>(rank_sums[i]) / static_cast<double>(m);
    std::sort(per_node[i].begin(), per_node[i].end());
    out.ci95[i] = {percentile(per_node[i], 0.025), percentile(per_node[i], 0.975)};
  }

  // Every node has the same sample count, so integer rank sums order the
  // means exactly.
  const auto degrees = degree_sequences(net);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
    if (rank_sums[x] != rank_sums[y]) return rank_sums[x] < rank_sums[y];
    if (degrees.out_degree[x] != degrees.out_degree[y]) {
      return degrees.out_degree[x] > degrees.out_degree[y];
    }
    return x < y;
  });
  out.consensus = Ranking::from_order(std::move(order));
  return out;
}

BruteForceResult brute_force_mvr(const HiringNetwork& net) {
  const auto n = net.n_nodes();
  if (n > kBruteForceMaxNodes) {
    throw SizeLimitError("exhaustive search is limited to " +
                         std::to_string(kBruteForceMaxNodes) + " nodes, network has " +
                         std::to_string(n));
  }
  if (net.non_self_loop_weight() == 0) {
    throw UndefinedRhoError("rho is undefined: every edge is a self-loop");
  }

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::vector<std::size_t> rank(n);

  BruteForceResult out;
  bool first = true;
  do {
    for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;
    Weight score = 0;
    for (const Edge& e : net.edges()) {
      if (rank[e.src] < rank[e.dst]) {
        score += e.weight;
      } else if (rank[e.src] > rank[e.dst]) {
        score -= e.weight;
      }
    }
    if (first || score > out.optimal_score) {
      out.optimal_score = score;
      out.optima.clear();
      first = false;
    }
    if (score == out.optimal_score) out.optima.push_back(Ranking::from_order(order));
  } while (std::next_permutation(order.begin(), order.end()));

  out.optimal_rho = rho_from_score(net, out.optimal_score);
  return out;
}

}  // namespace hierarchyrank
