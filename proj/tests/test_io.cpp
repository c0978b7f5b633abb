#include <doctest.h>

#include <sstream>

#include "hierarchyrank/csv.hpp"
#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/io.hpp"

using namespace hierarchyrank;

TEST_CASE("ranking csv layout and reload") {
  const auto net = HiringNetwork::from_named_edges({{"A", "B", 1}, {"A", "C", 1}, {"A", "D", 1}});
  const auto result = summarize_samples(
      net, {Ranking::from_order({0, 1, 2, 3}), Ranking::from_order({0, 3, 2, 1})});
  std::stringstream buf;
  write_ranking_csv(buf, net, result);
  CHECK(buf.str() ==
        "rank,institution,prestige_score,ci_low,ci_high\n"
        "1,A,1.0000,1.0000,1.0000\n"
        "2,B,3.0000,2.0500,3.9500\n"
        "3,C,3.0000,3.0000,3.0000\n"
        "4,D,3.0000,2.0500,3.9500\n");
  const auto loaded = load_ranking_csv(buf);
  CHECK(loaded.order() == std::vector<std::string>{"A", "B", "C", "D"});
}

TEST_CASE("ranking csv validation") {
  std::istringstream gap("rank,institution\n1,A\n3,B\n");
  CHECK_THROWS_AS(load_ranking_csv(gap), FormatError);
  std::istringstream no_column("position,institution\n1,A\n");
  CHECK_THROWS_AS(load_ranking_csv(no_column), FormatError);
  std::istringstream dup("rank,institution\n1,A\n2,A\n");
  CHECK_THROWS_AS(load_ranking_csv(dup), FormatError);
}

TEST_CASE("other column formats") {
  std::ostringstream dist;
  write_distribution_csv(dist, RhoDistribution::from_values({0.75, 1.0}));
  CHECK(dist.str() == "replicate,rho\n0,0.75\n1,1\n");

  std::ostringstream lz;
  write_lorenz_csv(lz, lorenz(std::vector<double>{1, 3}));
  CHECK(lz.str() == "cum_institutions,cum_production\n0,0\n0.5,0.25\n1,1\n");

  RankChangeSample s;
  s.entries = {{"p1", 2, 7, 0.5}, {"p,2", 3, 1, -0.2}};
  std::ostringstream rc;
  write_rank_change_csv(rc, s);
  CHECK(rc.str() == "person_id,phd_rank,hire_rank,relative_change\np1,2,7,0.5\n\"p,2\",3,1,-0.2\n");

  const auto reg = NodeRegistry::from_names({"x", "y"});
  std::ostringstream truth;
  write_truth_csv(truth, reg, Ranking::from_order({1, 0}));
  CHECK(truth.str() == "institution,true_rank\ny,1\nx,2\n");
}

TEST_CASE("sampler config file") {
  std::istringstream in("# sampler\ntotal_iterations = 5000\nburn_in=1000 # short\n\nseed=9\n");
  const auto cfg = load_sampler_config(in);
  CHECK(cfg.total_iterations == 5000);
  CHECK(cfg.burn_in == 1000);
  CHECK(cfg.sample_interval == 100);
  CHECK(cfg.restarts == 10);
  CHECK(cfg.seed == 9);

  std::istringstream unknown("temperature=3\n");
  CHECK_THROWS_AS(load_sampler_config(unknown), FormatError);
  std::istringstream bad("seed=-1\n");
  CHECK_THROWS_AS(load_sampler_config(bad), FormatError);
}

TEST_CASE("number formatting is locale independent and sign clean") {
  CHECK(csv::format_fixed(0.66666, 4) == "0.6667");
  CHECK(csv::format_fixed(-0.00001, 4) == "0.0000");
  CHECK(csv::format_fixed(1234567.5, 1) == "1234567.5");
  CHECK(csv::format_real(0.1) == "0.1");
}
