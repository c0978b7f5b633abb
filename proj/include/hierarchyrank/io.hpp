#pragma once

// Columnar output formats and the sampler config file.

#include <istream>
#include <ostream>
#include <string>

#include "hierarchyrank/metrics.hpp"
#include "hierarchyrank/mvr.hpp"
#include "hierarchyrank/network.hpp"
#include "hierarchyrank/null_model.hpp"

namespace hierarchyrank {

/// `rank,institution,prestige_score,ci_low,ci_high` in consensus order, reals
/// with 4 decimals.
void write_ranking_csv(std::ostream& out, const HiringNetwork& net, const MvrResult& result);
/// Reads a ranking CSV back as names in rank order. Only the `rank` and
/// `institution` columns are interpreted.
InstitutionRanking load_ranking_csv(std::istream& in);
InstitutionRanking load_ranking_csv_file(const std::string& path);

/// `replicate,rho`
void write_distribution_csv(std::ostream& out, const RhoDistribution& dist);
/// `person_id,phd_rank,hire_rank,relative_change`
void write_rank_change_csv(std::ostream& out, const RankChangeSample& sample);
/// `cum_institutions,cum_production`
void write_lorenz_csv(std::ostream& out, const LorenzCurve& curve);
/// `institution,true_rank`
void write_truth_csv(std::ostream& out, const NodeRegistry& registry, const Ranking& truth);

/// Flat `key=value` lines; `#` starts a comment. Recognised keys are the
/// SamplerConfig field names. Keys absent from the file keep their value in
/// `base`.
SamplerConfig load_sampler_config(std::istream& in, SamplerConfig base = {});

}  // namespace hierarchyrank
