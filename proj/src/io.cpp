#include "hierarchyrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "hierarchyrank/csv.hpp"
#include "hierarchyrank/errors.hpp"

namespace hierarchyrank {

void write_ranking_csv(std::ostream& out, const HiringNetwork& net, const MvrResult& result) {
  csv::write_row(out, {"rank", "institution", "prestige_score", "ci_low", "ci_high"});
  for (std::size_t rank = 1; rank <= result.consensus.size(); ++rank) {
    const NodeId node = result.consensus.node_at(rank);
    csv::write_row(out, {std::to_string(rank), net.registry().name(node),
                         csv::format_fixed(result.prestige_score[node], 4),
                         csv::format_fixed(result.ci95[node].low, 4),
                         csv::format_fixed(result.ci95[node].high, 4)});
  }
}

InstitutionRanking load_ranking_csv(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw FormatError("ranking file is empty");
  auto column = [&](const std::string& name) {
    for (std::size_t k = 0; k < header->fields.size(); ++k) {
      if (csv::trim(header->fields[k]) == name) return k;
    }
    throw FormatError("ranking header is missing column '" + name + "'", header->line);
  };
  const auto rank_col = column("rank");
  const auto name_col = column("institution");

  std::vector<std::pair<std::size_t, std::string>> rows;
  while (auto row = reader.next()) {
    if (row->fields.size() == 1 && csv::trim(row->fields[0]).empty()) continue;
    if (row->fields.size() != header->fields.size()) {
      throw FormatError("ranking row has " + std::to_string(row->fields.size()) +
                        " fields, header has " + std::to_string(header->fields.size()),
                        row->line);
    }
    const auto text = csv::trim(row->fields[rank_col]);
    std::size_t rank = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), rank);
    if (ec != std::errc{} || ptr != text.data() + text.size() || rank == 0) {
      throw FormatError("rank '" + text + "' is not a positive integer", row->line);
    }
    rows.emplace_back(rank, csv::trim(row->fields[name_col]));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<std::string> order;
  order.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].first != k + 1) {
      throw FormatError("ranks must be exactly 1..N; rank " + std::to_string(k + 1) +
                        " is missing or repeated");
    }
    order.push_back(std::move(rows[k].second));
  }
  try {
    return InstitutionRanking::from_order(std::move(order));
  } catch (const ContractError& e) {
    throw FormatError(e.what());
  }
}

InstitutionRanking load_ranking_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open ranking file '" + path + "'");
  return load_ranking_csv(in);
}

void write_distribution_csv(std::ostream& out, const RhoDistribution& dist) {
  csv::write_row(out, {"replicate", "rho"});
  for (std::size_t r = 0; r < dist.values.size(); ++r) {
    csv::write_row(out, {std::to_string(r), csv::format_real(dist.values[r])});
  }
}

void write_rank_change_csv(std::ostream& out, const RankChangeSample& sample) {
  csv::write_row(out, {"person_id", "phd_rank", "hire_rank", "relative_change"});
  for (const auto& e : sample.entries) {
    csv::write_row(out, {e.person_id, std::to_string(e.phd_rank),
                         std::to_string(e.hire_rank), csv::format_real(e.value)});
  }
}

void write_lorenz_csv(std::ostream& out, const LorenzCurve& curve) {
  csv::write_row(out, {"cum_institutions", "cum_production"});
  for (const auto& p : curve.points) {
    csv::write_row(out, {csv::format_real(p.population), csv::format_real(p.production)});
  }
}

void write_truth_csv(std::ostream& out, const NodeRegistry& registry, const Ranking& truth) {
  csv::write_row(out, {"institution", "true_rank"});
  for (std::size_t rank = 1; rank <= truth.size(); ++rank) {
    csv::write_row(out, {registry.name(truth.node_at(rank)), std::to_string(rank)});
  }
}

SamplerConfig load_sampler_config(std::istream& in, SamplerConfig cfg) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = csv::trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw FormatError("expected key=value", line_no);
    const auto key = csv::trim(text.substr(0, eq));
    const auto value_text = csv::trim(text.substr(eq + 1));
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc{} || ptr != value_text.data() + value_text.size()) {
      throw FormatError("value of '" + key + "' is not a non-negative integer", line_no);
    }
    if (key == "total_iterations") {
      cfg.total_iterations = value;
    } else if (key == "burn_in") {
      cfg.burn_in = value;
    } else if (key == "sample_interval") {
      cfg.sample_interval = value;
    } else if (key == "restarts") {
      cfg.restarts = value;
    } else if (key == "seed") {
      cfg.seed = value;
    } else {
      throw FormatError("unknown sampler key '" + key + "'", line_no);
    }
  }
  return cfg;
}

}  // namespace hierarchyrank
