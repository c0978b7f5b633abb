#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "hierarchyrank/csv.hpp"
#include "hierarchyrank/errors.hpp"
#include "hierarchyrank/io.hpp"
#include "hierarchyrank/metrics.hpp"
#include "hierarchyrank/mvr.hpp"
#include "hierarchyrank/network.hpp"
#include "hierarchyrank/null_model.hpp"
#include "hierarchyrank/synth.hpp"

namespace hierarchyrank::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Bad flag values; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

YearRange parse_years(const std::string& text) {
  const auto colon = text.find(':');
  auto parse = [&](std::string_view part) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size()) return std::nullopt;
    return v;
  };
  if (colon != std::string::npos) {
    const std::string_view view(text);
    const auto start = parse(view.substr(0, colon));
    const auto end = parse(view.substr(colon + 1));
    if (start && end && *start < *end) return YearRange(*start, *end);
  }
  throw UsageError("year range '" + text + "' must be START:END with START < END");
}

// ------------------------------------------------------------------ options

struct InputOptions {
  std::string records;
  std::string edges;
  std::string years;
  std::vector<std::string> disciplines;
  std::string whitelist;
};

struct SamplerOptions {
  std::string config;
  std::optional<std::uint64_t> iters;
  std::optional<std::uint64_t> burnin;
  std::optional<std::uint64_t> interval;
  std::optional<std::uint64_t> restarts;
  std::optional<std::uint64_t> seed;
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool allow_edges) {
  auto* records = cmd->add_option("--records", in.records, "Hiring records CSV");
  if (allow_edges) {
    auto* edges = cmd->add_option("--edges", in.edges, "Edge-list CSV (src,dst,weight)");
    records->excludes(edges);
    edges->excludes(records);
  } else {
    records->required();
  }
  cmd->add_option("--years", in.years, "Half-open doctoral year range START:END");
  cmd->add_option("--discipline", in.disciplines, "Keep this discipline (repeatable)");
  cmd->add_option("--whitelist", in.whitelist, "File of institutions, one per line");
}

void add_sampler_options(CLI::App* cmd, SamplerOptions& s) {
  cmd->add_option("--config", s.config, "Sampler key=value file");
  cmd->add_option("--iters", s.iters, "Iterations per chain");
  cmd->add_option("--burnin", s.burnin, "Burn-in iterations");
  cmd->add_option("--interval", s.interval, "Iterations between recorded samples");
  cmd->add_option("--restarts", s.restarts, "Independent chains");
  cmd->add_option("--seed", s.seed, "Base random seed");
}

NetworkFilter make_filter(const InputOptions& in) {
  NetworkFilter filter;
  if (!in.years.empty()) filter.years = parse_years(in.years);
  if (!in.disciplines.empty()) {
    filter.disciplines = std::set<std::string>(in.disciplines.begin(), in.disciplines.end());
  }
  if (!in.whitelist.empty()) filter.whitelist = load_whitelist_file(in.whitelist);
  return filter;
}

SamplerConfig make_sampler(const SamplerOptions& s) {
  SamplerConfig cfg;
  if (!s.config.empty()) {
    std::ifstream file(s.config);
    if (!file) throw FormatError("cannot open sampler config '" + s.config + "'");
    cfg = load_sampler_config(file, cfg);
  }
  if (s.iters) cfg.total_iterations = *s.iters;
  if (s.burnin) cfg.burn_in = *s.burnin;
  if (s.interval) cfg.sample_interval = *s.interval;
  if (s.restarts) cfg.restarts = *s.restarts;
  if (s.seed) cfg.seed = *s.seed;
  try {
    cfg.validate();
  } catch (const ContractError& e) {
    throw UsageError(std::string("invalid sampler settings: ") + e.what());
  }
  return cfg;
}

HiringNetwork load_network(const InputOptions& in, const NetworkFilter& filter) {
  if (!in.edges.empty()) {
    if (filter.years || filter.disciplines || filter.whitelist) {
      throw UsageError("--years, --discipline and --whitelist need --records input");
    }
    return load_edge_list_file(in.edges);
  }
  if (in.records.empty()) throw UsageError("one of --records or --edges is required");
  return build_network(load_records_file(in.records), filter);
}

Json sampler_json(const SamplerConfig& cfg) {
  return Json{{"total_iterations", cfg.total_iterations},
              {"burn_in", cfg.burn_in},
              {"sample_interval", cfg.sample_interval},
              {"restarts", cfg.restarts},
              {"seed", cfg.seed}};
}

Json filter_json(const InputOptions& in) {
  Json f;
  f["years"] = in.years.empty() ? Json(nullptr) : Json(in.years);
  std::set<std::string> disciplines(in.disciplines.begin(), in.disciplines.end());
  f["disciplines"] = Json(std::vector<std::string>(disciplines.begin(), disciplines.end()));
  f["whitelist"] = in.whitelist.empty() ? Json(nullptr) : Json(in.whitelist);
  return f;
}

std::vector<std::string> input_paths(const InputOptions& in) {
  std::vector<std::string> paths;
  for (const auto* p : {&in.records, &in.edges, &in.whitelist}) {
    if (!p->empty()) paths.push_back(*p);
  }
  return paths;
}

// ------------------------------------------------------------------ outputs

/// Collects output files and writes the run manifest last.
class RunOutput {
 public:
  RunOutput(std::string dir, std::string command, std::vector<std::string> argv)
      : dir_(std::move(dir)) {
    manifest_["command"] = std::move(command);
    manifest_["argv"] = std::move(argv);
    manifest_["inputs"] = Json::array();
    manifest_["filter"] = nullptr;
    manifest_["sampler"] = nullptr;
    manifest_["seed"] = nullptr;
    manifest_["tool_version"] = HIERARCHYRANK_VERSION;
    manifest_["outputs"] = Json::array();
  }

  Json& manifest() { return manifest_; }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = fs::path(dir_) / name;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write '" + path.string() + "'");
    file << content;
    if (!file) throw Error("failed writing '" + path.string() + "'");
    manifest_["outputs"].push_back(path.string());
  }

  void write_json(const std::string& name, const Json& value) {
    write(name, value.dump(2) + "\n");
  }

  void finish() {
    const Json manifest = manifest_;
    write("manifest.json", manifest.dump(2) + "\n");
  }

 private:
  std::string dir_;
  Json manifest_;
};

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

Json real_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json distribution_summary(const RhoDistribution& d) {
  return Json{{"mean", d.mean}, {"std", d.std}, {"n", d.n}};
}

Json rank_change_summary(const RankChangeSample& s) {
  return Json{{"upward_fraction", upward_fraction(s)},
              {"mean_rank_change", mean_rank_change(s)},
              {"n_total", s.n_total},
              {"n_up", s.n_up},
              {"n_dropped", s.n_dropped}};
}

// ----------------------------------------------------------------- commands

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
};

struct RankArgs {
  InputOptions input;
  SamplerOptions sampler;
  std::size_t top = 10;
  std::string out = ".";
};

int cmd_rank(const RankArgs& a, Context& ctx) {
  const auto filter = make_filter(a.input);
  const auto cfg = make_sampler(a.sampler);
  const auto net = load_network(a.input, filter);
  const auto result = sample_mvr(net, cfg);

  RunOutput run(a.out, "rank", ctx.argv);
  run.manifest()["inputs"] = input_paths(a.input);
  run.manifest()["filter"] = filter_json(a.input);
  run.manifest()["sampler"] = sampler_json(cfg);
  run.manifest()["seed"] = cfg.seed;

  run.write("ranking.csv", render([&](std::ostream& s) { write_ranking_csv(s, net, result); }));
  run.write_json("report.json", Json{{"n_nodes", net.n_nodes()},
                                     {"n_edges", net.edges().size()},
                                     {"total_weight", net.total_weight()},
                                     {"best_rho", result.best_rho},
                                     {"best_score", result.best_score},
                                     {"n_samples", result.samples.size()}});
  run.finish();

  const auto shown = std::min(a.top, result.consensus.size());
  for (std::size_t rank = 1; rank <= shown; ++rank) {
    const auto node = result.consensus.node_at(rank);
    ctx.out << rank << '\t' << net.registry().name(node) << '\t'
            << csv::format_fixed(result.prestige_score[node], 4) << '\n';
  }
  ctx.out << "best_rho\t" << csv::format_fixed(result.best_rho, 4) << '\n';
  return kExitOk;
}

struct NullArgs {
  InputOptions input;
  SamplerOptions sampler;
  std::uint64_t replicates = kDefaultReplicates;
  std::string out = ".";
};

int cmd_null(const NullArgs& a, Context& ctx) {
  const auto filter = make_filter(a.input);
  const auto cfg = make_sampler(a.sampler);
  const auto net = load_network(a.input, filter);

  const auto empirical = bootstrap_rho(net, a.replicates, cfg, cfg.seed);
  const auto null = null_rho_distribution(net, a.replicates, cfg, cfg.seed);

  Json report;
  try {
    const auto sig = significance(empirical, null);
    report["degenerate"] = false;
    report["t_statistic"] = real_or_null(sig.t_statistic);
    report["degrees_of_freedom"] = real_or_null(sig.degrees_of_freedom);
    report["p_value_t"] = sig.p_value_t;
    report["p_value_empirical"] = sig.p_value_empirical;
  } catch (const DegenerateTestError& e) {
    report["degenerate"] = true;
    report["reason"] = e.what();
    report["t_statistic"] = nullptr;
    report["degrees_of_freedom"] = nullptr;
    report["p_value_t"] = nullptr;
    report["p_value_empirical"] = nullptr;
  }
  report["empirical_mean"] = empirical.mean;
  report["null_mean"] = null.mean;
  report["empirical"] = distribution_summary(empirical);
  report["null"] = distribution_summary(null);

  RunOutput run(a.out, "null", ctx.argv);
  run.manifest()["inputs"] = input_paths(a.input);
  run.manifest()["filter"] = filter_json(a.input);
  run.manifest()["sampler"] = sampler_json(cfg);
  run.manifest()["seed"] = cfg.seed;
  run.manifest()["replicates"] = a.replicates;
  run.write("rho_empirical.csv",
            render([&](std::ostream& s) { write_distribution_csv(s, empirical); }));
  run.write("rho_null.csv", render([&](std::ostream& s) { write_distribution_csv(s, null); }));
  run.write_json("significance.json", report);
  run.finish();

  ctx.out << report.dump(2) << '\n';
  return kExitOk;
}

struct MetricsArgs {
  std::string kind;
  InputOptions input;
  std::string ranking;
  std::vector<std::string> cohorts;
  std::string out = ".";
};

int cmd_metrics(const MetricsArgs& a, Context& ctx) {
  const auto filter = make_filter(a.input);
  const auto records = load_records_file(a.input.records);

  RunOutput run(a.out, "metrics " + a.kind, ctx.argv);
  auto inputs = input_paths(a.input);
  if (!a.ranking.empty()) inputs.push_back(a.ranking);
  run.manifest()["inputs"] = inputs;
  run.manifest()["filter"] = filter_json(a.input);

  Json summary;
  if (a.kind == "gini" || a.kind == "lorenz") {
    const auto net = build_network(records, filter);
    const auto degrees = degree_sequences(net);
    const std::vector<double> production(degrees.out_degree.begin(), degrees.out_degree.end());
    summary["gini"] = gini(production);
    summary["n_institutions"] = production.size();
    if (a.kind == "lorenz") {
      const auto curve = lorenz(production);
      run.write("lorenz.csv", render([&](std::ostream& s) { write_lorenz_csv(s, curve); }));
    }
  } else {
    if (a.ranking.empty()) throw UsageError("metrics " + a.kind + " requires --ranking");
    const auto ranking = load_ranking_csv_file(a.ranking);
    if (a.kind == "rankchange") {
      const auto sample = relative_rank_change(filter_records(records, filter), ranking);
      run.write("rank_change.csv",
                render([&](std::ostream& s) { write_rank_change_csv(s, sample); }));
      summary = rank_change_summary(sample);
    } else {
      if (a.cohorts.size() != 2) throw UsageError("metrics ks requires exactly two --cohort");
      if (!a.input.years.empty()) throw UsageError("metrics ks takes --cohort, not --years");
      std::vector<RankChangeSample> samples;
      Json cohorts = Json::array();
      for (std::size_t k = 0; k < 2; ++k) {
        NetworkFilter cohort_filter = filter;
        cohort_filter.years = parse_years(a.cohorts[k]);
        samples.push_back(relative_rank_change(filter_records(records, cohort_filter), ranking));
        const auto name = "rank_change_cohort" + std::to_string(k + 1) + ".csv";
        run.write(name, render([&](std::ostream& s) { write_rank_change_csv(s, samples[k]); }));
        Json c = rank_change_summary(samples[k]);
        c["cohort"] = a.cohorts[k];
        cohorts.push_back(c);
      }
      const auto ks = ks_two_sample(samples[0].values, samples[1].values);
      summary["ks_D"] = ks.statistic;
      summary["ks_p"] = ks.p_value;
      summary["cohorts"] = cohorts;
    }
  }
  run.write_json("summary.json", summary);
  run.finish();
  ctx.out << summary.dump(2) << '\n';
  return kExitOk;
}

struct SynthArgs {
  PlantedConfig cfg;
  bool records = false;
  int year = 2000;
  std::string discipline = "synthetic";
  std::string out = ".";
};

int cmd_synth(const SynthArgs& a, Context& ctx) {
  try {
    a.cfg.validate();
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
  const auto planted = generate_planted(a.cfg);
  const auto& reg = planted.network.registry();

  RunOutput run(a.out, "synth", ctx.argv);
  run.manifest()["seed"] = a.cfg.seed;
  run.manifest()["planted"] = Json{{"n_nodes", a.cfg.n_nodes},
                                   {"n_edges", a.cfg.n_edges},
                                   {"p_down", a.cfg.p_down},
                                   {"producer_skew", a.cfg.producer_skew}};
  run.write("edges.csv",
            render([&](std::ostream& s) { write_edge_list(s, planted.network); }));
  run.write("truth.csv",
            render([&](std::ostream& s) { write_truth_csv(s, reg, planted.truth); }));
  if (a.records) {
    std::vector<HiringRecord> records;
    records.reserve(planted.placements.size());
    for (std::size_t k = 0; k < planted.placements.size(); ++k) {
      const auto& p = planted.placements[k];
      records.push_back({"s" + std::to_string(a.cfg.seed) + "_" + std::to_string(k + 1),
                         reg.name(p.phd), a.year, a.discipline, reg.name(p.hire)});
    }
    run.write("records.csv", render([&](std::ostream& s) { write_records(s, records); }));
  }
  run.finish();

  ctx.out << "rho_truth\t" << csv::format_fixed(rho(planted.network, planted.truth), 4)
          << '\n';
  return kExitOk;
}

struct OracleArgs {
  std::string edges;
  std::string out = ".";
};

int cmd_oracle(const OracleArgs& a, Context& ctx) {
  const auto net = load_edge_list_file(a.edges);
  const auto best = brute_force_mvr(net);
  Json optima = Json::array();
  for (const auto& r : best.optima) {
    Json order = Json::array();
    for (NodeId node : r.order()) order.push_back(net.registry().name(node));
    optima.push_back(order);
  }
  const Json report{{"optimal_score", best.optimal_score},
                    {"optimal_rho", best.optimal_rho},
                    {"n_optima", best.optima.size()},
                    {"optima", optima}};

  RunOutput run(a.out, "oracle", ctx.argv);
  run.manifest()["inputs"] = std::vector<std::string>{a.edges};
  run.write_json("oracle.json", report);
  run.finish();
  ctx.out << report.dump(2) << '\n';
  return kExitOk;
}

/// Arguments of a recorded run with `--out` redirected when requested.
std::vector<std::string> replay_args(const std::string& manifest_path,
                                     const std::string& out_override) {
  std::ifstream file(manifest_path);
  if (!file) throw FormatError("cannot open manifest '" + manifest_path + "'");
  Json manifest;
  try {
    manifest = Json::parse(file);
  } catch (const Json::exception& e) {
    throw FormatError("manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
    throw FormatError("manifest has no argv array");
  }
  std::vector<std::string> args;
  const auto& argv = manifest["argv"];
  for (std::size_t k = 0; k < argv.size(); ++k) {
    auto arg = argv[k].get<std::string>();
    if (!out_override.empty()) {
      if (arg == "--out") {
        ++k;
        continue;
      }
      if (arg.starts_with("--out=")) continue;
    }
    args.push_back(std::move(arg));
  }
  if (!args.empty() && args.front() == "replay") throw FormatError("manifest replays itself");
  if (!out_override.empty()) {
    args.push_back("--out");
    args.push_back(out_override);
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prestige hierarchies in hiring networks via minimum violation rankings",
               "hierarchyrank"};
  app.set_version_flag("--version", HIERARCHYRANK_VERSION);
  app.require_subcommand(1);

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Sample minimum violation rankings");
  add_input_options(rank_cmd, rank.input, true);
  add_sampler_options(rank_cmd, rank.sampler);
  rank_cmd->add_option("--top", rank.top, "Rows to display");
  rank_cmd->add_option("--out", rank.out, "Output directory");

  NullArgs null;
  auto* null_cmd = app.add_subcommand("null", "Bootstrap and null-model rho distributions");
  add_input_options(null_cmd, null.input, true);
  add_sampler_options(null_cmd, null.sampler);
  null_cmd->add_option("--replicates", null.replicates, "Replicates per distribution")
      ->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max())
                  .description("at least 2"));
  null_cmd->add_option("--out", null.out, "Output directory");

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "Inequality and mobility metrics");
  metrics_cmd->add_option("kind", metrics.kind, "gini | lorenz | rankchange | ks")
      ->required()
      ->check(CLI::IsMember({"gini", "lorenz", "rankchange", "ks"}));
  add_input_options(metrics_cmd, metrics.input, false);
  metrics_cmd->add_option("--ranking", metrics.ranking, "Ranking CSV from `rank`");
  metrics_cmd->add_option("--cohort", metrics.cohorts, "Cohort year range START:END");
  metrics_cmd->add_option("--out", metrics.out, "Output directory");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted hierarchy");
  synth_cmd->add_option("--nodes", synth.cfg.n_nodes, "Institutions")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  synth_cmd->add_option("--edges", synth.cfg.n_edges, "Placements (unit edges)")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  synth_cmd->add_option("--pdown", synth.cfg.p_down, "Downward placement probability")
      ->check(CLI::Range(0.5, 1.0));
  synth_cmd->add_option("--skew", synth.cfg.producer_skew, "Producer rank exponent")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", synth.cfg.seed, "Random seed");
  synth_cmd->add_flag("--records", synth.records, "Also write records.csv");
  synth_cmd->add_option("--year", synth.year, "phd_year written to records.csv")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--discipline", synth.discipline, "Discipline written to records.csv");
  synth_cmd->add_option("--out", synth.out, "Output directory");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact MVR by enumeration (N <= 10)");
  oracle_cmd->add_option("--edges", oracle.edges, "Edge-list CSV")->required();
  oracle_cmd->add_option("--out", oracle.out, "Output directory");

  std::string manifest_path;
  std::string replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "manifest.json")->required();
  replay_cmd->add_option("--out", replay_out, "Redirect outputs to this directory");

  Context ctx{args, out, err};
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (*rank_cmd) return cmd_rank(rank, ctx);
    if (*null_cmd) return cmd_null(null, ctx);
    if (*metrics_cmd) return cmd_metrics(metrics, ctx);
    if (*synth_cmd) return cmd_synth(synth, ctx);
    if (*oracle_cmd) return cmd_oracle(oracle, ctx);
    if (*replay_cmd) return run(replay_args(manifest_path, replay_out), out, err);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << HIERARCHYRANK_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace hierarchyrank::cli
