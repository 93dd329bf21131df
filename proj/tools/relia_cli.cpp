// Command-line front end: metric evaluation, budget allocation, exact
// binomial estimation, power-law cost fitting, strategy simulation, and
// run-log curve reports. Machine-readable output (CSV or JSON) goes to
// stdout, diagnostics to stderr. Exit codes: 0 success, 1 usage error,
// 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relia/relia.hpp"

namespace {

using relia::json;

// Malformed command lines exit 1; malformed data (files, domain violations)
// exits 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_threshold_list(const std::string& csv) {
  std::vector<double> out;
  for (const auto& field : relia::text::split_csv_line(csv)) {
    try {
      out.push_back(relia::text::parse_double(relia::text::strip(field)));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--thresholds: ") + e.what());
    }
  }
  return out;
}

relia::SolverProfile parse_solver_spec(const std::string& spec) {
  // id:success_prob:attempt_cost
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw UsageError("solver spec must be id:p:c, got '" + spec + "'");
  try {
    return relia::SolverProfile(
        spec.substr(0, first),
        relia::text::parse_double(spec.substr(first + 1, second - first - 1)),
        relia::text::parse_double(spec.substr(second + 1)));
  } catch (const std::invalid_argument& e) {
    throw UsageError("--solver: " + std::string(e.what()));
  }
}

std::ifstream open_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

// Flat key,value CSV for record-like outputs.
void print_flat_csv(const json& j) {
  std::cout << "field,value\n";
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [sub, v] : value.items())
        std::cout << key << '.' << sub << ',' << v.dump() << '\n';
    } else {
      std::cout << key << ',' << value.dump() << '\n';
    }
  }
}

void print_record(const json& j, const std::string& format) {
  if (format == "json")
    std::cout << j.dump(2) << '\n';
  else
    print_flat_csv(j);
}

struct MetricArgs {
  double p = 0.0, c = 0.0;
  std::string log_path;
  double confidence = 0.95;
  std::string format;
};

int run_metric(const MetricArgs& args) {
  if (!args.log_path.empty()) {
    auto in = open_or_fail(args.log_path);
    const auto records = relia::ingest(in);
    const auto table = relia::metric_table(records, args.confidence);
    if (args.format == "json") {
      std::cout << relia::to_json(table).dump(2) << '\n';
    } else {
      std::cout << "strategy,attempts,ok,success_rate,mean_cost_per_attempt,"
                   "metric,metric_note,ci_lower,ci_upper\n";
      for (const auto& row : table) {
        std::cout << row.strategy << ',' << row.attempts << ',' << row.ok << ','
                  << relia::format_double(row.success_rate) << ','
                  << relia::format_double(row.mean_cost) << ','
                  << (row.metric ? relia::format_double(*row.metric) : std::string{})
                  << ',' << row.metric_note << ','
                  << relia::format_double(row.interval.lower) << ','
                  << relia::format_double(row.interval.upper) << '\n';
      }
    }
    return 0;
  }

  const double value = relia::metric(args.p, args.c);
  if (args.format == "json") {
    std::cout << json{{"p", args.p}, {"c", args.c}, {"metric", value}}.dump(2) << '\n';
  } else {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    std::cout << buf << '\n';
  }
  return 0;
}

struct AllocateArgs {
  double budget = 0.0;
  std::vector<std::string> solver_specs;
  bool exact = false;
  double granularity = 0.01;
  std::string format;
};

int run_allocate(const AllocateArgs& args) {
  std::vector<relia::SolverProfile> solvers;
  for (const auto& spec : args.solver_specs) solvers.push_back(parse_solver_spec(spec));
  const auto alloc = args.exact
                         ? relia::knapsack_allocate(solvers, args.budget, args.granularity)
                         : relia::lp_allocate(solvers, args.budget);
  print_record(relia::to_json(alloc), args.format);
  return 0;
}

struct EstimateArgs {
  std::int64_t s = 0, n = 0;
  double confidence = 0.95;
  bool adaptive = false;
  double p = 0.0;
  double target_length = 0.1;
  std::int64_t max_trials = 10'000;
  std::uint64_t seed = 0;
  std::string format;
};

int run_estimate(const EstimateArgs& args) {
  if (args.adaptive) {
    auto rng = relia::stream_rng(args.seed, 0);
    const relia::StoppingRule rule(args.target_length, args.confidence, args.max_trials);
    const auto result = relia::adaptive_estimate(
        [&] { return rng.next_double() < args.p; }, rule);
    print_record(relia::to_json(result), args.format);
  } else {
    const auto est = relia::clopper_pearson(args.s, args.n, args.confidence);
    print_record(relia::to_json(est), args.format);
  }
  return 0;
}

struct FitArgs {
  std::string csv_path;
  double gamma_max = 6.0;
  std::string format;
};

int run_fit_cost(const FitArgs& args) {
  auto in = open_or_fail(args.csv_path);
  std::string line;
  if (!std::getline(in, line) || relia::text::strip(line) != "queries,cost_usd")
    throw std::runtime_error("fit-cost: expected header 'queries,cost_usd' in " +
                             args.csv_path);
  std::vector<std::pair<std::int64_t, double>> points;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto stripped = relia::text::strip(line);
    if (stripped.empty()) continue;
    const auto fields = relia::text::split_csv_line(stripped);
    if (fields.size() != 2)
      throw std::runtime_error("fit-cost: row " + std::to_string(row) +
                               ": expected 2 fields");
    points.emplace_back(relia::text::parse_int(relia::text::strip(fields[0])),
                        relia::text::parse_double(relia::text::strip(fields[1])));
  }
  const auto model = relia::fit_power_law(points, args.gamma_max);
  print_record(relia::to_json(model), args.format);
  return 0;
}

struct SimulateArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string format;
};

int run_simulate(const SimulateArgs& args) {
  auto in = open_or_fail(args.config_path);
  json j;
  in >> j;
  auto cfg = relia::parse_sim_config(j);
  if (args.seed.has_value()) cfg.seed = *args.seed;
  const auto sweep =
      relia::sweep_curves(cfg.spec, cfg.budgets, cfg.trials, cfg.seed, cfg.confidence);
  if (args.format == "json")
    std::cout << relia::to_json(sweep).dump(2) << '\n';
  else
    std::cout << relia::sweep_to_csv(sweep);
  return 0;
}

struct CurvesArgs {
  std::string axis = "cost";
  std::string log_path;
  std::string thresholds;
  std::string strategy;
  bool has_strategy = false;
  std::string aggregate = "pooled";
  std::string format;
};

int run_curves(const CurvesArgs& args) {
  auto in = open_or_fail(args.log_path);
  const auto records = relia::ingest(in);
  const auto axis =
      args.axis == "queries" ? relia::CurveAxis::queries : relia::CurveAxis::cost;
  const auto thresholds = parse_threshold_list(args.thresholds);

  if (args.has_strategy) {
    const auto curve = relia::cumulative_curve(records, args.strategy, axis, thresholds);
    if (args.format == "json")
      std::cout << relia::to_json(curve).dump(2) << '\n';
    else
      std::cout << relia::curve_to_csv(curve);
    return 0;
  }
  if (args.aggregate == "pooled") {
    const auto curve = relia::pooled_curve(records, axis, thresholds);
    if (args.format == "json")
      std::cout << relia::to_json(curve).dump(2) << '\n';
    else
      std::cout << relia::curve_to_csv(curve);
    return 0;
  }
  if (args.aggregate == "mean") {
    const auto means = relia::mean_curve(records, axis, thresholds);
    if (args.format == "json") {
      json points = json::array();
      for (const auto& [t, m] : means)
        points.push_back(json{{"threshold", t}, {"mean_solved", m}});
      std::cout << json{{"axis", args.axis}, {"points", points}}.dump(2) << '\n';
    } else {
      std::cout << "threshold,mean_solved\n";
      for (const auto& [t, m] : means)
        std::cout << relia::format_double(t) << ',' << relia::format_double(m) << '\n';
    }
    return 0;
  }
  // per-strategy
  const auto curves = relia::curves_by_strategy(records, axis, thresholds);
  if (args.format == "json") {
    json out = json::array();
    for (const auto& [name, curve] : curves) {
      json entry = relia::to_json(curve);
      entry["strategy"] = name;
      out.push_back(entry);
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "strategy,threshold,solved_count\n";
    for (const auto& [name, curve] : curves)
      for (const auto& pt : curve.points)
        std::cout << name << ',' << relia::format_double(pt.threshold) << ','
                  << pt.solved << '\n';
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained solver allocation toolkit"};
  app.require_subcommand(1);

  MetricArgs metric_args;
  auto* metric_cmd = app.add_subcommand(
      "metric", "Negative log failure likelihood per dollar, -ln(1-p)/c");
  auto* p_opt = metric_cmd->add_option("--p", metric_args.p, "Success probability in (0,1)");
  auto* c_opt = metric_cmd->add_option("--c", metric_args.c, "Attempt cost in dollars");
  auto* log_opt = metric_cmd->add_option("--log", metric_args.log_path,
                                         "Run log CSV: per-strategy metric table");
  metric_cmd->add_option("--confidence", metric_args.confidence,
                         "Confidence level for table intervals");
  metric_cmd->add_option("--format", metric_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");
  p_opt->needs(c_opt);
  c_opt->needs(p_opt);
  log_opt->excludes(p_opt);

  AllocateArgs alloc_args;
  auto* alloc_cmd =
      app.add_subcommand("allocate", "Allocate a budget across solvers");
  alloc_cmd->add_option("--budget", alloc_args.budget, "Budget in dollars")->required();
  alloc_cmd
      ->add_option("--solver", alloc_args.solver_specs,
                   "Solver as id:p:c (repeatable)")
      ->required();
  alloc_cmd->add_flag("--exact", alloc_args.exact,
                      "Exact integer allocation (default: LP relaxation)");
  alloc_cmd->add_option("--granularity", alloc_args.granularity,
                        "Budget grid step in dollars for --exact");
  alloc_cmd->add_option("--format", alloc_args.format, "json or csv")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("json");

  EstimateArgs est_args;
  auto* est_cmd = app.add_subcommand(
      "estimate", "Exact Clopper-Pearson interval for a Bernoulli proportion");
  auto* s_opt = est_cmd->add_option("--s", est_args.s, "Number of successes");
  est_cmd->add_option("--n", est_args.n, "Number of trials");
  est_cmd->add_option("--confidence", est_args.confidence, "Confidence level");
  auto* adaptive_flag = est_cmd->add_flag(
      "--adaptive", est_args.adaptive,
      "Sample a synthetic Bernoulli(p) oracle until the interval is short enough");
  est_cmd->add_option("--p", est_args.p, "True probability of the synthetic oracle");
  est_cmd->add_option("--target-length", est_args.target_length,
                      "Stop when the interval length reaches this");
  est_cmd->add_option("--max-trials", est_args.max_trials, "Trial cap");
  est_cmd->add_option("--seed", est_args.seed, "Oracle RNG seed");
  est_cmd->add_option("--format", est_args.format, "json or csv")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("json");
  adaptive_flag->excludes(s_opt);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand(
      "fit-cost", "Fit cost(q) = a + b*q^gamma to a queries,cost_usd CSV");
  fit_cmd->add_option("csv", fit_args.csv_path, "Input CSV path")->required();
  fit_cmd->add_option("--gamma-max", fit_args.gamma_max, "Upper end of the gamma search");
  fit_cmd->add_option("--format", fit_args.format, "json or csv")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("json");

  SimulateArgs sim_args;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Seeded Monte Carlo sweep of a strategy config");
  sim_cmd->add_option("--config", sim_args.config_path, "JSON strategy config")->required();
  sim_cmd->add_option("--seed", sim_args.seed, "Override the config seed");
  sim_cmd->add_option("--format", sim_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");

  CurvesArgs curve_args;
  auto* curves_cmd = app.add_subcommand(
      "curves", "Cumulative solved problems versus cost or query thresholds");
  curves_cmd->add_option("--axis", curve_args.axis, "cost or queries")
      ->check(CLI::IsMember({"cost", "queries"}))
      ->required();
  curves_cmd->add_option("--log", curve_args.log_path, "Run log CSV")->required();
  curves_cmd->add_option("--thresholds", curve_args.thresholds,
                         "Comma-separated ascending thresholds")
      ->required();
  auto* strat_opt =
      curves_cmd->add_option("--strategy", curve_args.strategy, "Restrict to one strategy");
  curves_cmd
      ->add_option("--aggregate", curve_args.aggregate,
                   "Aggregation across strategies when --strategy is not given")
      ->check(CLI::IsMember({"pooled", "mean", "per-strategy"}))
      ->default_val("pooled");
  curves_cmd->add_option("--format", curve_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }
  curve_args.has_strategy = strat_opt->count() > 0;

  try {
    if (metric_cmd->parsed()) {
      if (metric_args.log_path.empty() && p_opt->count() == 0)
        throw UsageError("metric: pass --p/--c or --log");
      return run_metric(metric_args);
    }
    if (alloc_cmd->parsed()) return run_allocate(alloc_args);
    if (est_cmd->parsed()) {
      if (!est_args.adaptive && s_opt->count() == 0)
        throw UsageError("estimate: pass --s/--n or --adaptive");
      return run_estimate(est_args);
    }
    if (fit_cmd->parsed()) return run_fit_cost(fit_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (curves_cmd->parsed()) return run_curves(curve_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
