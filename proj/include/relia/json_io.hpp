#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "relia/allocate.hpp"
#include "relia/binomial.hpp"
#include "relia/cost_model.hpp"
#include "relia/curves.hpp"
#include "relia/simulate.hpp"

namespace relia {

// Insertion-ordered JSON keeps output stable and human-diffable.
using json = nlohmann::ordered_json;

inline json to_json(const Allocation& alloc) {
  json counts = json::object();
  for (const auto& e : alloc.counts) counts[e.solver_id] = e.attempts;
  return json{{"counts", counts},
              {"total_cost", alloc.total_cost},
              {"objective", alloc.objective},
              {"success_prob", alloc.success_prob}};
}

// met_target is part of the estimate schema but only meaningful for
// adaptive estimation; plain intervals serialize it as null.
inline json to_json(const BernoulliEstimate& est,
                    std::optional<bool> met_target = std::nullopt) {
  json j{{"s", est.successes},
         {"n", est.trials},
         {"confidence", est.confidence},
         {"lower", est.lower},
         {"upper", est.upper}};
  if (met_target.has_value())
    j["met_target"] = *met_target;
  else
    j["met_target"] = nullptr;
  return j;
}

inline json to_json(const AdaptiveEstimate& est) {
  return to_json(est.estimate, est.met_target);
}

inline json to_json(const CostScalingModel& model) {
  return json{{"a", model.a},
              {"b", model.b},
              {"gamma", model.gamma},
              {"rss", model.rss},
              {"n_points", model.n_points}};
}

inline json to_json(const Curve& curve) {
  json points = json::array();
  for (const auto& pt : curve.points)
    points.push_back(json{{"threshold", pt.threshold}, {"solved_count", pt.solved}});
  return json{{"axis", curve.axis == CurveAxis::cost ? "cost" : "queries"},
              {"points", points}};
}

inline json to_json(const std::vector<SweepPoint>& sweep) {
  json out = json::array();
  for (const auto& pt : sweep) {
    out.push_back(json{{"budget", pt.budget},
                       {"success_rate", pt.success_rate},
                       {"ci_lower", pt.estimate.lower},
                       {"ci_upper", pt.estimate.upper},
                       {"mean_queries", pt.mean_queries},
                       {"mean_cost", pt.mean_cost},
                       {"trials", pt.trials},
                       {"successes", pt.successes}});
  }
  return out;
}

inline json to_json(const std::vector<MetricRow>& table) {
  json out = json::array();
  for (const auto& row : table) {
    json j{{"strategy", row.strategy},
           {"attempts", row.attempts},
           {"ok", row.ok},
           {"success_rate", row.success_rate},
           {"mean_cost_per_attempt", row.mean_cost},
           {"ci_lower", row.interval.lower},
           {"ci_upper", row.interval.upper}};
    if (row.metric.has_value()) {
      j["metric"] = *row.metric;
      j["metric_note"] = nullptr;
    } else {
      j["metric"] = nullptr;
      j["metric_note"] = row.metric_note;
    }
    out.push_back(j);
  }
  return out;
}

// A full simulation request as read from a config file.
struct SimConfig {
  StrategySpec spec;
  std::vector<double> budgets;
  std::int64_t trials = 10'000;
  std::uint64_t seed = 0;
  double confidence = 0.95;
};

// Config keys: kind, p, c, lambda, onset, cost_model {a,b,gamma}, parts,
// budgets, trials, seed; optional confidence and cost_sigma (lognormal
// k-shot cost noise). budgets defaults to the standard per-problem monetary
// cap, trials to 10000, seed to 0. Unknown keys are rejected to catch typos.
inline SimConfig parse_sim_config(const json& j) {
  static const std::vector<std::string> known = {
      "kind", "p",       "c",      "lambda", "onset",      "cost_model",
      "parts", "budgets", "trials", "seed",   "confidence", "cost_sigma"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("sim config: unknown key '" + key + "'");

  SimConfig cfg;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "kshot") {
    cfg.spec.kind = StrategySpec::Kind::kshot;
    cfg.spec.solver = SolverProfile("kshot", j.at("p").get<double>(),
                                    j.at("c").get<double>());
    if (j.contains("cost_sigma"))
      cfg.spec.cost_log_sigma = j.at("cost_sigma").get<double>();
  } else if (kind == "agent" || kind == "partitioned_agent") {
    cfg.spec.kind = kind == "agent" ? StrategySpec::Kind::agent
                                    : StrategySpec::Kind::partitioned_agent;
    const auto& cm = j.at("cost_model");
    CostScalingModel model;
    model.a = cm.at("a").get<double>();
    model.b = cm.at("b").get<double>();
    model.gamma = cm.at("gamma").get<double>();
    cfg.spec.agent = SyntheticAgentModel(j.at("lambda").get<double>(),
                                         j.at("onset").get<double>(), model);
    if (kind == "partitioned_agent")
      cfg.spec.parts = j.value("parts", std::int64_t{3});
  } else {
    throw std::invalid_argument("sim config: kind must be kshot, agent, or partitioned_agent");
  }

  cfg.budgets = j.contains("budgets") ? j.at("budgets").get<std::vector<double>>()
                                      : std::vector<double>{kDefaultMonetaryCap};
  cfg.trials = j.value("trials", std::int64_t{10'000});
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.confidence = j.value("confidence", 0.95);
  return cfg;
}

/// CSV form of a sweep, matching the `simulate` CLI output byte for byte.
inline std::string sweep_to_csv(const std::vector<SweepPoint>& sweep) {
  std::string out =
      "budget,success_rate,ci_lower,ci_upper,mean_queries,mean_cost,trials,successes\n";
  for (const auto& pt : sweep) {
    out += format_double(pt.budget) + ',' + format_double(pt.success_rate) + ',' +
           format_double(pt.estimate.lower) + ',' + format_double(pt.estimate.upper) +
           ',' + format_double(pt.mean_queries) + ',' + format_double(pt.mean_cost) +
           ',' + std::to_string(pt.trials) + ',' + std::to_string(pt.successes) + '\n';
  }
  return out;
}

} // namespace relia
