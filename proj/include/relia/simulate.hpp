#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "relia/binomial.hpp"
#include "relia/cost_model.hpp"
#include "relia/profile.hpp"
#include "relia/rng.hpp"

namespace relia {

// Synthetic multi-query solver: failure probability decays exponentially in
// the budget past an onset cost, P[fail | B] = exp(-lambda * max(0, B - B0)),
// so log failure is linear in budget. Query usage follows the attached
// power-law cost model.
class SyntheticAgentModel {
 public:
  SyntheticAgentModel(double hazard_rate, double onset_cost, CostScalingModel cost_model)
      : hazard_rate_(hazard_rate), onset_cost_(onset_cost), cost_model_(cost_model) {
    if (!(hazard_rate >= 0.0))
      throw std::domain_error("SyntheticAgentModel: hazard rate must be >= 0");
    if (!(onset_cost >= 0.0))
      throw std::domain_error("SyntheticAgentModel: onset cost must be >= 0");
    if (!(cost_model.gamma > 1.0) || !(cost_model.b > 0.0))
      throw std::domain_error(
          "SyntheticAgentModel: cost model must be strictly increasing (b > 0, gamma > 1)");
    if (!(predict_cost(cost_model, 1) > 0.0))
      throw std::domain_error("SyntheticAgentModel: cost model predicts non-positive cost at q=1");
  }

  double hazard_rate() const { return hazard_rate_; }
  double onset_cost() const { return onset_cost_; }
  const CostScalingModel& cost_model() const { return cost_model_; }

  /// Success probability at a given budget: 1 - exp(-lambda*(B - B0)+).
  double success_prob(double budget) const {
    const double excess = std::max(0.0, budget - onset_cost_);
    return -std::expm1(-hazard_rate_ * excess);
  }

  /// Largest q >= 0 whose predicted cumulative cost fits the budget.
  std::int64_t queries_within(double budget) const {
    if (predict_cost(cost_model_, 1) > budget) return 0;
    // Invert a + b q^gamma <= B in closed form, then fix up FP edges.
    const double raw =
        std::pow((budget - cost_model_.a) / cost_model_.b, 1.0 / cost_model_.gamma);
    auto q = static_cast<std::int64_t>(std::floor(raw));
    q = std::max<std::int64_t>(q, 1);
    while (predict_cost(cost_model_, q + 1) <= budget) ++q;
    while (q > 1 && predict_cost(cost_model_, q) > budget) --q;
    return q;
  }

 private:
  double hazard_rate_;
  double onset_cost_;
  CostScalingModel cost_model_;
};

struct TrialRecord {
  double cost = 0.0;
  std::int64_t queries = 0;
  bool success = false;
};

struct SimResult {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double mean_cost = 0.0;
  double mean_queries = 0.0;
  std::vector<TrialRecord> records;

  double success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

namespace detail {

// Summaries are reduced in trial-index order regardless of how trials ran.
inline SimResult reduce(std::vector<TrialRecord> records) {
  SimResult out;
  out.trials = static_cast<std::int64_t>(records.size());
  double cost_sum = 0.0, query_sum = 0.0;
  for (const auto& r : records) {
    if (r.success) ++out.successes;
    cost_sum += r.cost;
    query_sum += static_cast<double>(r.queries);
  }
  if (out.trials > 0) {
    out.mean_cost = cost_sum / static_cast<double>(out.trials);
    out.mean_queries = query_sum / static_cast<double>(out.trials);
  }
  out.records = std::move(records);
  return out;
}

} // namespace detail

// Repeated independent attempts of one solver. Monetary regime: a new
// attempt starts while cumulative cost is strictly below the budget and is
// charged in full even if it overshoots, so a fixed-cost solver gets
// ceil(budget/cost) attempts; query regime: at most the capped number of
// attempts. Either way the trial stops charging at the first success.
// Per-attempt cost is fixed, or lognormal with mean pinned to the solver's
// attempt cost when cost_log_sigma > 0.
inline SimResult simulate_kshot(const SolverProfile& solver, const Budget& budget,
                                std::int64_t trials, std::uint64_t seed,
                                double cost_log_sigma = 0.0) {
  if (trials < 1) throw std::domain_error("simulate_kshot: trials must be >= 1");
  if (cost_log_sigma < 0.0)
    throw std::domain_error("simulate_kshot: cost_log_sigma must be >= 0");

  const double p = solver.success_prob();
  const double c = solver.attempt_cost();
  // E[exp(N(mu, sigma^2))] = exp(mu + sigma^2/2) = c.
  const double log_cost_mu = std::log(c) - 0.5 * cost_log_sigma * cost_log_sigma;

  std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(t));
    TrialRecord rec;
    const bool monetary = budget.kind() == Budget::Kind::monetary;
    const double cap = monetary ? budget.amount() : 0.0;
    // Accumulated cost an ulp short of the cap counts as having reached it,
    // so exact-multiple budgets yield exactly budget/cost attempts.
    const double cap_edge = cap - 1e-12 * std::max(1.0, cap);
    const std::int64_t max_attempts = monetary ? 0 : budget.count();
    while (!rec.success &&
           (monetary ? rec.cost < cap_edge : rec.queries < max_attempts)) {
      double attempt_cost = c;
      if (cost_log_sigma > 0.0)
        attempt_cost = std::exp(log_cost_mu + cost_log_sigma * rng.next_normal());
      ++rec.queries;
      rec.cost += attempt_cost;
      rec.success = rng.next_double() < p;
    }
    records[static_cast<std::size_t>(t)] = rec;
  }
  return detail::reduce(std::move(records));
}

// One synthetic-agent run per trial with an end-to-end monetary budget.
inline SimResult simulate_agent(const SyntheticAgentModel& model, double budget,
                                std::int64_t trials, std::uint64_t seed) {
  if (!(budget > 0.0)) throw std::domain_error("simulate_agent: budget must be positive");
  if (trials < 1) throw std::domain_error("simulate_agent: trials must be >= 1");

  const double p = model.success_prob(budget);
  const std::int64_t queries = model.queries_within(budget);

  std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(t));
    records[static_cast<std::size_t>(t)] = {budget, queries, rng.next_double() < p};
  }
  return detail::reduce(std::move(records));
}

// The budget split evenly across `parts` independent agent runs; the trial
// succeeds if any run does.
inline SimResult simulate_partitioned(const SyntheticAgentModel& model, double budget,
                                      std::int64_t parts, std::int64_t trials,
                                      std::uint64_t seed) {
  if (parts < 1) throw std::domain_error("simulate_partitioned: parts must be >= 1");
  if (!(budget > 0.0))
    throw std::domain_error("simulate_partitioned: budget must be positive");
  if (trials < 1) throw std::domain_error("simulate_partitioned: trials must be >= 1");

  const double part_budget = budget / static_cast<double>(parts);
  const double p = model.success_prob(part_budget);
  const std::int64_t queries = parts * model.queries_within(part_budget);

  std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(t));
    bool success = false;
    for (std::int64_t i = 0; i < parts; ++i)
      success = (rng.next_double() < p) || success;
    records[static_cast<std::size_t>(t)] = {budget, queries, success};
  }
  return detail::reduce(std::move(records));
}

// Which of the three inference strategies to simulate, with its parameters.
struct StrategySpec {
  enum class Kind { kshot, agent, partitioned_agent };

  Kind kind = Kind::kshot;
  std::int64_t parts = 1; // partitioned_agent only; 1 reduces to agent
  std::optional<SolverProfile> solver;      // kshot
  std::optional<SyntheticAgentModel> agent; // agent kinds
  double cost_log_sigma = 0.0;              // kshot cost noise, optional
};

struct SweepPoint {
  double budget = 0.0;
  double success_rate = 0.0;
  double mean_queries = 0.0;
  double mean_cost = 0.0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  BernoulliEstimate estimate; // Clopper-Pearson on the success count
};

/// Runs the strategy at each budget (ascending, monetary) and summarizes
/// one point per budget. Per-budget substreams derive from (seed, index),
/// so results are reproducible and order-independent.
inline std::vector<SweepPoint> sweep_curves(const StrategySpec& spec,
                                            const std::vector<double>& budgets,
                                            std::int64_t trials, std::uint64_t seed,
                                            double confidence = 0.95) {
  if (budgets.empty()) throw std::invalid_argument("sweep_curves: no budgets given");
  if (!std::is_sorted(budgets.begin(), budgets.end()))
    throw std::invalid_argument("sweep_curves: budgets must be sorted ascending");
  if (spec.kind == StrategySpec::Kind::kshot && !spec.solver.has_value())
    throw std::invalid_argument("sweep_curves: kshot spec needs a solver profile");
  if (spec.kind != StrategySpec::Kind::kshot && !spec.agent.has_value())
    throw std::invalid_argument("sweep_curves: agent spec needs an agent model");
  if (spec.parts < 1) throw std::domain_error("sweep_curves: parts must be >= 1");

  std::vector<SweepPoint> out;
  out.reserve(budgets.size());
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const std::uint64_t sub_seed = detail::scramble(seed ^ (0x5eedULL + i));
    SimResult res;
    switch (spec.kind) {
      case StrategySpec::Kind::kshot:
        res = simulate_kshot(*spec.solver, Budget::dollars(budgets[i]), trials,
                             sub_seed, spec.cost_log_sigma);
        break;
      case StrategySpec::Kind::agent:
        res = simulate_agent(*spec.agent, budgets[i], trials, sub_seed);
        break;
      case StrategySpec::Kind::partitioned_agent:
        res = simulate_partitioned(*spec.agent, budgets[i], spec.parts, trials,
                                   sub_seed);
        break;
    }
    SweepPoint pt;
    pt.budget = budgets[i];
    pt.success_rate = res.success_rate();
    pt.mean_queries = res.mean_queries;
    pt.mean_cost = res.mean_cost;
    pt.trials = res.trials;
    pt.successes = res.successes;
    pt.estimate = clopper_pearson(res.successes, res.trials, confidence);
    out.push_back(pt);
  }
  return out;
}

} // namespace relia
