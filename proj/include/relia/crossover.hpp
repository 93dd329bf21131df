#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relia/cost_model.hpp"
#include "relia/profile.hpp"

namespace relia {

// One empirical operating point of a multi-query solver: q queries give
// success probability pi_q at cost zeta_q dollars.
struct AgentScalingPoint {
  std::int64_t queries;
  double success_prob; // in [0, 1)
  double cost;         // dollars, > 0

  AgentScalingPoint(std::int64_t queries_, double success_prob_, double cost_)
      : queries(queries_), success_prob(success_prob_), cost(cost_) {
    if (queries < 1)
      throw std::domain_error("AgentScalingPoint: queries must be >= 1");
    if (!(success_prob >= 0.0 && success_prob < 1.0))
      throw std::domain_error("AgentScalingPoint: success probability must be in [0,1)");
    if (!(cost > 0.0))
      throw std::domain_error("AgentScalingPoint: cost must be positive");
  }
};

struct CrossoverDecision {
  bool holds = false;          // agent metric >= repeated-single-call metric
  bool certain_success = false; // pi_q == 1: infinite metric, trivially true
  bool below_q_range = false;   // q == 1: outside the q >= 2 statement, informational

  explicit operator bool() const { return holds; }
};

// Decides whether a q-query solver with success probability pi_q beats
// repeating the base solver independently, i.e. whether
//   pi_q >= 1 - (1 - p1)^(a' + b' q^gamma),  a' = a/c1, b' = b/c1,
// with cost a + b*q^gamma taken from the fitted model. Ties count as
// holding. Equivalent to comparing the two per-dollar metrics directly.
inline CrossoverDecision crossover_holds(const SolverProfile& base,
                                         const CostScalingModel& model,
                                         std::int64_t q, double pi_q) {
  if (q < 1) throw std::domain_error("crossover_holds: q must be >= 1");
  if (!(model.gamma > 1.0))
    throw std::domain_error("crossover_holds: model gamma must be > 1");
  if (!(pi_q >= 0.0 && pi_q <= 1.0))
    throw std::domain_error("crossover_holds: pi_q must be in [0,1]");

  const double agent_cost = predict_cost(model, q);
  if (!(agent_cost > 0.0))
    throw std::domain_error("crossover_holds: model predicts non-positive cost at q");

  CrossoverDecision out;
  out.below_q_range = (q == 1);
  if (pi_q == 1.0) {
    out.holds = true;
    out.certain_success = true;
    return out;
  }

  const auto [a_prime, b_prime] = normalize(model, base.attempt_cost());
  const double exponent =
      a_prime + b_prime * std::pow(static_cast<double>(q), model.gamma);
  const double threshold = -std::expm1(exponent * base.log_failure());
  out.holds = pi_q >= threshold;
  return out;
}

// Cost-optimal number of moves: the point maximizing -ln(1-pi_q)/zeta_q.
// Ties break toward smaller q; a point with pi_q = 0 contributes metric 0.
inline std::pair<std::int64_t, double> optimal_moves(
    const std::vector<AgentScalingPoint>& points) {
  if (points.empty())
    throw std::invalid_argument("optimal_moves: point list is empty");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].queries == points[j].queries)
        throw std::invalid_argument("optimal_moves: duplicate query count " +
                                    std::to_string(points[i].queries));

  std::int64_t best_q = 0;
  double best_metric = -1.0;
  for (const auto& pt : points) {
    const double m = -std::log1p(-pt.success_prob) / pt.cost;
    if (m > best_metric || (m == best_metric && pt.queries < best_q)) {
      best_metric = m;
      best_q = pt.queries;
    }
  }
  return {best_q, best_metric};
}

} // namespace relia
