#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "relia/profile.hpp"

namespace relia {

struct AllocationEntry {
  std::string solver_id;
  double attempts = 0.0; // integral for the exact solve, real for the LP
};

// How a budget is split across solvers. objective is the negative log
// failure likelihood of the whole allocation, in nats; success_prob is
// 1 - exp(-objective).
struct Allocation {
  std::vector<AllocationEntry> counts; // one entry per input solver, input order
  double total_cost = 0.0;
  double objective = 0.0;
  double success_prob = 0.0;
};

/// Thrown when quantized costs do not sit on the granularity grid.
class GranularityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the quantized budget grid exceeds the size cap; coarsen the
/// granularity and retry.
class GridLimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// LP relaxation of the budgeted allocation program. The optimum pours the
// whole budget into the solver with the best -ln(1-p)/c; ties go to the
// earliest solver in input order.
inline Allocation lp_allocate(const std::vector<SolverProfile>& solvers,
                              double budget) {
  if (solvers.empty())
    throw std::invalid_argument("lp_allocate: solver list is empty");
  if (!(budget >= 0.0))
    throw std::domain_error("lp_allocate: budget must be >= 0");

  std::size_t best = 0;
  for (std::size_t i = 1; i < solvers.size(); ++i)
    if (solvers[i].metric() > solvers[best].metric()) best = i;

  Allocation out;
  out.counts.reserve(solvers.size());
  for (const auto& s : solvers) out.counts.push_back({s.id(), 0.0});

  if (budget > 0.0) {
    out.counts[best].attempts = budget / solvers[best].attempt_cost();
    out.total_cost = out.counts[best].attempts * solvers[best].attempt_cost();
    out.objective = budget * solvers[best].metric();
    out.success_prob = -std::expm1(-out.objective);
  }
  return out;
}

// Exact integer allocation by dynamic programming over budget units of
// `granularity` dollars. Costs must be integer multiples of the granularity
// to 1e-6 relative; the budget is floored to whole units.
inline Allocation knapsack_allocate(const std::vector<SolverProfile>& solvers,
                                    double budget, double granularity = 0.01,
                                    std::size_t max_units = 1u << 22) {
  if (solvers.empty())
    throw std::invalid_argument("knapsack_allocate: solver list is empty");
  if (!(budget >= 0.0))
    throw std::domain_error("knapsack_allocate: budget must be >= 0");
  if (!(granularity > 0.0))
    throw std::domain_error("knapsack_allocate: granularity must be positive");

  const auto capacity_real = budget / granularity;
  if (capacity_real > static_cast<double>(max_units))
    throw GridLimitError("knapsack_allocate: budget grid of " +
                         std::to_string(capacity_real) + " units exceeds cap of " +
                         std::to_string(max_units) + "; coarsen the granularity");
  const auto capacity = static_cast<std::int64_t>(std::floor(capacity_real + 1e-9));

  std::vector<std::int64_t> units(solvers.size());
  std::vector<double> value(solvers.size());
  for (std::size_t i = 0; i < solvers.size(); ++i) {
    const double c = solvers[i].attempt_cost();
    const auto u = static_cast<std::int64_t>(std::llround(c / granularity));
    if (u < 1 || std::abs(static_cast<double>(u) * granularity - c) > 1e-6 * c)
      throw GranularityError("knapsack_allocate: cost of solver '" + solvers[i].id() +
                             "' is not a multiple of the granularity");
    units[i] = u;
    value[i] = -solvers[i].log_failure();
  }

  // Unbounded knapsack. choice[w] is the solver whose attempt ends at w,
  // or -1 where capacity w is best left as capacity w-1.
  std::vector<double> best(static_cast<std::size_t>(capacity) + 1, 0.0);
  std::vector<std::int32_t> choice(static_cast<std::size_t>(capacity) + 1, -1);
  for (std::int64_t w = 1; w <= capacity; ++w) {
    best[w] = best[w - 1];
    for (std::size_t i = 0; i < solvers.size(); ++i) {
      if (units[i] > w) continue;
      const double cand = best[w - units[i]] + value[i];
      if (cand > best[w]) {
        best[w] = cand;
        choice[w] = static_cast<std::int32_t>(i);
      }
    }
  }

  std::vector<std::int64_t> k(solvers.size(), 0);
  for (std::int64_t w = capacity; w > 0;) {
    if (choice[w] < 0) {
      --w;
    } else {
      ++k[choice[w]];
      w -= units[choice[w]];
    }
  }

  Allocation out;
  out.counts.reserve(solvers.size());
  for (std::size_t i = 0; i < solvers.size(); ++i) {
    out.counts.push_back({solvers[i].id(), static_cast<double>(k[i])});
    out.total_cost += static_cast<double>(k[i]) * solvers[i].attempt_cost();
    out.objective += static_cast<double>(k[i]) * value[i];
  }
  out.success_prob = -std::expm1(-out.objective);
  return out;
}

} // namespace relia
