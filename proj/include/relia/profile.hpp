#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace relia {

// Default per-problem caps for the two budget regimes.
inline constexpr double kDefaultMonetaryCap = 2.0;   // dollars
inline constexpr std::int64_t kDefaultQueryCap = 50; // model calls

/// Negative log failure likelihood per dollar: -ln(1-p)/c.
///
/// Strictly positive for p in (0,1), increasing in p, homogeneous of
/// degree -1 in c. Throws std::domain_error outside the valid domain.
inline double metric(double success_prob, double attempt_cost) {
  if (!(success_prob > 0.0 && success_prob < 1.0))
    throw std::domain_error("metric: success probability must be in (0,1)");
  if (!(attempt_cost > 0.0))
    throw std::domain_error("metric: attempt cost must be positive");
  return -std::log1p(-success_prob) / attempt_cost;
}

// A retryable success-or-fail solver. The failure likelihood is kept in
// log space (ln(1-p)); deriving k-shot variants scales that log exactly,
// so the per-dollar metric stays k-invariant even where 1-(1-p)^k is
// indistinguishable from 1 in double precision.
class SolverProfile {
 public:
  SolverProfile(std::string id, double success_prob, double attempt_cost)
      : id_(std::move(id)), cost_(attempt_cost) {
    if (!(success_prob > 0.0 && success_prob < 1.0))
      throw std::domain_error("SolverProfile: success probability must be in (0,1)");
    if (!(attempt_cost > 0.0))
      throw std::domain_error("SolverProfile: attempt cost must be positive");
    log_failure_ = std::log1p(-success_prob);
  }

  /// Builds a profile directly from ln(1-p) < 0.
  static SolverProfile from_log_failure(std::string id, double log_failure,
                                        double attempt_cost) {
    if (!(log_failure < 0.0) || std::isinf(log_failure))
      throw std::domain_error("SolverProfile: log failure must be finite and negative");
    if (!(attempt_cost > 0.0))
      throw std::domain_error("SolverProfile: attempt cost must be positive");
    SolverProfile p;
    p.id_ = std::move(id);
    p.log_failure_ = log_failure;
    p.cost_ = attempt_cost;
    return p;
  }

  const std::string& id() const { return id_; }
  double success_prob() const { return -std::expm1(log_failure_); }
  double log_failure() const { return log_failure_; }
  double attempt_cost() const { return cost_; }

  /// -ln(1-p)/c of this solver.
  double metric() const { return -log_failure_ / cost_; }

 private:
  SolverProfile() = default;

  std::string id_;
  double log_failure_ = 0.0; // ln(1 - success_prob), < 0
  double cost_ = 0.0;
};

/// The solver obtained by bundling k independent attempts into one:
/// success 1-(1-p)^k at cost k*c. Its metric equals the base metric.
inline SolverProfile kshot_profile(const SolverProfile& solver, std::int64_t k) {
  if (k < 1) throw std::domain_error("kshot_profile: k must be >= 1");
  return SolverProfile::from_log_failure(
      solver.id(), static_cast<double>(k) * solver.log_failure(),
      static_cast<double>(k) * solver.attempt_cost());
}

// Per-problem budget: a monetary cap in dollars or a cap on attempts.
class Budget {
 public:
  enum class Kind { monetary, query_count };

  static Budget dollars(double amount) {
    if (!(amount >= 0.0)) throw std::domain_error("Budget: amount must be >= 0");
    Budget b;
    b.kind_ = Kind::monetary;
    b.amount_ = amount;
    return b;
  }

  static Budget queries(std::int64_t count) {
    if (count < 0) throw std::domain_error("Budget: count must be >= 0");
    Budget b;
    b.kind_ = Kind::query_count;
    b.count_ = count;
    return b;
  }

  Kind kind() const { return kind_; }

  double amount() const {
    if (kind_ != Kind::monetary)
      throw std::logic_error("Budget: amount() on a query-count budget");
    return amount_;
  }

  std::int64_t count() const {
    if (kind_ != Kind::query_count)
      throw std::logic_error("Budget: count() on a monetary budget");
    return count_;
  }

 private:
  Budget() = default;

  Kind kind_ = Kind::monetary;
  double amount_ = 0.0;
  std::int64_t count_ = 0;
};

} // namespace relia
