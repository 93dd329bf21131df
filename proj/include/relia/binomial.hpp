#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relia {

// Exact binomial estimate with a Clopper-Pearson interval.
struct BernoulliEstimate {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double confidence = 0.95;
  double lower = 0.0;
  double upper = 1.0;
  std::optional<double> point; // s/n; absent when trials == 0

  double length() const { return upper - lower; }
};

// Sample until the interval is shorter than target_length, or max_trials.
struct StoppingRule {
  double target_length;
  double confidence;
  std::int64_t max_trials;

  explicit StoppingRule(double target_length_, double confidence_ = 0.95,
                        std::int64_t max_trials_ = 10'000)
      : target_length(target_length_),
        confidence(confidence_),
        max_trials(max_trials_) {
    if (!(target_length > 0.0 && target_length <= 1.0))
      throw std::domain_error("StoppingRule: target length must be in (0,1]");
    if (!(confidence > 0.0 && confidence < 1.0))
      throw std::domain_error("StoppingRule: confidence must be in (0,1)");
    if (max_trials < 1)
      throw std::domain_error("StoppingRule: max_trials must be >= 1");
  }
};

namespace detail {

// log P[X >= s] for X ~ Binomial(n, p), via log-sum-exp over the tail
// terms. Log-space keeps the sum stable when the tail mass underflows.
inline double log_upper_tail(std::int64_t n, std::int64_t s, double p) {
  if (s <= 0) return 0.0; // probability 1
  if (s > n) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return 0.0;

  const double logp = std::log(p);
  const double log1mp = std::log1p(-p);

  // Running log C(n,k) from k = s upward.
  double log_choose = std::lgamma(static_cast<double>(n) + 1.0) -
                      std::lgamma(static_cast<double>(s) + 1.0) -
                      std::lgamma(static_cast<double>(n - s) + 1.0);
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n - s + 1));
  for (std::int64_t k = s; k <= n; ++k) {
    const double t = log_choose + static_cast<double>(k) * logp +
                     static_cast<double>(n - k) * log1mp;
    terms.push_back(t);
    if (t > max_term) max_term = t;
    if (k < n)
      log_choose += std::log(static_cast<double>(n - k) / static_cast<double>(k + 1));
  }

  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  return max_term + std::log(sum);
}

// Solves log_tail(p) = log(target) for p by bisection. The upper tail is
// monotone increasing in p, so the root is unique.
inline double invert_upper_tail(std::int64_t n, std::int64_t s, double log_target) {
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (log_upper_tail(n, s, mid) < log_target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace detail

// Exact (conservative) Clopper-Pearson interval: lower solves
// P[X >= s] = alpha/2 (0 when s = 0), upper solves P[X <= s] = alpha/2
// (1 when s = n). Bounds are accurate to 1e-9.
inline BernoulliEstimate clopper_pearson(std::int64_t successes, std::int64_t trials,
                                         double confidence = 0.95) {
  if (trials < 1) throw std::domain_error("clopper_pearson: need at least one trial");
  if (successes < 0 || successes > trials)
    throw std::domain_error("clopper_pearson: successes must be in [0, trials]");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::domain_error("clopper_pearson: confidence must be in (0,1)");

  const double log_half_alpha = std::log((1.0 - confidence) / 2.0);

  BernoulliEstimate est;
  est.successes = successes;
  est.trials = trials;
  est.confidence = confidence;
  est.point = static_cast<double>(successes) / static_cast<double>(trials);

  est.lower = successes == 0
                  ? 0.0
                  : detail::invert_upper_tail(trials, successes, log_half_alpha);
  // P[X <= s] = 1 - P[X >= s+1]; solve on the complement so both bounds
  // share one monotone-increasing inverter.
  if (successes == trials) {
    est.upper = 1.0;
  } else {
    const double target = std::log1p(-std::exp(log_half_alpha));
    est.upper = detail::invert_upper_tail(trials, successes + 1, target);
  }
  return est;
}

/// Whether CI(s,n) is the mirror image of CI(n-s,n) about 1/2, to 1e-9.
inline bool mirror_symmetry_check(std::int64_t successes, std::int64_t trials,
                                  double confidence = 0.95) {
  const auto a = clopper_pearson(successes, trials, confidence);
  const auto b = clopper_pearson(trials - successes, trials, confidence);
  return std::abs(a.lower - (1.0 - b.upper)) <= 1e-9 &&
         std::abs(a.upper - (1.0 - b.lower)) <= 1e-9;
}

struct AdaptiveEstimate {
  BernoulliEstimate estimate;
  bool met_target = false;
};

/// Draws from `oracle` until the Clopper-Pearson interval is shorter than
/// the target length or max_trials is reached; at least one draw always
/// happens. Oracle exceptions are rethrown annotated with the trial index.
inline AdaptiveEstimate adaptive_estimate(const std::function<bool()>& oracle,
                                          const StoppingRule& rule) {
  std::int64_t s = 0, n = 0;
  BernoulliEstimate est;
  while (n < rule.max_trials) {
    bool outcome = false;
    try {
      outcome = oracle();
    } catch (const std::exception& e) {
      throw std::runtime_error("adaptive_estimate: oracle failed at trial " +
                               std::to_string(n + 1) + ": " + e.what());
    }
    ++n;
    if (outcome) ++s;
    est = clopper_pearson(s, n, rule.confidence);
    if (est.length() <= rule.target_length) return {est, true};
  }
  return {est, est.length() <= rule.target_length};
}

/// Variant fed by a pre-drawn outcome sequence (e.g. batched draws).
/// Consumes outcomes in order and stops by the same rule; returns with
/// met_target = false if the sequence runs out first.
inline AdaptiveEstimate adaptive_estimate(const std::vector<bool>& outcomes,
                                          const StoppingRule& rule) {
  if (outcomes.empty())
    throw std::invalid_argument("adaptive_estimate: outcome sequence is empty");
  std::int64_t s = 0, n = 0;
  BernoulliEstimate est;
  for (bool outcome : outcomes) {
    if (n >= rule.max_trials) break;
    ++n;
    if (outcome) ++s;
    est = clopper_pearson(s, n, rule.confidence);
    if (est.length() <= rule.target_length) return {est, true};
  }
  return {est, est.length() <= rule.target_length};
}

} // namespace relia
