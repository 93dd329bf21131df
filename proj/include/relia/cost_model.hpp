#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relia {

// Power-law cost model: cost(q) = a + b * q^gamma with gamma > 1 when
// fitted. a and b may be any reals; consumers that need positive predicted
// costs must check for themselves.
struct CostScalingModel {
  double a = 0.0;     // dollars
  double b = 0.0;     // dollars per query^gamma
  double gamma = 2.0; // exponent
  double rss = 0.0;   // residual sum of squares of the fit
  int n_points = 0;   // observations behind the fit (0 for hand-made models)
};

/// Signals that fit_power_law could not place gamma strictly inside (1, gamma_max].
class FitError : public std::runtime_error {
 public:
  enum class Code {
    gamma_at_upper_bound, // best fit pinned at gamma_max: model misspecified
    gamma_not_above_one,  // data wants gamma <= 1, outside the model family
  };

  FitError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

/// Predicted cost a + b*q^gamma for q >= 1 queries.
inline double predict_cost(const CostScalingModel& model, std::int64_t q) {
  if (q < 1) throw std::domain_error("predict_cost: q must be >= 1");
  return model.a + model.b * std::pow(static_cast<double>(q), model.gamma);
}

/// Coefficients normalized by a baseline attempt cost: (a/c1, b/c1).
inline std::pair<double, double> normalize(const CostScalingModel& model,
                                           double base_cost) {
  if (!(base_cost > 0.0))
    throw std::domain_error("normalize: base cost must be positive");
  return {model.a / base_cost, model.b / base_cost};
}

namespace detail {

// For fixed gamma the model is linear in (a, b); solve the centered normal
// equations. Returns (a, b, rss).
struct LinearFit {
  double a, b, rss;
};

inline LinearFit fit_for_gamma(const std::vector<std::pair<std::int64_t, double>>& pts,
                               double gamma) {
  const auto n = static_cast<double>(pts.size());
  double xbar = 0.0, ybar = 0.0;
  std::vector<double> x(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x[i] = std::pow(static_cast<double>(pts[i].first), gamma);
    xbar += x[i];
    ybar += pts[i].second;
  }
  xbar /= n;
  ybar /= n;

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dx = x[i] - xbar;
    sxx += dx * dx;
    sxy += dx * (pts[i].second - ybar);
  }
  const double b = sxy / sxx; // sxx > 0: distinct q and gamma > 0
  const double a = ybar - b * xbar;

  double rss = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = a + b * x[i] - pts[i].second;
    rss += r * r;
  }
  return {a, b, rss};
}

} // namespace detail

// Least-squares fit of cost(q) = a + b*q^gamma over gamma in (1, gamma_max].
// The inner (a, b) problem is linear; the outer gamma search walks a coarse
// grid (step 0.01) and then golden-section refines around the best grid
// point to 1e-8. Fits pinned at either end of the gamma range raise
// FitError rather than returning a clamped exponent.
inline CostScalingModel fit_power_law(
    const std::vector<std::pair<std::int64_t, double>>& points,
    double gamma_max = 6.0) {
  std::vector<std::pair<std::int64_t, double>> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](auto& l, auto& r) { return l.first == r.first; }),
            pts.end());
  if (pts.size() < 3)
    throw std::invalid_argument("fit_power_law: need >= 3 distinct q values");
  for (const auto& [q, cost] : pts) {
    if (q < 1) throw std::domain_error("fit_power_law: q must be >= 1");
    if (!(cost > 0.0)) throw std::domain_error("fit_power_law: costs must be positive");
  }

  constexpr double kStep = 0.01;
  const double gamma_lo = 1.0 + 1e-9;

  double best_gamma = 1.0 + kStep;
  double best_rss = detail::fit_for_gamma(pts, best_gamma).rss;
  const auto n_grid = static_cast<int>(std::floor((gamma_max - 1.0) / kStep + 1e-9));
  for (int i = 2; i <= n_grid; ++i) {
    const double g = 1.0 + i * kStep;
    const double rss = detail::fit_for_gamma(pts, g).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best_gamma = g;
    }
  }

  // Golden-section refinement on the bracket around the best grid point.
  // Runs well past the 1e-8 design tolerance: the rss comparisons stay
  // informative down to ulp-level gaps, and the extra iterations are what
  // push noiseless round-trip recovery to machine precision.
  double lo = std::max(gamma_lo, best_gamma - kStep);
  double hi = std::min(gamma_max, best_gamma + kStep);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = detail::fit_for_gamma(pts, x1).rss;
  double f2 = detail::fit_for_gamma(pts, x2).rss;
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = detail::fit_for_gamma(pts, x1).rss;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = detail::fit_for_gamma(pts, x2).rss;
    }
  }
  const double gamma = 0.5 * (lo + hi);

  if (gamma >= gamma_max - 1e-6)
    throw FitError(FitError::Code::gamma_at_upper_bound,
                   "fit_power_law: best fit sits at gamma_max = " +
                       std::to_string(gamma_max) + "; model misspecified");
  if (gamma <= 1.0 + 2e-6)
    throw FitError(FitError::Code::gamma_not_above_one,
                   "fit_power_law: data prefers gamma <= 1, outside the model family");

  const auto fit = detail::fit_for_gamma(pts, gamma);
  CostScalingModel model;
  model.a = fit.a;
  model.b = fit.b;
  model.gamma = gamma;
  model.rss = fit.rss;
  model.n_points = static_cast<int>(pts.size());
  return model;
}

} // namespace relia
