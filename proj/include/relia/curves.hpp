#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relia/binomial.hpp"
#include "relia/profile.hpp"
#include "relia/run_log.hpp"
#include "relia/text.hpp"

namespace relia {

enum class CurveAxis { cost, queries };

struct CurvePoint {
  double threshold = 0.0;
  std::int64_t solved = 0;
};

// Cumulative solved problems as a step function of a resource threshold.
struct Curve {
  CurveAxis axis = CurveAxis::cost;
  std::vector<CurvePoint> points; // thresholds strictly ascending
};

namespace detail {

// Resource spent through the first OK attempt of each problem, scanning
// attempts in attempt_index order. Problems that never pass are absent.
inline std::map<std::string, double> solve_values(
    const std::vector<RunRecord>& records, std::string_view strategy,
    CurveAxis axis) {
  std::map<std::string, std::vector<const RunRecord*>> by_problem;
  for (const auto& r : records)
    if (r.strategy == strategy) by_problem[r.problem_id].push_back(&r);

  std::map<std::string, double> solved_at;
  for (auto& [problem, attempts] : by_problem) {
    std::sort(attempts.begin(), attempts.end(),
              [](const RunRecord* a, const RunRecord* b) {
                return a->attempt_index < b->attempt_index;
              });
    double cumulative = 0.0;
    for (const RunRecord* r : attempts) {
      cumulative +=
          axis == CurveAxis::cost ? r->cost : static_cast<double>(r->queries);
      if (r->verdict == Verdict::ok) {
        solved_at.emplace(problem, cumulative);
        break;
      }
    }
  }
  return solved_at;
}

inline std::vector<std::string> strategies_in_order(
    const std::vector<RunRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (std::find(out.begin(), out.end(), r.strategy) == out.end())
      out.push_back(r.strategy);
  return out;
}

inline void check_thresholds(const std::vector<double>& thresholds) {
  if (thresholds.empty())
    throw std::invalid_argument("cumulative_curve: no thresholds given");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (!(thresholds[i] > thresholds[i - 1]))
      throw std::invalid_argument("cumulative_curve: thresholds must be strictly ascending");
}

inline Curve count_curve(const std::map<std::string, double>& solved_at,
                         CurveAxis axis, const std::vector<double>& thresholds) {
  Curve curve;
  curve.axis = axis;
  curve.points.reserve(thresholds.size());
  for (double t : thresholds) {
    std::int64_t solved = 0;
    for (const auto& [problem, value] : solved_at)
      if (value <= t) ++solved;
    curve.points.push_back({t, solved});
  }
  return curve;
}

} // namespace detail

// Counts, per threshold, the problems whose cumulative cost (or queries)
// through their first OK attempt is <= the threshold, for one strategy.
inline Curve cumulative_curve(const std::vector<RunRecord>& records,
                              std::string_view strategy, CurveAxis axis,
                              const std::vector<double>& thresholds) {
  detail::check_thresholds(thresholds);
  return detail::count_curve(detail::solve_values(records, strategy, axis), axis,
                             thresholds);
}

/// Pooled aggregation: all strategies' attempts count toward one curve; a
/// problem's solve value is the cheapest first-OK across strategies.
inline Curve pooled_curve(const std::vector<RunRecord>& records, CurveAxis axis,
                          const std::vector<double>& thresholds) {
  detail::check_thresholds(thresholds);
  std::map<std::string, double> best;
  for (const auto& strategy : detail::strategies_in_order(records)) {
    for (const auto& [problem, value] : detail::solve_values(records, strategy, axis)) {
      auto [it, inserted] = best.emplace(problem, value);
      if (!inserted && value < it->second) it->second = value;
    }
  }
  return detail::count_curve(best, axis, thresholds);
}

/// Per-strategy curves, strategies in order of first appearance.
inline std::vector<std::pair<std::string, Curve>> curves_by_strategy(
    const std::vector<RunRecord>& records, CurveAxis axis,
    const std::vector<double>& thresholds) {
  detail::check_thresholds(thresholds);
  std::vector<std::pair<std::string, Curve>> out;
  for (const auto& name : detail::strategies_in_order(records))
    out.emplace_back(name, cumulative_curve(records, name, axis, thresholds));
  return out;
}

/// Mean aggregation: arithmetic mean of per-strategy solved counts at each
/// threshold (real-valued).
inline std::vector<std::pair<double, double>> mean_curve(
    const std::vector<RunRecord>& records, CurveAxis axis,
    const std::vector<double>& thresholds) {
  const auto per_strategy = curves_by_strategy(records, axis, thresholds);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    double sum = 0.0;
    for (const auto& [name, curve] : per_strategy)
      sum += static_cast<double>(curve.points[i].solved);
    out.emplace_back(thresholds[i],
                     per_strategy.empty()
                         ? 0.0
                         : sum / static_cast<double>(per_strategy.size()));
  }
  return out;
}

// Per-strategy attempt-level summary: success rate, mean attempt cost, the
// per-dollar metric, and a Clopper-Pearson interval on the rate. The metric
// is absent at rate 0 or 1 (and at zero mean cost), with the reason noted.
struct MetricRow {
  std::string strategy;
  std::int64_t attempts = 0;
  std::int64_t ok = 0;
  double success_rate = 0.0;
  double mean_cost = 0.0;
  std::optional<double> metric;
  std::string metric_note; // empty when metric is present
  BernoulliEstimate interval;
};

inline std::vector<MetricRow> metric_table(const std::vector<RunRecord>& records,
                                           double confidence = 0.95) {
  std::vector<MetricRow> rows;
  for (const auto& r : records) {
    MetricRow* row = nullptr;
    for (auto& existing : rows)
      if (existing.strategy == r.strategy) row = &existing;
    if (row == nullptr) {
      rows.push_back({});
      rows.back().strategy = r.strategy;
      row = &rows.back();
    }
    ++row->attempts;
    if (r.verdict == Verdict::ok) ++row->ok;
    row->mean_cost += r.cost;
  }
  for (auto& row : rows) {
    row.mean_cost /= static_cast<double>(row.attempts);
    row.success_rate =
        static_cast<double>(row.ok) / static_cast<double>(row.attempts);
    row.interval = clopper_pearson(row.ok, row.attempts, confidence);
    if (row.ok == 0) {
      row.metric_note = "rate=0";
    } else if (row.ok == row.attempts) {
      row.metric_note = "rate=1";
    } else if (!(row.mean_cost > 0.0)) {
      row.metric_note = "mean_cost=0";
    } else {
      row.metric = metric(row.success_rate, row.mean_cost);
    }
  }
  return rows;
}

/// CSV form of a curve, matching the `curves` CLI output byte for byte.
inline std::string curve_to_csv(const Curve& curve) {
  std::ostringstream out;
  out << "threshold,solved_count\n";
  for (const auto& pt : curve.points)
    out << format_double(pt.threshold) << ',' << pt.solved << '\n';
  return out.str();
}

} // namespace relia
