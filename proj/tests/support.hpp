#pragma once

// Test-side oracles and process helpers. Everything here is deliberately
// independent of the library's computation paths: the knapsack oracle is a
// plain enumeration, the binomial tail is a direct Pascal-triangle sum, and
// the beta quantile check integrates the density by quadrature.

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

struct BruteForceAllocation {
  double objective = 0.0;
  std::vector<std::int64_t> counts;
};

namespace detail {
inline void enumerate(const std::vector<double>& values,
                      const std::vector<std::int64_t>& weights, std::size_t i,
                      std::int64_t remaining, double objective,
                      std::vector<std::int64_t>& current, BruteForceAllocation& best) {
  if (i == values.size()) {
    if (objective > best.objective) {
      best.objective = objective;
      best.counts = current;
    }
    return;
  }
  const std::int64_t max_k = remaining / weights[i];
  for (std::int64_t k = 0; k <= max_k; ++k) {
    current[i] = k;
    enumerate(values, weights, i + 1, remaining - k * weights[i],
              objective + static_cast<double>(k) * values[i], current, best);
  }
  current[i] = 0;
}
} // namespace detail

/// Exhaustive unbounded-knapsack optimum over integer count vectors.
inline BruteForceAllocation brute_force_allocate(const std::vector<double>& values,
                                                 const std::vector<std::int64_t>& weights,
                                                 std::int64_t capacity) {
  BruteForceAllocation best;
  best.counts.assign(values.size(), 0);
  std::vector<std::int64_t> current(values.size(), 0);
  detail::enumerate(values, weights, 0, capacity, 0.0, current, best);
  return best;
}

/// Binomial coefficients by Pascal's triangle, exact in double for n <= 55.
inline std::vector<double> binomial_row(int n) {
  std::vector<double> row{1.0};
  for (int i = 1; i <= n; ++i) {
    std::vector<double> next(static_cast<std::size_t>(i) + 1, 1.0);
    for (int k = 1; k < i; ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
  }
  return row;
}

/// P[X >= s] for X ~ Binomial(n, p), direct summation.
inline double binom_upper_tail(int n, int s, double p) {
  const auto choose = binomial_row(n);
  double tail = 0.0;
  for (int k = s; k <= n; ++k)
    tail += choose[k] * std::pow(p, k) * std::pow(1.0 - p, n - k);
  return tail;
}

/// P[X <= s].
inline double binom_lower_tail(int n, int s, double p) {
  const auto choose = binomial_row(n);
  double tail = 0.0;
  for (int k = 0; k <= s; ++k)
    tail += choose[k] * std::pow(p, k) * std::pow(1.0 - p, n - k);
  return tail;
}

/// Integral of the Beta(a, b) density over [0, x], composite Simpson.
inline double beta_cdf_quadrature(double a, double b, double x, int intervals = 20000) {
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const auto pdf = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp(log_norm + (a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t));
  };
  const double h = x / intervals;
  double sum = pdf(0.0) + pdf(x);
  for (int i = 1; i < intervals; ++i)
    sum += pdf(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::filesystem::path temp_file_path(const std::string& stem) {
  static std::mt19937_64 gen(std::random_device{}());
  return std::filesystem::temp_directory_path() /
         (stem + "-" + std::to_string(gen()) + ".tmp");
}

inline std::filesystem::path write_temp_file(const std::string& stem,
                                             const std::string& contents) {
  const auto path = temp_file_path(stem);
  std::ofstream out(path);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

/// Runs the CLI binary with the given argument string, capturing stdout,
/// stderr, and the exit code.
inline CliResult run_cli(const std::string& args) {
  const auto err_path = temp_file_path("cli-stderr");
  const std::string cmd =
      std::string(RELIA_CLI_PATH) + " " + args + " 2>" + err_path.string();
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + cmd);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = read_file(err_path);
  std::filesystem::remove(err_path);
  return result;
}

} // namespace testsupport
