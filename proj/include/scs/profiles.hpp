#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace scs::profiles {

using Matrix = std::vector<std::vector<double>>;

/// Problems x solvers table of one performance metric (smaller is better).
struct ResultsTable {
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  Matrix metric;                         // metric[p][s] >= 0
  std::vector<std::vector<bool>> solved;  // solved[p][s]

  void validate() const;
};

struct Ratios {
  Matrix r;  // r[p][s]
  double r_max = 1.0;
};

/// Dolan-More ratios t_ps / min_s t_ps over solvers that solved p.
///
/// r_max is the largest finite ratio. When some entry failed, r_max is
/// pushed to 1.05x that value and every failed entry is set to it, so
/// failures sit strictly to the right of all successes.
Ratios performance_ratios(const ResultsTable& table);

/// Fraction of problems with r[p][s] <= tau, for each tau.
std::vector<double> profile_curve(const Matrix& r, std::size_t solver, std::span<const double> tau);

/// Geometric grid on [1, r_max].
std::vector<double> tau_grid(double r_max, std::size_t points = 512);

struct Profile {
  std::vector<std::string> solvers;
  std::vector<double> tau;
  Matrix rho;  // rho[s][i] at tau[i]
  double r_max = 1.0;
};

Profile make_profile(const ResultsTable& table, std::size_t points = 512);

inline constexpr double kMetricFloor = 1e-16;

/// Outcome of one (problem, solver) run as needed for profiling.
struct RunSummary {
  std::string problem;
  std::string solver;
  double f_min = 0.0;
  double error = 0.0;  // only used by the threshold rule
  double evals = 0.0;
  double cpu_seconds = 0.0;
};

enum class SolvedRule {
  Threshold,   // error < 0.1 against a known optimum
  TenPercent,  // f_min within 10% of the best f_min over solvers
};

/// One table per metric. Threshold yields "error", "evals", "cpu";
/// TenPercent yields "f_min", "evals", "cpu". Every (problem, solver) pair
/// must be present exactly once.
std::map<std::string, ResultsTable> metrics_from_results(std::span<const RunSummary> runs, SolvedRule rule);

}  // namespace scs::profiles
