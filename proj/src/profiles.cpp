#include "scs/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scs/benchmarks.hpp"

namespace scs::profiles {

void ResultsTable::validate() const {
  if (problems.empty() || solvers.empty()) throw std::invalid_argument("results table: no problems or solvers");
  if (metric.size() != problems.size() || solved.size() != problems.size()) {
    throw std::invalid_argument("results table: row count does not match problem list");
  }
  for (std::size_t p = 0; p < problems.size(); ++p) {
    if (metric[p].size() != solvers.size() || solved[p].size() != solvers.size()) {
      throw std::invalid_argument("results table: column count does not match solver list");
    }
    for (double t : metric[p]) {
      if (!(t >= 0.0)) throw std::invalid_argument("results table: metric values must be >= 0");
    }
  }
}

Ratios performance_ratios(const ResultsTable& table) {
  table.validate();
  const std::size_t np = table.problems.size();
  const std::size_t ns = table.solvers.size();
  constexpr double kFailed = -1.0;

  Ratios out;
  out.r.assign(np, std::vector<double>(ns, kFailed));
  double max_finite = 1.0;
  bool any_failed = false;
  for (std::size_t p = 0; p < np; ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ns; ++s) {
      if (table.solved[p][s]) best = std::min(best, table.metric[p][s]);
    }
    for (std::size_t s = 0; s < ns; ++s) {
      if (!table.solved[p][s]) {
        any_failed = true;
        continue;
      }
      const double t = table.metric[p][s];
      double ratio;
      if (best > 0.0) {
        ratio = t / best;
      } else {
        ratio = t == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
      }
      if (std::isinf(ratio)) {
        any_failed = true;
        continue;
      }
      out.r[p][s] = ratio;
      max_finite = std::max(max_finite, ratio);
    }
  }
  out.r_max = any_failed ? 1.05 * max_finite : max_finite;
  for (auto& row : out.r) {
    for (double& v : row) {
      if (v == kFailed) v = out.r_max;
    }
  }
  return out;
}

std::vector<double> profile_curve(const Matrix& r, std::size_t solver, std::span<const double> tau) {
  std::vector<double> rho(tau.size(), 0.0);
  if (r.empty()) return rho;
  const double np = static_cast<double>(r.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    std::size_t count = 0;
    for (const auto& row : r) {
      if (row.at(solver) <= tau[i]) ++count;
    }
    rho[i] = static_cast<double>(count) / np;
  }
  return rho;
}

std::vector<double> tau_grid(double r_max, std::size_t points) {
  if (!(r_max >= 1.0)) throw std::invalid_argument("tau_grid: r_max must be >= 1");
  if (points < 2) throw std::invalid_argument("tau_grid: need at least two points");
  std::vector<double> tau(points);
  const double top = std::log2(r_max);
  for (std::size_t i = 0; i < points; ++i) {
    tau[i] = std::exp2(top * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  tau.front() = 1.0;
  tau.back() = r_max;
  return tau;
}

Profile make_profile(const ResultsTable& table, std::size_t points) {
  const Ratios ratios = performance_ratios(table);
  Profile profile;
  profile.solvers = table.solvers;
  profile.r_max = ratios.r_max;
  profile.tau = tau_grid(ratios.r_max, points);
  for (std::size_t s = 0; s < table.solvers.size(); ++s) {
    profile.rho.push_back(profile_curve(ratios.r, s, profile.tau));
  }
  return profile;
}

std::map<std::string, ResultsTable> metrics_from_results(std::span<const RunSummary> runs, SolvedRule rule) {
  if (runs.empty()) throw std::invalid_argument("metrics_from_results: no runs");

  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  auto index_of = [](std::vector<std::string>& ids, const std::string& id) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it != ids.end()) return static_cast<std::size_t>(it - ids.begin());
    ids.push_back(id);
    return ids.size() - 1;
  };
  for (const RunSummary& run : runs) {
    index_of(problems, run.problem);
    index_of(solvers, run.solver);
  }

  const std::size_t np = problems.size();
  const std::size_t ns = solvers.size();
  std::vector<std::vector<const RunSummary*>> grid(np, std::vector<const RunSummary*>(ns, nullptr));
  for (const RunSummary& run : runs) {
    auto& cell = grid[index_of(problems, run.problem)][index_of(solvers, run.solver)];
    if (cell) throw std::invalid_argument("metrics_from_results: duplicate run for " + run.problem + "/" + run.solver);
    cell = &run;
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t s = 0; s < ns; ++s) {
      if (!grid[p][s]) {
        throw std::invalid_argument("metrics_from_results: missing run for " + problems[p] + "/" + solvers[s]);
      }
    }
  }

  auto blank = [&] {
    ResultsTable t;
    t.problems = problems;
    t.solvers = solvers;
    t.metric.assign(np, std::vector<double>(ns, 0.0));
    t.solved.assign(np, std::vector<bool>(ns, false));
    return t;
  };
  ResultsTable quality = blank();
  ResultsTable evals = blank();
  ResultsTable cpu = blank();

  for (std::size_t p = 0; p < np; ++p) {
    double best_f = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ns; ++s) best_f = std::min(best_f, grid[p][s]->f_min);
    for (std::size_t s = 0; s < ns; ++s) {
      const RunSummary& run = *grid[p][s];
      bool solved;
      if (rule == SolvedRule::Threshold) {
        solved = bench::is_solved(run.error);
        quality.metric[p][s] = std::max(run.error, kMetricFloor);
      } else {
        solved = run.f_min <= best_f + 0.1 * std::abs(best_f);
        quality.metric[p][s] = std::max(run.f_min, kMetricFloor);
      }
      evals.metric[p][s] = std::max(run.evals, kMetricFloor);
      cpu.metric[p][s] = std::max(run.cpu_seconds, kMetricFloor);
      quality.solved[p][s] = evals.solved[p][s] = cpu.solved[p][s] = solved;
    }
  }

  std::map<std::string, ResultsTable> out;
  out.emplace(rule == SolvedRule::Threshold ? "error" : "f_min", std::move(quality));
  out.emplace("evals", std::move(evals));
  out.emplace("cpu", std::move(cpu));
  return out;
}

}  // namespace scs::profiles
