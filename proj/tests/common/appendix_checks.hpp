#pragma once

// Empirical checks of the convergence lemmas, shared by the unit tests and
// the acceptance runner. Each returns the number of violations found.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "scs/benchmarks.hpp"
#include "scs/linesearch.hpp"
#include "scs/solver.hpp"

namespace scs::checks {

struct Quadratic {
  std::vector<Vector> q;
  double lipschitz = 0.0;

  Evaluation evaluate(std::span<const double> x) const {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = dot(q[i], x);
    return {0.5 * dot(x, g), g};
  }
};

inline Quadratic random_quadratic(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> b(n, Vector(n));
  for (auto& row : b) {
    for (double& v : row) v = normal(rng);
  }
  Quadratic out;
  out.q.assign(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out.q[i][j] += b[k][i] * b[k][j];
    }
    out.q[i][i] += 0.05;
  }
  // Power iteration; a slightly larger value is still a valid Lipschitz bound.
  Vector v(n, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    Vector w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) w[i] = dot(out.q[i], v);
    lambda = norm(w);
    v = scaled(1.0 / lambda, w);
  }
  out.lipschitz = lambda * (1.0 + 1e-9);
  return out;
}

inline std::shared_ptr<const Objective> as_objective(const Quadratic& quad) {
  return std::make_shared<FunctionObjective>(quad.q.size(), [quad](std::span<const double> x) {
    return quad.evaluate(x);
  });
}

/// |f(x+p) - f(x) - g'p| <= (L/2)||p||^2 on random quadratics.
inline int lipschitz_model_violations(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 8);
  int bad = 0;
  for (int t = 0; t < instances; ++t) {
    const auto quad = random_quadratic(rng, static_cast<std::size_t>(dim(rng)));
    const std::size_t n = quad.q.size();
    Vector x(n), p(n);
    const double scale = std::exp(normal(rng));
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(rng) * scale;
      p[i] = normal(rng) * scale;
    }
    const auto ex = quad.evaluate(x);
    const double fxp = quad.evaluate(axpy(1.0, p, x)).value;
    const double lhs = std::abs(fxp - ex.value - dot(ex.subgradient, p));
    const double rhs = 0.5 * quad.lipschitz * dot(p, p);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-12 * std::abs(ex.value)) ++bad;
  }
  return bad;
}

struct StepBoundReport {
  int steps = 0;
  int violations = 0;
};

/// Every accepted nonmonotone step has alpha = 1 or
/// alpha >= 0.5 * (1 - gamma) / L * (-g'd) / ||d||^2.
inline StepBoundReport step_lower_bound(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  StepBoundReport report;
  const BetaRule rules[] = {BetaRule::Zero, BetaRule::Perry, BetaRule::PolakRibiere, BetaRule::FletcherReeves};
  for (int t = 0; t < instances; ++t) {
    const auto quad = random_quadratic(rng, 6);
    CountingOracle oracle(as_objective(quad));
    ScsConfig c;
    c.beta_rule = rules[t % 4];
    c.max_iter = 60;
    std::normal_distribution<double> normal(0.0, 3.0);
    Vector x0(6);
    for (double& v : x0) v = normal(rng);
    solve(oracle, x0, c, [&](const StepInfo& info) {
      if (!info.step->accepted) return;
      ++report.steps;
      const double alpha = info.step->alpha;
      if (alpha == 1.0) return;
      const double gd = dot(info.g, info.d);
      const double bound = 0.5 * (1.0 - c.gamma) / quad.lipschitz * (-gd) / dot(info.d, info.d);
      if (!(alpha >= bound)) ++report.violations;
    });
  }
  return report;
}

/// Same inputs, memory M > 0 versus M = 0: the nonmonotone step is never smaller.
inline int memory_dominance_violations(std::uint64_t seed, int instances) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::uniform_real_distribution<double> bump(0.0, 3.0);
  int bad = 0;
  for (int t = 0; t < instances; ++t) {
    const auto quad = random_quadratic(rng, 4);
    CountingOracle oracle(as_objective(quad));
    Vector x(4);
    for (double& v : x) v = normal(rng);
    const auto e = quad.evaluate(x);
    const Vector d = scaled(-std::exp(normal(rng)), e.subgradient);
    FunctionMemory m0(0);
    m0.push(e.value);
    FunctionMemory m7(7);
    for (int j = 0; j < 7; ++j) m7.push(e.value + bump(rng));
    m7.push(e.value);
    const double eta_k = t % 3 == 0 ? 0.0 : 1e-3 * bump(rng);
    const auto a0 = nonmonotone_search(oracle, x, m0, e.subgradient, d, eta_k, NonmonotoneParams{});
    const auto a7 = nonmonotone_search(oracle, x, m7, e.subgradient, d, eta_k, NonmonotoneParams{});
    if (a0.accepted && !(a7.accepted && a7.alpha >= a0.alpha)) ++bad;
  }
  return bad;
}

struct PartialSumRun {
  double largest = 0.0;  // largest partial sum of max_{0<=j<=M} f(x_{k-j}) - f(x_{k+1})
  double bound = 0.0;    // (M+1) (f range over the run + sum of eta over the run)
  int cycle_period = 0;  // > 0 when the final accepted f values repeat with this period
};

/// Period p <= limit with tail[i] == tail[i - p] (to relative 1e-9) over the
/// last 4 p values, or 0.
inline int cycle_period(const std::vector<double>& f, int limit) {
  for (int p = 1; p <= limit; ++p) {
    const std::size_t span = 4 * static_cast<std::size_t>(p);
    if (f.size() < span + static_cast<std::size_t>(p)) break;
    bool periodic = true;
    for (std::size_t i = f.size() - span; i < f.size() && periodic; ++i) periodic = std::abs(f[i] - f[i - p]) <= 1e-9 * std::max(1.0, std::abs(f[i]));
    if (periodic) return p;
  }
  return 0;
}

inline PartialSumRun partial_sum_run(const std::shared_ptr<const Objective>& objective, std::span<const double> x0,
                                     BetaRule rule, int max_iter) {
  CountingOracle oracle(objective);
  ScsConfig c;
  c.beta_rule = rule;
  c.max_iter = max_iter;
  PartialSumRun run;
  double sum = 0.0;
  double eta_total = 0.0;
  std::vector<double> accepted;
  const auto result = solve(oracle, x0, c, [&](const StepInfo& info) {
    if (!info.step->accepted) return;
    sum += info.memory_max - info.step->f_new;
    eta_total += info.eta;
    run.largest = std::max(run.largest, sum);
    accepted.push_back(info.step->f_new);
  });
  double f_hi = -std::numeric_limits<double>::infinity();
  double f_lo = std::numeric_limits<double>::infinity();
  for (const auto& h : result.history) {
    f_hi = std::max(f_hi, h.f);
    f_lo = std::min(f_lo, h.f);
  }
  run.bound = static_cast<double>(c.memory + 1) * ((f_hi - f_lo) + eta_total);
  run.cycle_period = cycle_period(accepted, c.memory + 1);
  return run;
}

struct PartialSumReport {
  int runs = 0;
  int violations = 0;
  int cycling_violations = 0;  // violations on runs stuck in a cycle
  double worst_ratio = 0.0;    // max over runs of largest / bound
  std::vector<std::string> failed;

  void add(const PartialSumRun& run, const std::string& label) {
    ++runs;
    if (run.bound > 0.0) worst_ratio = std::max(worst_ratio, run.largest / run.bound);
    if (run.largest <= run.bound) return;
    ++violations;
    if (run.cycle_period > 0) ++cycling_violations;
    failed.push_back(label + (run.cycle_period > 0 ? " (cycle " + std::to_string(run.cycle_period) + ")" : ""));
  }
};

/// Every benchmark problem under the four beta rules, nonmonotone search, M = 7.
inline PartialSumReport partial_sums_bounded(int max_iter) {
  PartialSumReport report;
  const BetaRule rules[] = {BetaRule::Zero, BetaRule::Perry, BetaRule::PolakRibiere, BetaRule::FletcherReeves};
  for (const auto& name : bench::problem_names()) {
    for (BetaRule rule : rules) {
      const auto problem = bench::make_problem(name);
      report.add(partial_sum_run(problem.objective, problem.x0, rule, max_iter), name + "/" + to_string(rule));
    }
  }
  return report;
}

/// Same check on random convex quadratics, where the subgradient is Lipschitz.
inline PartialSumReport partial_sums_bounded_quadratic(std::uint64_t seed, int instances, int max_iter) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 3.0);
  PartialSumReport report;
  const BetaRule rules[] = {BetaRule::Zero, BetaRule::Perry, BetaRule::PolakRibiere, BetaRule::FletcherReeves};
  for (int t = 0; t < instances; ++t) {
    const auto quad = random_quadratic(rng, 8);
    Vector x0(8);
    for (double& v : x0) v = normal(rng);
    report.add(partial_sum_run(as_objective(quad), x0, rules[t % 4], max_iter), "quadratic " + std::to_string(t));
  }
  return report;
}

}  // namespace scs::checks
