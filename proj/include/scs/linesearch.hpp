#pragma once

#include <cstddef>
#include <deque>
#include <span>

#include "scs/core.hpp"

namespace scs {

struct NonmonotoneParams {
  int memory = 7;             // M: number of past values besides f(x_k)
  double gamma = 1e-4;        // sufficient decrease
  double backtrack = 0.5;     // step reduction factor
  double alpha_min = 1e-16;   // give up below this step
  double initial_step = 1.0;  // first trial step

  void validate() const;
};

struct WolfeParams {
  double gamma = 1e-4;  // sufficient decrease
  double sigma = 0.9;   // curvature
  int max_evals = 50;
  double initial_step = 1.0;

  void validate() const;
};

struct LineSearchOutcome {
  double alpha = 0.0;
  Vector x_new;
  double f_new = 0.0;
  Vector g_new;
  std::size_t evals_used = 0;
  bool accepted = false;
};

/// The last min(k, M) + 1 objective values, newest at the back.
class FunctionMemory {
 public:
  explicit FunctionMemory(int memory);

  void push(double value);
  double max() const;
  std::size_t size() const { return values_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return values_.empty(); }

 private:
  std::size_t capacity_;
  std::deque<double> values_;
};

/// Summable slack eta0 / k^1.1 for iteration k >= 1.
double eta(int k, double eta0);

/// Backtracking from params.initial_step by params.backtrack until
///   f(x + a d) <= max(memory) + gamma a g'd + eta_k.
/// Any direction is accepted as input: with box projection the projected
/// direction need not be a descent direction, and the condition stays
/// well defined. On failure the lowest trial point is returned with
/// accepted = false.
LineSearchOutcome nonmonotone_search(CountingOracle& oracle, std::span<const double> x, const FunctionMemory& memory,
                                     std::span<const double> g, std::span<const double> d, double eta_k,
                                     const NonmonotoneParams& params);

/// Bracketing and bisection search for a step satisfying
///   f(x + a d) <= f(x) + gamma a g'd   and   g(x + a d)'d >= sigma g'd
/// where g(.) is whatever subgradient the oracle returns. Requires g'd < 0.
/// Gives up after params.max_evals oracle calls and returns the last trial.
LineSearchOutcome wolfe_search(CountingOracle& oracle, std::span<const double> x, double f_x, std::span<const double> g,
                               std::span<const double> d, const WolfeParams& params);

}  // namespace scs
