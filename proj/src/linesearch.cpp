#include "scs/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scs {

namespace {

bool finite_evaluation(const Evaluation& e) { return std::isfinite(e.value) && all_finite(e.subgradient); }

}  // namespace

void NonmonotoneParams::validate() const {
  if (memory < 0) throw std::invalid_argument("nonmonotone: memory M must be >= 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("nonmonotone: gamma must lie in (0,1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw std::invalid_argument("nonmonotone: backtrack must lie in (0,1)");
  if (!(alpha_min > 0.0)) throw std::invalid_argument("nonmonotone: alpha_min must be positive");
  if (!(initial_step > 0.0)) throw std::invalid_argument("nonmonotone: initial_step must be positive");
}

void WolfeParams::validate() const {
  if (!(gamma > 0.0 && gamma < sigma && sigma < 1.0)) {
    throw std::invalid_argument("wolfe: need 0 < gamma < sigma < 1");
  }
  if (max_evals < 1) throw std::invalid_argument("wolfe: max_evals must be >= 1");
  if (!(initial_step > 0.0)) throw std::invalid_argument("wolfe: initial_step must be positive");
}

FunctionMemory::FunctionMemory(int memory) {
  if (memory < 0) throw std::invalid_argument("FunctionMemory: memory must be >= 0");
  capacity_ = static_cast<std::size_t>(memory) + 1;
}

void FunctionMemory::push(double value) {
  values_.push_back(value);
  if (values_.size() > capacity_) values_.pop_front();
}

double FunctionMemory::max() const {
  if (values_.empty()) throw std::logic_error("FunctionMemory::max on empty memory");
  return *std::max_element(values_.begin(), values_.end());
}

double eta(int k, double eta0) {
  if (k <= 0) throw std::invalid_argument("eta: iteration index must be >= 1");
  return eta0 / std::pow(static_cast<double>(k), 1.1);
}

LineSearchOutcome nonmonotone_search(CountingOracle& oracle, std::span<const double> x, const FunctionMemory& memory,
                                     std::span<const double> g, std::span<const double> d, double eta_k,
                                     const NonmonotoneParams& params) {
  params.validate();
  const double slope = dot(g, d);
  const double reference = memory.max();

  LineSearchOutcome best;
  best.f_new = std::numeric_limits<double>::infinity();
  std::size_t evals = 0;

  for (double alpha = params.initial_step; alpha >= params.alpha_min; alpha *= params.backtrack) {
    Vector trial = axpy(alpha, d, x);
    if (!all_finite(trial)) continue;
    Evaluation e = oracle.evaluate(trial);
    ++evals;
    if (!finite_evaluation(e)) continue;
    if (e.value <= reference + params.gamma * alpha * slope + eta_k) {
      return {alpha, std::move(trial), e.value, std::move(e.subgradient), evals, true};
    }
    if (e.value < best.f_new) {
      best.alpha = alpha;
      best.x_new = std::move(trial);
      best.f_new = e.value;
      best.g_new = std::move(e.subgradient);
    }
  }
  best.evals_used = evals;
  best.accepted = false;
  return best;
}

LineSearchOutcome wolfe_search(CountingOracle& oracle, std::span<const double> x, double f_x, std::span<const double> g,
                               std::span<const double> d, const WolfeParams& params) {
  params.validate();
  const double slope = dot(g, d);
  if (!(slope < 0.0)) throw std::invalid_argument("wolfe_search: direction is not a descent direction");

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double alpha = params.initial_step;

  LineSearchOutcome out;
  std::size_t evals = 0;
  for (int trials = 0; trials < params.max_evals; ++trials) {
    Vector trial = axpy(alpha, d, x);
    if (!all_finite(trial)) {
      hi = alpha;
      alpha = 0.5 * (lo + hi);
      continue;
    }
    Evaluation e = oracle.evaluate(trial);
    ++evals;
    const bool finite = finite_evaluation(e);
    const bool armijo = finite && e.value <= f_x + params.gamma * alpha * slope;
    const bool curvature = finite && dot(e.subgradient, d) >= params.sigma * slope;

    out = {alpha, std::move(trial), e.value, std::move(e.subgradient), evals, false};
    if (armijo && curvature) {
      out.accepted = true;
      return out;
    }
    if (!armijo) {
      hi = alpha;
    } else {
      lo = alpha;
    }
    alpha = std::isinf(hi) ? 2.0 * lo : 0.5 * (lo + hi);
  }
  return out;
}

}  // namespace scs
