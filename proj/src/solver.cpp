#include "scs/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace scs {

namespace {

bool in_unit_box(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

}  // namespace

void ScsConfig::validate() const {
  if (memory < 0) throw std::invalid_argument("config: memory M must be >= 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("config: gamma must lie in (0,1)");
  if (line_search == LineSearchKind::Wolfe && !(gamma < sigma && sigma < 1.0)) {
    throw std::invalid_argument("config: Wolfe search needs 0 < gamma < sigma < 1");
  }
  if (!(theta_min > 0.0 && theta_min < theta_max && std::isfinite(theta_max))) {
    throw std::invalid_argument("config: need 0 < theta_min < theta_max < inf");
  }
  if (max_iter < 0) throw std::invalid_argument("config: max_iter must be >= 0");
  if (!(restart_tol >= 0.0)) throw std::invalid_argument("config: restart_tol must be >= 0");
  if (rescale && !(rescale->mu_lo >= 0.0 && rescale->nu_hi > 0.0)) {
    throw std::invalid_argument("config: rescale band needs mu_lo >= 0 and nu_hi > 0");
  }
  if (box_projection && line_search == LineSearchKind::Wolfe) {
    throw std::invalid_argument("config: box projection requires the nonmonotone search (steps must not exceed 1)");
  }
  if (!(grad_norm_stop >= 0.0)) throw std::invalid_argument("config: grad_norm_stop must be >= 0");
}

double spectral_theta(std::span<const double> s, std::span<const double> y, double theta_min, double theta_max,
                      double theta_prev) {
  const double ss = dot(s, s);
  if (ss == 0.0) return theta_prev;
  const double sy = dot(s, y);
  if (sy <= 0.0) return std::min(theta_max, 1.0 / std::sqrt(ss));
  return std::min(theta_max, std::max(theta_min, ss / sy));
}

double beta(BetaRule rule, double theta, double theta_prev, double alpha, std::span<const double> s,
            std::span<const double> y, std::span<const double> g, std::span<const double> g_next) {
  switch (rule) {
    case BetaRule::Zero:
      return 0.0;
    case BetaRule::Perry: {
      const double sy = dot(s, y);
      if (sy == 0.0) return 0.0;
      return (theta * dot(y, g_next) - dot(s, g_next)) / sy;
    }
    case BetaRule::PolakRibiere:
    case BetaRule::FletcherReeves: {
      const double denom = alpha * theta_prev * dot(g, g);
      if (denom == 0.0) return 0.0;
      const double num = rule == BetaRule::PolakRibiere ? dot(y, g_next) : dot(g_next, g_next);
      return theta * num / denom;
    }
  }
  return 0.0;
}

Vector direction(double theta, std::span<const double> g_next, double beta, std::span<const double> s) {
  if (g_next.size() != s.size()) throw std::invalid_argument("direction: dimension mismatch");
  Vector d(g_next.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = -theta * g_next[i] + beta * s[i];
  return d;
}

DirectionChoice restart_or_accept(std::span<const double> d, std::span<const double> g_next, double theta,
                                  double restart_tol) {
  const double dn = norm(d);
  if (dn > 0.0 && dot(d, g_next) <= -restart_tol * dn * norm(g_next)) {
    return {Vector(d.begin(), d.end()), false};
  }
  return {scaled(-theta, g_next), true};
}

Vector rescale_direction(std::span<const double> d, std::span<const double> g, double mu_lo, double nu_hi) {
  const double dn = norm(d);
  if (dn == 0.0) return Vector(d.begin(), d.end());
  if (dn > nu_hi) return scaled(nu_hi / dn, d);
  const double floor = mu_lo * norm(g);
  if (dn < floor) return scaled(floor / dn, d);
  return Vector(d.begin(), d.end());
}

Vector box_project_point(std::span<const double> x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(std::max(x[i], 0.0), 1.0);
  return out;
}

Vector project_direction(std::span<const double> x, std::span<const double> d) {
  if (x.size() != d.size()) throw std::invalid_argument("project_direction: dimension mismatch");
  if (!in_unit_box(x)) throw std::invalid_argument("project_direction: point lies outside [0,1]^n");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(std::max(x[i] + d[i], 0.0), 1.0) - x[i];
  return out;
}

SolveResult solve(CountingOracle& oracle, std::span<const double> x0, const ScsConfig& config,
                  const SolveObserver& observer) {
  config.validate();
  if (x0.size() != oracle.dimension()) throw std::invalid_argument("solve: starting point has wrong dimension");
  if (!all_finite(x0)) throw std::domain_error("solve: starting point has non-finite components");
  if (config.box_projection && !in_unit_box(x0)) {
    throw std::invalid_argument("solve: box projection requires a starting point in [0,1]^n");
  }

  const auto clock_start = std::chrono::steady_clock::now();
  const std::size_t evals_before = oracle.function_evals();
  auto evals_so_far = [&] { return oracle.function_evals() - evals_before; };

  NonmonotoneParams nm;
  nm.memory = config.memory;
  nm.gamma = config.gamma;
  WolfeParams wolfe;
  wolfe.gamma = config.gamma;
  wolfe.sigma = config.sigma;
  wolfe.max_evals = config.wolfe_max_evals;

  Vector x(x0.begin(), x0.end());
  Evaluation start = oracle.evaluate(x);
  double f = start.value;
  Vector g = std::move(start.subgradient);
  const double eta0 = std::max(f, norm(g));

  FunctionMemory memory(config.memory);
  memory.push(f);

  SolveResult result;
  result.f_min = f;
  result.x_best = x;
  result.evals_to_best = evals_so_far();
  result.history.push_back({0, f, 0.0, 1.0, 0.0, false, norm(g), evals_so_far(), false});
  result.stop_reason = "max_iter";

  double theta = 1.0;
  Vector d = scaled(-1.0, g);
  bool gradient_direction = true;  // d is -theta g

  auto search = [&](std::span<const double> dir, double initial_step, double eta_k) {
    if (config.line_search == LineSearchKind::Wolfe) {
      WolfeParams p = wolfe;
      p.initial_step = initial_step;
      return wolfe_search(oracle, x, f, g, dir, p);
    }
    NonmonotoneParams p = nm;
    p.initial_step = initial_step;
    return nonmonotone_search(oracle, x, memory, g, dir, eta_k, p);
  };
  auto usable = [&](std::span<const double> dir) {
    return config.box_projection ? project_direction(x, dir) : Vector(dir.begin(), dir.end());
  };

  for (int k = 0; k < config.max_iter; ++k) {
    if (norm(g) <= config.grad_norm_stop) {
      result.stop_reason = "grad_norm";
      break;
    }
    const double eta_k = k == 0 ? eta0 : eta(k, eta0);
    const double memory_max = memory.max();

    Vector d_used = usable(d);
    LineSearchOutcome step = search(d_used, 1.0, eta_k);
    bool failed = false;
    if (!step.accepted) {
      failed = true;
      if (!gradient_direction) {
        d = scaled(-theta, g);
        gradient_direction = true;
        d_used = usable(d);
        step = search(d_used, 1.0, eta_k);
      }
      if (!step.accepted) step = search(d_used, 0.5, eta_k);
      if (!step.accepted) {
        result.stop_reason = "line_search_failure";
        result.history.push_back({k + 1, f, 0.0, theta, 0.0, true, norm(g), evals_so_far(), true});
        break;
      }
    }

    const Vector s = subtract(step.x_new, x);
    const Vector y = subtract(step.g_new, g);
    double theta_next = theta;
    double beta_k = 0.0;
    DirectionChoice next;
    if (dot(s, s) == 0.0) {
      next = {scaled(-theta, step.g_new), true};
    } else {
      theta_next = spectral_theta(s, y, config.theta_min, config.theta_max, theta);
      beta_k = beta(config.beta_rule, theta_next, theta, step.alpha, s, y, g, step.g_new);
      const Vector candidate = direction(theta_next, step.g_new, beta_k, s);
      next = restart_or_accept(candidate, step.g_new, theta_next, config.restart_tol);
      if (config.rescale && !next.restarted) {
        next.d = rescale_direction(next.d, step.g_new, config.rescale->mu_lo, config.rescale->nu_hi);
      }
    }

    if (observer) {
      StepInfo info;
      info.k = k;
      info.x = x;
      info.g = g;
      info.d = d_used;
      info.f = f;
      info.memory_max = memory_max;
      info.eta = eta_k;
      info.step = &step;
      info.theta = theta_next;
      info.beta = beta_k;
      info.next_d = next.d;
      info.next_restarted = next.restarted;
      observer(info);
    }

    x = std::move(step.x_new);
    f = step.f_new;
    g = std::move(step.g_new);
    theta = theta_next;
    d = std::move(next.d);
    gradient_direction = next.restarted || beta_k == 0.0;
    memory.push(f);
    result.iterations = k + 1;

    result.history.push_back({k + 1, f, step.alpha, theta, beta_k, next.restarted, norm(g), evals_so_far(), failed});
    if (f < result.f_min) {
      result.f_min = f;
      result.x_best = x;
      result.evals_to_best = evals_so_far();
    }
  }

  result.total_evals = evals_so_far();
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return result;
}

std::string to_string(BetaRule rule) {
  switch (rule) {
    case BetaRule::Zero: return "B0";
    case BetaRule::Perry: return "B1";
    case BetaRule::PolakRibiere: return "B2";
    case BetaRule::FletcherReeves: return "B3";
  }
  return "?";
}

std::string to_string(LineSearchKind kind) { return kind == LineSearchKind::Wolfe ? "wolfe" : "nonmonotone"; }

}  // namespace scs
