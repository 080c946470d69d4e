#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scs/core.hpp"
#include "scs/linesearch.hpp"

namespace scs {

/// Conjugate-direction parameter. Zero gives the plain spectral subgradient
/// direction; the other three are the Perry, Polak-Ribiere and
/// Fletcher-Reeves style spectral variants.
enum class BetaRule { Zero, Perry, PolakRibiere, FletcherReeves };

enum class LineSearchKind { Nonmonotone, Wolfe };

/// Norm band for the rescaled-direction variant: mu_lo ||g|| <= ||d|| <= nu_hi.
struct RescaleBand {
  double mu_lo = 0.0;
  double nu_hi = 1.0;
};

struct ScsConfig {
  BetaRule beta_rule = BetaRule::Zero;
  LineSearchKind line_search = LineSearchKind::Nonmonotone;
  int memory = 7;
  double gamma = 1e-4;
  double sigma = 0.9;
  double theta_min = 1e-10;
  double theta_max = 1e10;
  int max_iter = 1000;
  double restart_tol = 1e-3;
  std::optional<RescaleBand> rescale;
  bool box_projection = false;
  double grad_norm_stop = 0.0;
  int wolfe_max_evals = 50;
  // The method is deterministic; the seed is carried so run records are
  // self-describing.
  std::uint64_t seed = 0;

  void validate() const;
};

struct IterationRecord {
  int k = 0;
  double f = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double beta = 0.0;
  bool restarted = false;
  double grad_norm = 0.0;
  std::size_t evals = 0;
  bool line_search_failed = false;
};

struct SolveResult {
  double f_min = 0.0;
  Vector x_best;
  std::vector<IterationRecord> history;  // history[0] is the starting point
  std::size_t total_evals = 0;
  std::size_t evals_to_best = 0;
  double wall_seconds = 0.0;
  int iterations = 0;
  std::string stop_reason;
};

/// Everything the solver knows about one completed iteration, for tests and
/// diagnostics. Spans are only valid during the callback.
struct StepInfo {
  int k = 0;
  std::span<const double> x;
  std::span<const double> g;
  std::span<const double> d;  // direction actually handed to the line search
  double f = 0.0;
  double memory_max = 0.0;
  double eta = 0.0;
  const LineSearchOutcome* step = nullptr;
  double theta = 0.0;  // spectral parameter computed from this step
  double beta = 0.0;
  std::span<const double> next_d;  // direction for the next iteration (before projection)
  bool next_restarted = false;
};

using SolveObserver = std::function<void(const StepInfo&)>;

/// Safeguarded Barzilai-Borwein parameter from s = x_{k+1} - x_k and
/// y = g_{k+1} - g_k. A zero step returns theta_prev unchanged.
double spectral_theta(std::span<const double> s, std::span<const double> y, double theta_min, double theta_max,
                      double theta_prev = 1.0);

double beta(BetaRule rule, double theta, double theta_prev, double alpha, std::span<const double> s,
            std::span<const double> y, std::span<const double> g, std::span<const double> g_next);

/// -theta g_next + beta s
Vector direction(double theta, std::span<const double> g_next, double beta, std::span<const double> s);

struct DirectionChoice {
  Vector d;
  bool restarted = false;
};

/// Keeps d when d'g <= -tol ||d|| ||g||, otherwise falls back to -theta g.
DirectionChoice restart_or_accept(std::span<const double> d, std::span<const double> g_next, double theta,
                                  double restart_tol);

Vector rescale_direction(std::span<const double> d, std::span<const double> g, double mu_lo, double nu_hi);

/// Componentwise clamp to [0, 1].
Vector box_project_point(std::span<const double> x);

/// P(x + d) - x for x in the unit box. Throws std::invalid_argument when x is
/// outside the box.
Vector project_direction(std::span<const double> x, std::span<const double> d);

SolveResult solve(CountingOracle& oracle, std::span<const double> x0, const ScsConfig& config,
                  const SolveObserver& observer = {});

std::string to_string(BetaRule rule);
std::string to_string(LineSearchKind kind);

}  // namespace scs
