#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "scs/core.hpp"

namespace scs::bench {

struct BenchmarkProblem {
  std::string name;
  std::size_t n = 0;
  Vector x0;
  double f_star = 0.0;
  std::shared_ptr<const Objective> objective;
};

/// Names accepted by make_problem, in table order.
const std::vector<std::string>& problem_names();

/// Builds one of the ten standard nonsmooth test problems at its reference
/// dimension. Throws std::invalid_argument for an unknown name.
BenchmarkProblem make_problem(std::string_view name);

/// Same family at a caller-chosen dimension (n >= 2). f_star is only
/// meaningful at the reference dimension.
BenchmarkProblem make_problem(std::string_view name, std::size_t n);

/// Relative error |f_min - f*| / |f*|, or |f_min| when f* = 0.
double error_measure(double f_min, double f_star);

/// A problem counts as solved when its error is below 0.1.
bool is_solved(double error);

inline constexpr double kSolvedThreshold = 1e-1;

}  // namespace scs::bench
