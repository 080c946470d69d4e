#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace scs {

using Vector = std::vector<double>;

/// Value and one subgradient of an objective at a point.
struct Evaluation {
  double value = 0.0;
  Vector subgradient;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// Returns alpha * a + b.
Vector axpy(double alpha, std::span<const double> a, std::span<const double> b);

/// Returns a - b.
Vector subtract(std::span<const double> a, std::span<const double> b);

Vector scaled(double alpha, std::span<const double> a);

bool all_finite(std::span<const double> a);

/// A nonsmooth objective: f(x) together with one element of its
/// subdifferential. Implementations must be pure functions of x.
///
/// At kinks every oracle in this library breaks ties deterministically: the
/// first active piece in natural order wins, and |t| contributes 0 at t = 0.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dimension() const = 0;
  virtual Evaluation evaluate(std::span<const double> x) const = 0;
};

/// Adapts a callable into an Objective.
class FunctionObjective final : public Objective {
 public:
  using Fn = std::function<Evaluation(std::span<const double>)>;

  FunctionObjective(std::size_t dimension, Fn fn);

  std::size_t dimension() const override { return dimension_; }
  Evaluation evaluate(std::span<const double> x) const override { return fn_(x); }

 private:
  std::size_t dimension_;
  Fn fn_;
};

/// Wraps an objective and counts every evaluation. Input is validated here so
/// the wrapped oracle can assume a finite point of the right size.
class CountingOracle {
 public:
  explicit CountingOracle(std::shared_ptr<const Objective> inner);

  CountingOracle(const CountingOracle&) = delete;
  CountingOracle& operator=(const CountingOracle&) = delete;

  /// Throws std::invalid_argument on a size mismatch and std::domain_error
  /// on non-finite input.
  Evaluation evaluate(std::span<const double> x);

  std::size_t dimension() const { return inner_->dimension(); }
  std::size_t function_evals() const { return function_evals_.load(std::memory_order_relaxed); }
  std::size_t subgradient_evals() const { return subgradient_evals_.load(std::memory_order_relaxed); }
  const Objective& inner() const { return *inner_; }

 private:
  std::shared_ptr<const Objective> inner_;
  std::atomic<std::size_t> function_evals_{0};
  std::atomic<std::size_t> subgradient_evals_{0};
};

}  // namespace scs
