#include "scs/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scs {

namespace {

void require_same_size(std::span<const double> a, std::span<const double> b, const char* op) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector axpy(double alpha, std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b, "axpy");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = alpha * a[i] + b[i];
  return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b, "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scaled(double alpha, std::span<const double> a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = alpha * a[i];
  return out;
}

bool all_finite(std::span<const double> a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

FunctionObjective::FunctionObjective(std::size_t dimension, Fn fn) : dimension_(dimension), fn_(std::move(fn)) {
  if (dimension_ == 0) throw std::invalid_argument("FunctionObjective: dimension must be >= 1");
  if (!fn_) throw std::invalid_argument("FunctionObjective: empty callable");
}

CountingOracle::CountingOracle(std::shared_ptr<const Objective> inner) : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("CountingOracle: null objective");
}

Evaluation CountingOracle::evaluate(std::span<const double> x) {
  if (x.size() != inner_->dimension()) {
    throw std::invalid_argument("evaluate: point has dimension " + std::to_string(x.size()) + ", expected " +
                                std::to_string(inner_->dimension()));
  }
  if (!all_finite(x)) throw std::domain_error("evaluate: non-finite component in point");
  function_evals_.fetch_add(1, std::memory_order_relaxed);
  subgradient_evals_.fetch_add(1, std::memory_order_relaxed);
  return inner_->evaluate(x);
}

}  // namespace scs
