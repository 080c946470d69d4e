#pragma once

#include <cmath>
#include <memory>
#include <random>

#include "scs/core.hpp"

namespace scs::test {

inline std::shared_ptr<const Objective> abs_objective() {
  return std::make_shared<FunctionObjective>(1, [](std::span<const double> x) {
    const double g = x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0);
    return Evaluation{std::abs(x[0]), {g}};
  });
}

inline std::shared_ptr<const Objective> half_norm_sq(std::size_t n) {
  return std::make_shared<FunctionObjective>(n, [](std::span<const double> x) {
    return Evaluation{0.5 * dot(x, x), Vector(x.begin(), x.end())};
  });
}

inline std::shared_ptr<const Objective> square_1d() {
  return std::make_shared<FunctionObjective>(1, [](std::span<const double> x) {
    return Evaluation{x[0] * x[0], {2.0 * x[0]}};
  });
}

/// f(x) = 0.5 x'Qx for a symmetric Q stored row-major.
inline std::shared_ptr<const Objective> quadratic(std::vector<Vector> q) {
  const std::size_t n = q.size();
  return std::make_shared<FunctionObjective>(n, [q = std::move(q)](std::span<const double> x) {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = dot(q[i], x);
    return Evaluation{0.5 * dot(x, g), g};
  });
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

/// Random diagonal-dominant SPD matrix with its largest eigenvalue bound
/// computed by power iteration.
struct RandomQuadratic {
  std::vector<Vector> q;
  double lipschitz = 0.0;
};

inline RandomQuadratic random_spd(std::mt19937_64& rng, std::size_t n) {
  std::vector<Vector> b(n);
  for (auto& row : b) row = random_vector(rng, n);
  RandomQuadratic out;
  out.q.assign(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out.q[i][j] += b[k][i] * b[k][j];
    }
    out.q[i][i] += 0.1;
  }
  Vector v(n, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) w[i] = dot(out.q[i], v);
    lambda = norm(w) / norm(v);
    v = scaled(1.0 / norm(w), w);
  }
  out.lipschitz = lambda;
  return out;
}

}  // namespace scs::test
