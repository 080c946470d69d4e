#include "scs/ct/problem.hpp"

#include <random>
#include <stdexcept>

#include "scs/ct/tv.hpp"

namespace scs::ct {

void CtProblem::validate() const {
  geometry.validate();
  if (!(mu >= 0.0)) throw std::invalid_argument("ct problem: mu must be >= 0");
  if (b.n_views != geometry.n_views || b.n_det != geometry.n_det || b.values.size() != geometry.sinogram_size()) {
    throw std::invalid_argument("ct problem: sinogram shape does not match geometry");
  }
  if (!all_finite(b.values)) throw std::invalid_argument("ct problem: sinogram has non-finite entries");
}

Sinogram add_gaussian_noise(const Sinogram& b, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw std::invalid_argument("add_gaussian_noise: level must be >= 0");
  Sinogram out = b;
  const double b_norm = norm(b.values);
  if (level == 0.0 || b_norm == 0.0) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector e(b.values.size());
  for (double& v : e) v = normal(rng);
  const double e_norm = norm(e);
  if (e_norm == 0.0) return out;

  const double scale = level * b_norm / e_norm;
  for (std::size_t i = 0; i < e.size(); ++i) out.values[i] += scale * e[i];
  return out;
}

CtObjective::CtObjective(CtProblem problem) : problem_(std::move(problem)), projector_(problem_.geometry) {
  problem_.validate();
}

Evaluation CtObjective::evaluate(std::span<const double> x) const {
  if (x.size() != dimension()) throw std::invalid_argument("ct objective: dimension mismatch");
  Vector residual = projector_.forward(x);
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= problem_.b.values[i];

  Evaluation out;
  out.value = 0.5 * dot(residual, residual);
  out.subgradient = projector_.back(residual);

  if (problem_.mu > 0.0) {
    const Image img(problem_.geometry.side, Vector(x.begin(), x.end()));
    out.value += problem_.mu * tv_value(img);
    const Image tv_g = tv_subgradient(img);
    for (std::size_t i = 0; i < out.subgradient.size(); ++i) out.subgradient[i] += problem_.mu * tv_g.pixels[i];
  }
  return out;
}

std::shared_ptr<const Objective> ct_objective(CtProblem problem) {
  return std::make_shared<CtObjective>(std::move(problem));
}

}  // namespace scs::ct
