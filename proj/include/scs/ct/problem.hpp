#pragma once

#include <cstdint>
#include <memory>

#include "scs/core.hpp"
#include "scs/ct/image.hpp"
#include "scs/ct/projector.hpp"

namespace scs::ct {

struct CtProblem {
  Geometry geometry;
  Sinogram b;
  double mu = 0.0;

  void validate() const;
};

/// b + eta with ||eta|| = level * ||b||, eta drawn from a seeded standard normal.
Sinogram add_gaussian_noise(const Sinogram& b, double level, std::uint64_t seed);

/// f(x) = 0.5 ||Ax - b||^2 + mu * TV(x), subgradient A^T(Ax - b) + mu * dTV(x).
class CtObjective final : public Objective {
 public:
  explicit CtObjective(CtProblem problem);

  std::size_t dimension() const override { return problem_.geometry.image_size(); }
  Evaluation evaluate(std::span<const double> x) const override;

  const CtProblem& problem() const { return problem_; }
  const Projector& projector() const { return projector_; }

 private:
  CtProblem problem_;
  Projector projector_;
};

std::shared_ptr<const Objective> ct_objective(CtProblem problem);

}  // namespace scs::ct
