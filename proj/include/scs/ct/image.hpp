#pragma once

#include <cstddef>

#include "scs/core.hpp"

namespace scs::ct {

/// Square image stored row-major; row 0 is the top of the picture.
struct Image {
  std::size_t side = 0;
  Vector pixels;

  Image() = default;
  explicit Image(std::size_t side, double fill = 0.0) : side(side), pixels(side * side, fill) {}
  Image(std::size_t side, Vector values);

  double operator()(std::size_t row, std::size_t col) const { return pixels[row * side + col]; }
  double& operator()(std::size_t row, std::size_t col) { return pixels[row * side + col]; }
};

/// Line integrals stored view-major: values[view * n_det + det].
struct Sinogram {
  std::size_t n_views = 0;
  std::size_t n_det = 0;
  Vector values;
};

}  // namespace scs::ct
