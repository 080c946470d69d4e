#include "scs/ct/projector.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace scs::ct {

Image::Image(std::size_t side, Vector values) : side(side), pixels(std::move(values)) {
  if (pixels.size() != side * side) {
    throw std::invalid_argument("Image: expected " + std::to_string(side * side) + " pixels, got " +
                                std::to_string(pixels.size()));
  }
}

std::size_t default_detector_count(std::size_t side) {
  auto count = static_cast<std::size_t>(std::ceil(std::numbers::sqrt2 * static_cast<double>(side)));
  if (count % 2 != 0) ++count;
  return count;
}

Geometry Geometry::parallel(std::size_t side, std::size_t n_views, std::size_t n_det) {
  Geometry g{side, n_views, n_det == 0 ? default_detector_count(side) : n_det};
  g.validate();
  return g;
}

double Geometry::angle(std::size_t view) const {
  return std::numbers::pi * static_cast<double>(view) / static_cast<double>(n_views);
}

double Geometry::offset(std::size_t det) const {
  return static_cast<double>(det) - 0.5 * static_cast<double>(n_det - 1);
}

void Geometry::validate() const {
  if (side < 2) throw std::invalid_argument("geometry: image side must be >= 2");
  if (n_views < 1) throw std::invalid_argument("geometry: need at least one view");
  if (n_det < 1) throw std::invalid_argument("geometry: need at least one detector bin");
}

Projector::Projector(Geometry geometry) : geometry_(geometry) {
  geometry_.validate();
  cos_.resize(geometry_.n_views);
  sin_.resize(geometry_.n_views);
  for (std::size_t v = 0; v < geometry_.n_views; ++v) {
    cos_[v] = std::cos(geometry_.angle(v));
    sin_[v] = std::sin(geometry_.angle(v));
  }
}

Vector Projector::forward(std::span<const double> image) const {
  if (image.size() != geometry_.image_size()) throw std::invalid_argument("forward: image size mismatch");
  Vector out(geometry_.sinogram_size(), 0.0);
  for (std::size_t v = 0; v < geometry_.n_views; ++v) {
    for (std::size_t j = 0; j < geometry_.n_det; ++j) {
      double sum = 0.0;
      trace(v, j, [&](std::size_t pixel, double len) { sum += len * image[pixel]; });
      out[v * geometry_.n_det + j] = sum;
    }
  }
  return out;
}

Vector Projector::back(std::span<const double> sinogram) const {
  if (sinogram.size() != geometry_.sinogram_size()) throw std::invalid_argument("back: sinogram size mismatch");
  Vector out(geometry_.image_size(), 0.0);
  for (std::size_t v = 0; v < geometry_.n_views; ++v) {
    for (std::size_t j = 0; j < geometry_.n_det; ++j) {
      const double r = sinogram[v * geometry_.n_det + j];
      if (r == 0.0) continue;
      trace(v, j, [&](std::size_t pixel, double len) { out[pixel] += len * r; });
    }
  }
  return out;
}

Sinogram forward_project(const Image& image, const Geometry& geometry) {
  if (image.side != geometry.side) throw std::invalid_argument("forward_project: image side does not match geometry");
  return {geometry.n_views, geometry.n_det, Projector(geometry).forward(image.pixels)};
}

Image back_project(const Sinogram& sinogram, const Geometry& geometry) {
  if (sinogram.n_views != geometry.n_views || sinogram.n_det != geometry.n_det) {
    throw std::invalid_argument("back_project: sinogram shape does not match geometry");
  }
  return Image(geometry.side, Projector(geometry).back(sinogram.values));
}

}  // namespace scs::ct
