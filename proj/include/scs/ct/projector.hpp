#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "scs/ct/image.hpp"

namespace scs::ct {

/// Parallel-beam geometry over [0, 180) degrees. The image occupies
/// [-N/2, N/2]^2 with unit pixels; detector bins are unit spaced and
/// centred on the rotation axis.
struct Geometry {
  std::size_t side = 0;
  std::size_t n_views = 0;
  std::size_t n_det = 0;

  static Geometry parallel(std::size_t side, std::size_t n_views, std::size_t n_det = 0);

  std::size_t image_size() const { return side * side; }
  std::size_t sinogram_size() const { return n_views * n_det; }
  double angle(std::size_t view) const;
  double offset(std::size_t det) const;
  void validate() const;
};

/// ceil(sqrt(2) N) rounded up to an even count, enough to cover the image
/// diagonal (566 for N = 400).
std::size_t default_detector_count(std::size_t side);

/// Matrix-free system operator. Ray weights are exact ray/pixel intersection
/// lengths found by a Siddon-style grid walk, so back() is the exact adjoint
/// of forward(). Nothing is cached beyond per-view trigonometry.
class Projector {
 public:
  explicit Projector(Geometry geometry);

  const Geometry& geometry() const { return geometry_; }

  Vector forward(std::span<const double> image) const;
  Vector back(std::span<const double> sinogram) const;

  /// Calls visit(pixel_index, length) for every pixel the ray crosses.
  template <typename Visit>
  void trace(std::size_t view, std::size_t det, Visit&& visit) const;

 private:
  Geometry geometry_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

Sinogram forward_project(const Image& image, const Geometry& geometry);
Image back_project(const Sinogram& sinogram, const Geometry& geometry);

template <typename Visit>
void Projector::trace(std::size_t view, std::size_t det, Visit&& visit) const {
  constexpr double kParallel = 1e-12;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto n = static_cast<long>(geometry_.side);
  const double half = 0.5 * static_cast<double>(geometry_.side);

  // Ray: p(s) = t * (cos, sin) + s * (-sin, cos)
  const double t = geometry_.offset(det);
  const double px = t * cos_[view];
  const double py = t * sin_[view];
  const double ux = -sin_[view];
  const double uy = cos_[view];

  double s_lo = -kInf;
  double s_hi = kInf;
  for (const auto& [p, u] : {std::pair{px, ux}, std::pair{py, uy}}) {
    if (std::abs(u) < kParallel) {
      if (p <= -half || p >= half) return;
    } else {
      const double a = (-half - p) / u;
      const double b = (half - p) / u;
      s_lo = std::max(s_lo, std::min(a, b));
      s_hi = std::min(s_hi, std::max(a, b));
    }
  }
  if (!(s_hi > s_lo)) return;

  // Next grid-line crossing along each axis. Lines sit at -half + k.
  struct Walker {
    double p, u, next;
    long k, step;
    void init(double p0, double u0, double entry, double half_width) {
      p = p0;
      u = u0;
      if (std::abs(u) < kParallel) {
        next = kInf;
        step = 0;
        k = 0;
        return;
      }
      const double c = p + entry * u + half_width;  // entry coordinate in grid units
      step = u > 0.0 ? 1 : -1;
      k = u > 0.0 ? static_cast<long>(std::floor(c)) + 1 : static_cast<long>(std::ceil(c)) - 1;
      advance_to(half_width);
    }
    void advance_to(double half_width) { next = (static_cast<double>(k) - half_width - p) / u; }
  };
  Walker wx{};
  Walker wy{};
  wx.init(px, ux, s_lo, half);
  wy.init(py, uy, s_lo, half);

  double s = s_lo;
  while (s < s_hi) {
    const double s_next = std::min({wx.next, wy.next, s_hi});
    const double len = s_next - s;
    if (len > 0.0) {
      const double mid = 0.5 * (s + s_next);
      const long col = std::clamp(static_cast<long>(std::floor(px + mid * ux + half)), 0L, n - 1);
      const long row = std::clamp(static_cast<long>(std::floor(half - (py + mid * uy))), 0L, n - 1);
      visit(static_cast<std::size_t>(row * n + col), len);
    }
    if (wx.next <= s_next) {
      wx.k += wx.step;
      wx.advance_to(half);
    }
    if (wy.next <= s_next) {
      wy.k += wy.step;
      wy.advance_to(half);
    }
    s = std::max(s, s_next);
  }
}

}  // namespace scs::ct
