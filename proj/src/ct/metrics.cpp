#include "scs/ct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scs::ct {

namespace {

void check_same(const Image& x, const Image& y) {
  if (x.side != y.side || x.pixels.size() != y.pixels.size() || x.pixels.empty()) {
    throw std::invalid_argument("image metric: images must be non-empty and the same size");
  }
}

}  // namespace

double psnr(const Image& x, const Image& y_true) {
  check_same(x, y_true);
  const double y_max = *std::max_element(y_true.pixels.begin(), y_true.pixels.end());
  if (!(y_max > 0.0)) throw std::domain_error("psnr: max of reference image must be positive");
  double sq = 0.0;
  for (std::size_t i = 0; i < x.pixels.size(); ++i) {
    const double d = x.pixels[i] - y_true.pixels[i];
    sq += d * d;
  }
  const double mse = sq / static_cast<double>(x.pixels.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(y_max / mse);
}

double ssim(const Image& x, const Image& y, double c1, double c2) {
  check_same(x, y);
  const auto count = static_cast<double>(x.pixels.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.pixels.size(); ++i) {
    mx += x.pixels[i];
    my += y.pixels[i];
  }
  mx /= count;
  my /= count;
  double vx = 0.0;
  double vy = 0.0;
  double cxy = 0.0;
  for (std::size_t i = 0; i < x.pixels.size(); ++i) {
    const double dx = x.pixels[i] - mx;
    const double dy = y.pixels[i] - my;
    vx += dx * dx;
    vy += dy * dy;
    cxy += dx * dy;
  }
  vx /= count;
  vy /= count;
  cxy /= count;
  return ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
}

double ssim(const Image& x, const Image& y) {
  check_same(x, y);
  const double y_max = *std::max_element(y.pixels.begin(), y.pixels.end());
  const double c1 = (0.01 * y_max) * (0.01 * y_max);
  const double c2 = (0.03 * y_max) * (0.03 * y_max);
  return ssim(x, y, c1, c2);
}

}  // namespace scs::ct
