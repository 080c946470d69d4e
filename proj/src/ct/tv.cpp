#include "scs/ct/tv.hpp"

#include <cmath>
#include <stdexcept>

namespace scs::ct {

namespace {

void check(const Image& x) {
  if (x.side < 2) throw std::invalid_argument("tv: image side must be >= 2");
  if (x.pixels.size() != x.side * x.side) throw std::invalid_argument("tv: pixel count does not match side");
}

}  // namespace

double tv_value(const Image& x) {
  check(x);
  const std::size_t n = x.side;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double dh = x(i, j + 1) - x(i, j);
      const double dv = x(i + 1, j) - x(i, j);
      sum += std::hypot(dh, dv);
    }
  }
  return sum;
}

Image tv_subgradient(const Image& x) {
  check(x);
  const std::size_t n = x.side;
  Image g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double dh = x(i, j + 1) - x(i, j);
      const double dv = x(i + 1, j) - x(i, j);
      const double denom = std::hypot(dh, dv);
      if (denom == 0.0) continue;
      g(i, j) -= (dh + dv) / denom;
      g(i, j + 1) += dh / denom;
      g(i + 1, j) += dv / denom;
    }
  }
  return g;
}

}  // namespace scs::ct
