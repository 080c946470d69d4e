#include "scs/ct/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace scs::ct {

namespace {

constexpr std::size_t kMinSide = 16;

void check_side(std::size_t side) {
  if (side < kMinSide) throw std::invalid_argument("phantom: image side must be >= 16");
}

// Pixel centre in normalised coordinates, [-1, 1] with y pointing up.
double norm_x(std::size_t col, std::size_t side) {
  return (2.0 * static_cast<double>(col) + 1.0) / static_cast<double>(side) - 1.0;
}
double norm_y(std::size_t row, std::size_t side) {
  return 1.0 - (2.0 * static_cast<double>(row) + 1.0) / static_cast<double>(side);
}

struct Ellipse {
  double intensity, a, b, x0, y0, phi_deg;
};

constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

}  // namespace

Image shepp_logan(std::size_t side) {
  check_side(side);
  Image img(side);
  for (const Ellipse& e : kSheppLogan) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t col = 0; col < side; ++col) {
        const double dx = norm_x(col, side) - e.x0;
        const double dy = norm_y(r, side) - e.y0;
        const double u = (dx * c + dy * s) / e.a;
        const double v = (dy * c - dx * s) / e.b;
        if (u * u + v * v <= 1.0) img(r, col) += e.intensity;
      }
    }
  }
  for (double& p : img.pixels) p = std::clamp(p, 0.0, 1.0);
  return img;
}

Image threephases_analog(std::size_t side, std::uint64_t seed) {
  check_side(side);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-0.8, 0.8);
  std::uniform_real_distribution<double> radius(0.08, 0.3);
  std::uniform_int_distribution<int> level(1, 3);

  Image img(side);
  constexpr int kDisks = 24;
  for (int i = 0; i < kDisks; ++i) {
    const double cx = centre(rng);
    const double cy = centre(rng);
    const double rad = radius(rng);
    const double value = level(rng) / 3.0;
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t col = 0; col < side; ++col) {
        const double dx = norm_x(col, side) - cx;
        const double dy = norm_y(r, side) - cy;
        if (dx * dx + dy * dy <= rad * rad) img(r, col) = value;
      }
    }
  }
  return img;
}

Image grains_analog(std::size_t side, std::uint64_t seed) {
  check_side(side);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<int> level(1, 5);

  constexpr int kCells = 40;
  std::array<std::array<double, 3>, kCells> cells{};
  for (auto& cell : cells) {
    cell[0] = coord(rng);
    cell[1] = coord(rng);
    cell[2] = 0.2 * level(rng);
  }

  Image img(side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t col = 0; col < side; ++col) {
      const double x = norm_x(col, side);
      const double y = norm_y(r, side);
      double best = std::numeric_limits<double>::infinity();
      double value = 0.0;
      for (const auto& cell : cells) {
        const double d = (x - cell[0]) * (x - cell[0]) + (y - cell[1]) * (y - cell[1]);
        if (d < best) {
          best = d;
          value = cell[2];
        }
      }
      img(r, col) = value;
    }
  }
  return img;
}

Image make_phantom(std::string_view name, std::size_t side, std::uint64_t seed) {
  if (name == "shepplogan") return shepp_logan(side);
  if (name == "threephases") return threephases_analog(side, seed);
  if (name == "grains") return grains_analog(side, seed);
  throw std::invalid_argument("unknown phantom '" + std::string(name) + "'");
}

const std::vector<std::string>& phantom_names() {
  static const std::vector<std::string> names{"shepplogan", "threephases", "grains"};
  return names;
}

}  // namespace scs::ct
