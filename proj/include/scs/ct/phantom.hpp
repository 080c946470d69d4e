#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scs/ct/image.hpp"

namespace scs::ct {

/// Modified (high-contrast) ten-ellipse Shepp-Logan head phantom, values in [0, 1].
Image shepp_logan(std::size_t side);

/// Seeded random disks at gray levels 1/3, 2/3 and 1 on a zero background.
Image threephases_analog(std::size_t side, std::uint64_t seed);

/// Seeded Voronoi tessellation; each cell takes a level from {0.2, 0.4, 0.6, 0.8, 1}.
Image grains_analog(std::size_t side, std::uint64_t seed);

/// "shepplogan", "threephases" or "grains".
Image make_phantom(std::string_view name, std::size_t side, std::uint64_t seed);

const std::vector<std::string>& phantom_names();

}  // namespace scs::ct
