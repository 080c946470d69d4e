#pragma once

#include <string>

#include "scs/profiles.hpp"

namespace scs::experiment {

/// Self-contained SVG step chart of rho_s(tau) against log2(tau).
std::string profile_svg(const profiles::Profile& profile, const std::string& title);

}  // namespace scs::experiment
