#pragma once

#include "scs/ct/image.hpp"

namespace scs::ct {

/// Isotropic total variation over the forward-difference window
/// 0 <= i, j <= N-2 (row i, column j).
double tv_value(const Image& x);

/// Subgradient of tv_value. Each window term contributes to the three pixels
/// it touches; terms with a zero denominator contribute nothing.
Image tv_subgradient(const Image& x);

}  // namespace scs::ct
