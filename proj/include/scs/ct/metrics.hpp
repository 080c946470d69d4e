#pragma once

#include "scs/ct/image.hpp"

namespace scs::ct {

/// 10 log10(y_max / MSE) with y_max = max(y_true). Note y_max is not squared.
/// Returns +infinity when the images are identical; throws std::domain_error
/// when y_max <= 0.
double psnr(const Image& x, const Image& y_true);

/// Single-window SSIM over the whole image.
double ssim(const Image& x, const Image& y, double c1, double c2);

/// SSIM with C1 = (0.01 y_max)^2, C2 = (0.03 y_max)^2, y_max = max(y).
double ssim(const Image& x, const Image& y);

}  // namespace scs::ct
