#pragma once

#include <filesystem>

#include "scs/ct/image.hpp"

namespace scs::ct {

/// 16-bit binary PGM (P5, maxval 65535). Pixel values are mapped linearly from
/// [lo, hi] of the image; lo and hi go to "<path>.txt" so read_pgm can undo it.
void write_pgm(const std::filesystem::path& path, const Image& image);
Image read_pgm(const std::filesystem::path& path);

/// N rows of N comma-separated values, full precision.
void write_image_csv(const std::filesystem::path& path, const Image& image);
Image read_image_csv(const std::filesystem::path& path);

/// Header "view,det,value", one row per bin in view-major order.
void write_sinogram_csv(const std::filesystem::path& path, const Sinogram& sinogram);
Sinogram read_sinogram_csv(const std::filesystem::path& path);

}  // namespace scs::ct
