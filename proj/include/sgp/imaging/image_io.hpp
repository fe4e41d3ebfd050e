#pragma once

#include <filesystem>

#include "sgp/imaging/image.hpp"

namespace sgp::imaging {

/// Raw format: 8-byte magic "SGPIMAGE", uint32 rows, uint32 cols (little
/// endian), then rows*cols little-endian doubles in row-major order.
void write_raw(const std::filesystem::path& path, const Image& image);
Image read_raw(const std::filesystem::path& path);

/// 16-bit binary PGM (P5, maxval 65535), linearly rescaled from [min, max].
void write_pgm(const std::filesystem::path& path, const Image& image);
/// Reads 8- or 16-bit binary PGM; values are returned as raw gray levels.
Image read_pgm(const std::filesystem::path& path);

/// Dispatches on the extension: ".pgm" for PGM, anything else raw.
Image read_image(const std::filesystem::path& path);

}  // namespace sgp::imaging
