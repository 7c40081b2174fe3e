#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "rgbwforge/image.hpp"

namespace rgbwforge {

/// Sidecar of a .bin raster. Written as key=value lines:
/// width, height, black_level, white_level, cfa (phase or "none"), gain_db, layout.
struct RawMeta {
  std::size_t width = 0;
  std::size_t height = 0;
  Levels levels = kDefaultCodeLevels;
  std::optional<CfaPhase> cfa;
  double gain_db = 0.0;
  std::optional<RgbwLayout> layout;
};

struct RawFile {
  RawMeta meta;
  std::vector<std::uint16_t> codes;  ///< row-major
};

/// `path.bin` -> `path.meta`.
std::filesystem::path meta_path(const std::filesystem::path& bin_path);

/// Writes unsigned 16-bit little-endian samples to bin_path and the sidecar next to it.
void write_raw(const std::filesystem::path& bin_path, const RawFile& raw);
RawFile read_raw(const std::filesystem::path& bin_path);

/// Quantizes a normalized plane with the meta's levels and writes it.
void write_plane(const std::filesystem::path& bin_path, const ImagePlane& plane, const RawMeta& meta);

/// Reads a raster and normalizes it with the levels in its sidecar.
ImagePlane read_plane(const std::filesystem::path& bin_path, RawMeta* meta_out = nullptr);

/// Reads a Bayer raster (the sidecar must name a CFA phase), normalized to unit levels.
BayerImage read_bayer(const std::filesystem::path& bin_path, RawMeta* meta_out = nullptr);

/// Binary PPM, 8-bit: header "P6\n<width> <height>\n255\n", samples rounded half away from zero.
void write_ppm(const std::filesystem::path& path, const RgbImage& rgb);

/// Reads binary PPM (P6) with maxval up to 65535, scaled to [0,1].
RgbImage read_ppm(const std::filesystem::path& path);

}  // namespace rgbwforge
