#include "rgbwforge/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgbwforge/error.hpp"

namespace rgbwforge {

ImagePlane::ImagePlane(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width_ == 0 || height_ == 0) throw ShapeError("image plane must be at least 1x1");
  if (data_.size() != width_ * height_) {
    throw ShapeError("image plane data length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(width_) + "x" + std::to_string(height_));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw ConfigError("image plane contains a non-finite value");
  }
}

ImagePlane::ImagePlane(std::size_t width, std::size_t height, double fill)
    : ImagePlane(width, height, std::vector<double>(width * height, fill)) {}

void Levels::validate() const {
  if (!(white > black)) {
    throw ConfigError("white level (" + std::to_string(white) + ") must exceed black level (" +
                      std::to_string(black) + ")");
  }
}

double normalize_value(double code, const Levels& levels) {
  levels.validate();
  return std::clamp((code - levels.black) / (levels.white - levels.black), 0.0, 1.0);
}

ImagePlane normalize(std::span<const std::uint16_t> codes, std::size_t width, std::size_t height,
                     const Levels& levels) {
  levels.validate();
  if (codes.size() != width * height) throw ShapeError("code raster size mismatch");
  const double range = levels.white - levels.black;
  std::vector<double> out(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    out[i] = std::clamp((static_cast<double>(codes[i]) - levels.black) / range, 0.0, 1.0);
  }
  return ImagePlane(width, height, std::move(out));
}

std::vector<std::uint16_t> denormalize(const ImagePlane& plane, const Levels& levels,
                                       std::uint16_t container_max) {
  levels.validate();
  const double range = levels.white - levels.black;
  std::vector<std::uint16_t> out(plane.size());
  const auto px = plane.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double code = std::round(px[i] * range + levels.black);
    out[i] = static_cast<std::uint16_t>(std::clamp(code, 0.0, static_cast<double>(container_max)));
  }
  return out;
}

namespace {

void require_unit_range(const ImagePlane& p, const char* name) {
  for (double v : p.pixels()) {
    if (v < 0.0 || v > 1.0) {
      throw ConfigError(std::string("RGB channel ") + name + " has a value outside [0,1]");
    }
  }
}

}  // namespace

RgbImage::RgbImage(ImagePlane r, ImagePlane g, ImagePlane b)
    : r_(std::move(r)), g_(std::move(g)), b_(std::move(b)) {
  if (!r_.same_shape(g_) || !r_.same_shape(b_)) throw ShapeError("RGB planes differ in size");
  require_unit_range(r_, "R");
  require_unit_range(g_, "G");
  require_unit_range(b_, "B");
}

BayerImage::BayerImage(ImagePlane plane, CfaPhase phase, Levels levels)
    : plane_(std::move(plane)), phase_(phase), levels_(levels) {
  if (plane_.width() % 2 || plane_.height() % 2) {
    throw ShapeError("Bayer image dimensions must be even");
  }
  levels_.validate();
}

RgbwImage::RgbwImage(ImagePlane plane, RgbwLayout layout, Levels levels)
    : plane_(std::move(plane)), layout_(layout), levels_(levels) {
  if (plane_.width() % 4 || plane_.height() % 4) {
    throw ShapeError("RGBW image dimensions must be multiples of 4");
  }
  levels_.validate();
}

}  // namespace rgbwforge
