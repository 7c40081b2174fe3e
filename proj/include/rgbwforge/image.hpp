#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rgbwforge/cfa.hpp"

namespace rgbwforge {

/// Dense row-major raster of finite doubles.
///
/// Pipeline code keeps values normalized to [0,1]; integer code values only
/// appear at the file boundary (see normalize/denormalize). Instances are
/// immutable once built.
class ImagePlane {
 public:
  /// Throws ShapeError on zero dimensions or a size mismatch, ConfigError on NaN/Inf.
  ImagePlane(std::size_t width, std::size_t height, std::vector<double> data);
  ImagePlane(std::size_t width, std::size_t height, double fill);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
  std::span<const double> row(std::size_t y) const {
    return {data_.data() + y * width_, width_};
  }
  std::span<const double> pixels() const { return data_; }

  /// Moves the buffer out; the plane is left empty and must not be used afterwards.
  std::vector<double> release() && { return std::move(data_); }

  bool same_shape(const ImagePlane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool operator==(const ImagePlane&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> data_;
};

/// Black and white points, in whatever unit the associated plane uses.
struct Levels {
  double black = 64.0;
  double white = 1023.0;

  /// Throws ConfigError unless white > black.
  void validate() const;

  static constexpr Levels unit() { return {0.0, 1.0}; }
  bool operator==(const Levels&) const = default;
};

/// Default 10-bit sensor data in a 16-bit container.
inline constexpr Levels kDefaultCodeLevels{64.0, 1023.0};
inline constexpr std::uint16_t kContainerMax = 65535;

double normalize_value(double code, const Levels& levels);

/// clamp((v - black) / (white - black), 0, 1) per pixel.
ImagePlane normalize(std::span<const std::uint16_t> codes, std::size_t width, std::size_t height,
                     const Levels& levels);

/// Inverse affine map, rounded half away from zero and clamped to [0, container_max].
std::vector<std::uint16_t> denormalize(const ImagePlane& plane, const Levels& levels,
                                       std::uint16_t container_max = kContainerMax);

class RgbImage {
 public:
  /// Planes must share dimensions and hold values in [0,1].
  RgbImage(ImagePlane r, ImagePlane g, ImagePlane b);

  std::size_t width() const { return r_.width(); }
  std::size_t height() const { return r_.height(); }
  const ImagePlane& r() const { return r_; }
  const ImagePlane& g() const { return g_; }
  const ImagePlane& b() const { return b_; }
  const ImagePlane& channel(std::size_t c) const { return c == 0 ? r_ : (c == 1 ? g_ : b_); }

  bool operator==(const RgbImage&) const = default;

 private:
  ImagePlane r_, g_, b_;
};

class BayerImage {
 public:
  /// Requires even dimensions and black < white.
  BayerImage(ImagePlane plane, CfaPhase phase, Levels levels = Levels::unit());

  const ImagePlane& plane() const { return plane_; }
  CfaPhase phase() const { return phase_; }
  const Levels& levels() const { return levels_; }
  std::size_t width() const { return plane_.width(); }
  std::size_t height() const { return plane_.height(); }
  Channel color_at(std::size_t x, std::size_t y) const { return bayer_color(phase_, y, x); }

  bool operator==(const BayerImage&) const = default;

 private:
  ImagePlane plane_;
  CfaPhase phase_;
  Levels levels_;
};

class RgbwImage {
 public:
  /// Requires dimensions that are multiples of 4 and black < white.
  RgbwImage(ImagePlane plane, RgbwLayout layout, Levels levels = Levels::unit());

  const ImagePlane& plane() const { return plane_; }
  const RgbwLayout& layout() const { return layout_; }
  const Levels& levels() const { return levels_; }
  std::size_t width() const { return plane_.width(); }
  std::size_t height() const { return plane_.height(); }

 private:
  ImagePlane plane_;
  RgbwLayout layout_;
  Levels levels_;
};

}  // namespace rgbwforge
