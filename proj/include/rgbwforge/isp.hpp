#pragma once

#include <array>
#include <string_view>

#include "rgbwforge/image.hpp"

namespace rgbwforge {

struct WbGains {
  double r = 1.0;
  double g = 1.0;
  double b = 1.0;
  bool operator==(const WbGains&) const = default;
};

/// Row-major 3x3 color correction matrix.
using ColorMatrix = std::array<double, 9>;

inline constexpr ColorMatrix kIdentityCcm{1, 0, 0, 0, 1, 0, 0, 0, 1};

struct Gamma {
  enum class Kind { Power, Srgb };
  Kind kind = Kind::Srgb;
  double exponent = 2.2;  ///< used by Kind::Power: out = v^(1/exponent)

  static Gamma srgb() { return {Kind::Srgb, 2.2}; }
  static Gamma power(double exponent) { return {Kind::Power, exponent}; }
  bool operator==(const Gamma&) const = default;
};

enum class DemosaicMethod { Bilinear, Malvar };

std::string_view to_string(DemosaicMethod m);
DemosaicMethod parse_demosaic_method(std::string_view text);

struct IspConfig {
  WbGains wb{1.8, 1.0, 1.6};
  ColorMatrix ccm{1.41, -0.33, -0.08, -0.24, 1.36, -0.12, -0.05, -0.41, 1.46};
  Gamma gamma = Gamma::srgb();
  DemosaicMethod demosaic = DemosaicMethod::Malvar;

  /// Unit gains, identity CCM, gamma 1, Malvar demosaic.
  static IspConfig identity();

  /// Gains > 0, CCM rows summing to 1 within 1e-6, gamma exponent > 0.
  void validate() const;

  bool operator==(const IspConfig&) const = default;
};

/// Subtracts the black level and rescales by the white level; the result has unit levels.
BayerImage black_level_correct(const BayerImage& bayer);

/// Multiplies every site by the gain of its CFA color and clamps to [0,1].
BayerImage white_balance(const BayerImage& bayer, const WbGains& gains);

/// Gray-world estimate: gains (mean_G/mean_R, 1, mean_G/mean_B).
WbGains gray_world_gains(const BayerImage& bayer);

/// Unclamped demosaic output in R, G, B order. Borders use reflect-101 padding,
/// which keeps CFA parity. Bilinear preserves native samples exactly; Malvar
/// applies the Malvar-He-Cutler 5x5 gradient-corrected linear filters.
std::array<ImagePlane, 3> demosaic_planes(const BayerImage& bayer, DemosaicMethod method);

/// demosaic_planes clamped to [0,1].
RgbImage demosaic(const BayerImage& bayer, DemosaicMethod method);

/// Per-pixel matrix multiply followed by a clamp to [0,1].
/// Throws ConfigError unless every row sums to 1 within 1e-6.
RgbImage apply_ccm(const RgbImage& rgb, const ColorMatrix& ccm);

double gamma_encode(double v, const Gamma& gamma);
RgbImage apply_gamma(const RgbImage& rgb, const Gamma& gamma);

/// BLC -> WB -> demosaic -> CCM -> gamma.
RgbImage run_isp(const BayerImage& bayer, const IspConfig& config);

}  // namespace rgbwforge
