#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rgbwforge/image.hpp"

namespace rgbwforge {

/// Read + shot noise at a given analog gain.
///
/// With g = 10^(gain_db/20), a pixel of normalized value x receives Gaussian
/// noise of variance (g*read_sigma_0)^2 + g*shot_k_0*x.
struct NoiseParams {
  double gain_db = 0.0;
  double read_sigma_0 = 1.0 / 1023.0;
  double shot_k_0 = 0.5 / 1023.0;
  std::uint64_t seed = 0;

  void validate() const;
  double gain() const;
  double read_variance() const;
  double shot_slope() const;
  double variance_at(double x) const { return read_variance() + shot_slope() * x; }
};

/// Amplitude decibels to linear gain.
double db_to_gain(double db);

/// Standard normal deviate for (seed, index): a pure function of its inputs,
/// so per-pixel noise does not depend on evaluation order or thread count.
double standard_normal(std::uint64_t seed, std::uint64_t index);

/// Mixes a tag into a seed; used to give each scene/plane/gain its own stream.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

/// out = clamp(x + n, 0, 1), n ~ N(0, variance_at(x)) drawn from the counter
/// stream keyed by (params.seed, pixel index). Input values must lie in [0,1].
ImagePlane apply_noise(const ImagePlane& plane, const NoiseParams& params);

struct NoiseFit {
  double read_var = 0.0;
  double shot_slope = 0.0;
  double read_var_stderr = 0.0;
  double shot_slope_stderr = 0.0;
  std::size_t bins_used = 0;
};

struct NoiseFitOptions {
  std::size_t bins = 64;
  std::size_t min_count = 32;
};

/// Fits residual variance against clean intensity: var = read_var + shot_slope * x.
///
/// Pixels are grouped into equal-width intensity bins of the clean plane; each
/// bin with at least min_count pixels contributes its residual variance at its
/// mean intensity, weighted by the inverse sampling variance of that estimate.
/// Throws EstimationError when fewer than two bins are populated.
NoiseFit estimate_noise(const ImagePlane& clean, const ImagePlane& noisy,
                        const NoiseFitOptions& options = {});

/// Blind noise variance from a single plane (Immerkaer's Laplacian-difference
/// estimator over the interior). Edges bias it upward. Planes smaller than
/// 3x3 give 0.
double estimate_noise_variance(const ImagePlane& plane);

}  // namespace rgbwforge
