#pragma once

#include <cstddef>

#include "rgbwforge/image.hpp"

namespace rgbwforge {

/// Maps an out-of-range index into [0, n) by mirroring without repeating the
/// edge sample (reflect-101: ... 2 1 | 0 1 2 ... n-1 | n-2 ...). Offsets of
/// any magnitude are folded.
std::size_t reflect101(long long i, std::size_t n);

/// Mean over the (2r+1)x(2r+1) window around each pixel, reflect-101 borders.
/// O(N) in the pixel count via a summed-area table of the padded plane.
ImagePlane box_mean(const ImagePlane& plane, std::size_t radius);

/// Guided filter: per window fit input ~ a*guide + b with
/// a = cov(guide, input) / (var(guide) + eps), then average the coefficients
/// over windows and evaluate q = mean(a)*guide + mean(b).
///
/// All box statistics use box_mean, so cost is O(N) regardless of radius.
/// Throws ShapeError if input and guide differ in size, ConfigError if eps <= 0.
ImagePlane guided_filter(const ImagePlane& input, const ImagePlane& guide, std::size_t radius,
                         double eps);

}  // namespace rgbwforge
