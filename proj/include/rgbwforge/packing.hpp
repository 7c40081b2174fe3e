#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rgbwforge/image.hpp"

namespace rgbwforge {

/// Splits a plane into factor² phase planes (pixel unshuffle).
///
/// Plane index p*factor + q holds input samples (i*factor + p, j*factor + q),
/// so a Bayer mosaic with factor 2 yields its four CFA sites in raster order
/// of the top-left quad.
std::vector<ImagePlane> space_to_depth(const ImagePlane& plane, std::size_t factor);

/// Exact inverse of space_to_depth (pixel shuffle).
ImagePlane depth_to_space(std::span<const ImagePlane> planes, std::size_t factor);

}  // namespace rgbwforge
