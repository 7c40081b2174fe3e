#pragma once

#include <cstddef>
#include <cstdint>

#include "rgbwforge/image.hpp"
#include "rgbwforge/mosaic.hpp"

namespace rgbwforge {

/// Procedural linear-light test scene: a smooth colored gradient overlaid with
/// flat shapes (hard edges), a sinusoidal grating patch and thin strokes.
/// Values stay within [0.02, 0.8]. Pure function of (width, height, seed).
RgbImage synthetic_scene(std::size_t width, std::size_t height, std::uint64_t seed);

/// Noise-free DbinB/DbinC-shaped pair at the given (binned) resolution, for
/// benchmarking: an RGGB sampling of a synthetic scene plus its synthesized W.
BinnedPair synthetic_pair(std::size_t width, std::size_t height, std::uint64_t seed,
                          double transmittance = 1.2);

}  // namespace rgbwforge
