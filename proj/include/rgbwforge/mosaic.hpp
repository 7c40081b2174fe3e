#pragma once

#include "rgbwforge/image.hpp"

namespace rgbwforge {

/// Half-resolution outputs of diagonal binning: the Bayer image (DbinB) and
/// the dense white image (DbinC). Both share dimensions.
struct BinnedPair {
  BayerImage dbinb;
  ImagePlane dbinc;

  BinnedPair(BayerImage bayer, ImagePlane white);
};

struct WhiteWeights {
  double r = 0.299;
  double g = 0.587;
  double b = 0.114;
};

/// W = t * (wr*R + wg*G + wb*B), clamped to [0,1].
///
/// Weights must be non-negative and sum to 1 within 1e-9; the transmittance
/// gain t must be >= 1. Either violation is a ConfigError.
ImagePlane synth_white(const RgbImage& rgb, const WhiteWeights& weights = {},
                       double transmittance = 1.0);

/// Samples the channel named by `layout` at every site; W sites read `white`.
RgbwImage mosaic_rgbw(const RgbImage& rgb, const ImagePlane& white,
                      const RgbwLayout& layout = RgbwLayout::canonical());

/// Averages the two W pixels and the two color pixels of each 2x2 cell.
///
/// Output dimensions are exactly half the input; the Bayer phase follows the
/// layout's per-cell colors (RGGB for the canonical layout). Levels carry over.
BinnedPair bin_diagonal(const RgbwImage& rgbw);

}  // namespace rgbwforge
