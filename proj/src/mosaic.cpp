#include "rgbwforge/mosaic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rgbwforge/error.hpp"
#include "rgbwforge/simd/kernels.hpp"

namespace rgbwforge {

BinnedPair::BinnedPair(BayerImage bayer, ImagePlane white)
    : dbinb(std::move(bayer)), dbinc(std::move(white)) {
  if (!dbinb.plane().same_shape(dbinc)) throw ShapeError("DbinB and DbinC differ in size");
}

ImagePlane synth_white(const RgbImage& rgb, const WhiteWeights& weights, double transmittance) {
  if (weights.r < 0.0 || weights.g < 0.0 || weights.b < 0.0) {
    throw ConfigError("white synthesis weights must be non-negative");
  }
  if (std::abs(weights.r + weights.g + weights.b - 1.0) > 1e-9) {
    throw ConfigError("white synthesis weights must sum to 1");
  }
  if (!(transmittance >= 1.0)) throw ConfigError("white transmittance gain must be >= 1");

  const auto r = rgb.r().pixels();
  const auto g = rgb.g().pixels();
  const auto b = rgb.b().pixels();
  std::vector<double> w(r.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double lum = weights.r * r[i] + weights.g * g[i] + weights.b * b[i];
    w[i] = std::clamp(transmittance * lum, 0.0, 1.0);
  }
  return ImagePlane(rgb.width(), rgb.height(), std::move(w));
}

RgbwImage mosaic_rgbw(const RgbImage& rgb, const ImagePlane& white, const RgbwLayout& layout) {
  if (rgb.width() != white.width() || rgb.height() != white.height()) {
    throw ShapeError("RGB and white planes differ in size");
  }
  if (rgb.width() % 4 || rgb.height() % 4) {
    throw ShapeError("RGBW mosaic dimensions must be multiples of 4");
  }
  const std::size_t w = rgb.width();
  const std::size_t h = rgb.height();
  std::vector<double> out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const Channel c = layout.at(y, x);
      const ImagePlane& src = c == Channel::W ? white : rgb.channel(static_cast<std::size_t>(c));
      out[y * w + x] = src.at(x, y);
    }
  }
  return RgbwImage(ImagePlane(w, h, std::move(out)), layout);
}

BinnedPair bin_diagonal(const RgbwImage& rgbw) {
  const ImagePlane& in = rgbw.plane();
  const std::size_t ow = in.width() / 2;
  const std::size_t oh = in.height() / 2;
  const RgbwLayout& layout = rgbw.layout();
  const auto& k = simd::kernels();

  std::vector<double> bayer(ow * oh);
  std::vector<double> white(ow * oh);
  std::vector<double> main(ow), anti(ow);
  for (std::size_t cy = 0; cy < oh; ++cy) {
    k.diag_means(in.row(2 * cy).data(), in.row(2 * cy + 1).data(), main.data(), anti.data(), ow);
    double* brow = bayer.data() + cy * ow;
    double* wrow = white.data() + cy * ow;
    // Cell orientation repeats every two cells along a row.
    const bool even_main = layout.white_on_main_diagonal(cy, 0);
    const bool odd_main = layout.white_on_main_diagonal(cy, 1);
    if (even_main && odd_main) {
      std::copy(main.begin(), main.end(), wrow);
      std::copy(anti.begin(), anti.end(), brow);
    } else {
      for (std::size_t cx = 0; cx < ow; ++cx) {
        const bool w_main = (cx & 1) ? odd_main : even_main;
        wrow[cx] = w_main ? main[cx] : anti[cx];
        brow[cx] = w_main ? anti[cx] : main[cx];
      }
    }
  }
  return BinnedPair(BayerImage(ImagePlane(ow, oh, std::move(bayer)), layout.binned_phase(),
                               rgbw.levels()),
                    ImagePlane(ow, oh, std::move(white)));
}

}  // namespace rgbwforge
