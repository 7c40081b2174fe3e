#include "rgbwforge/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "rgbwforge/noise.hpp"

namespace rgbwforge {

namespace {

/// SplitMix64 stream; std distributions are implementation-defined, so draws
/// are converted by hand to stay identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }

 private:
  std::uint64_t state_;
};

using Color = std::array<double, 3>;

Color random_color(Rng& rng) {
  return {rng.uniform(0.05, 0.75), rng.uniform(0.05, 0.75), rng.uniform(0.05, 0.75)};
}

}  // namespace

RgbImage synthetic_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "synthetic-scene"));
  const std::size_t n = width * height;
  std::array<std::vector<double>, 3> ch{std::vector<double>(n), std::vector<double>(n),
                                        std::vector<double>(n)};
  const double fw = static_cast<double>(width);
  const double fh = static_cast<double>(height);

  const std::array<Color, 4> corners{random_color(rng), random_color(rng), random_color(rng),
                                     random_color(rng)};
  for (std::size_t y = 0; y < height; ++y) {
    const double v = height > 1 ? static_cast<double>(y) / (fh - 1.0) : 0.0;
    for (std::size_t x = 0; x < width; ++x) {
      const double u = width > 1 ? static_cast<double>(x) / (fw - 1.0) : 0.0;
      for (int c = 0; c < 3; ++c) {
        const double top = corners[0][c] * (1 - u) + corners[1][c] * u;
        const double bot = corners[2][c] * (1 - u) + corners[3][c] * u;
        ch[c][y * width + x] = top * (1 - v) + bot * v;
      }
    }
  }

  auto paint = [&](auto inside, const Color& color) {
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        if (!inside(static_cast<double>(x), static_cast<double>(y))) continue;
        for (int c = 0; c < 3; ++c) ch[c][y * width + x] = color[c];
      }
    }
  };

  for (int i = 0; i < 6; ++i) {
    const double x0 = rng.uniform(0, fw), y0 = rng.uniform(0, fh);
    const double rw = rng.uniform(0.05, 0.3) * fw, rh = rng.uniform(0.05, 0.3) * fh;
    const Color col = random_color(rng);
    if (i % 2 == 0) {
      paint([&](double x, double y) { return x >= x0 && x < x0 + rw && y >= y0 && y < y0 + rh; }, col);
    } else {
      const double r2 = 0.25 * rw * rw;
      paint([&](double x, double y) { return (x - x0) * (x - x0) + (y - y0) * (y - y0) < r2; }, col);
    }
  }

  // Grating patch: fine detail that binning and denoising both stress.
  {
    const double gx = rng.uniform(0, 0.6) * fw, gy = rng.uniform(0, 0.6) * fh;
    const double gw = 0.35 * fw, gh = 0.35 * fh;
    const double period = rng.uniform(5.0, 14.0);
    const double angle = rng.uniform(0.0, std::numbers::pi);
    const Color lo = random_color(rng), hi = random_color(rng);
    const double kx = std::cos(angle) * 2.0 * std::numbers::pi / period;
    const double ky = std::sin(angle) * 2.0 * std::numbers::pi / period;
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        const double fx = static_cast<double>(x), fy = static_cast<double>(y);
        if (fx < gx || fx >= gx + gw || fy < gy || fy >= gy + gh) continue;
        const double t = 0.5 + 0.5 * std::sin(kx * fx + ky * fy);
        for (int c = 0; c < 3; ++c) ch[c][y * width + x] = lo[c] * (1 - t) + hi[c] * t;
      }
    }
  }

  // Thin strokes, 1-3 px wide.
  for (int i = 0; i < 10; ++i) {
    const double x0 = rng.uniform(0, fw), y0 = rng.uniform(0, fh);
    const double len = rng.uniform(0.1, 0.4) * std::min(fw, fh);
    const double angle = rng.uniform(0.0, std::numbers::pi);
    const double half = rng.uniform(0.5, 1.5);
    const double dx = std::cos(angle), dy = std::sin(angle);
    const Color col = random_color(rng);
    paint([&](double x, double y) {
      const double px = x - x0, py = y - y0;
      const double along = px * dx + py * dy;
      const double across = std::abs(-px * dy + py * dx);
      return along >= 0 && along <= len && across <= half;
    }, col);
  }

  for (auto& c : ch) {
    for (double& v : c) v = std::clamp(v, 0.02, 0.8);
  }
  return RgbImage(ImagePlane(width, height, std::move(ch[0])), ImagePlane(width, height, std::move(ch[1])),
                  ImagePlane(width, height, std::move(ch[2])));
}

BinnedPair synthetic_pair(std::size_t width, std::size_t height, std::uint64_t seed,
                          double transmittance) {
  const RgbImage rgb = synthetic_scene(width, height, seed);
  std::vector<double> bayer(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const auto c = static_cast<std::size_t>(bayer_color(CfaPhase::RGGB, y, x));
      bayer[y * width + x] = rgb.channel(c).at(x, y);
    }
  }
  return BinnedPair(BayerImage(ImagePlane(width, height, std::move(bayer)), CfaPhase::RGGB),
                    synth_white(rgb, {}, transmittance));
}

}  // namespace rgbwforge
