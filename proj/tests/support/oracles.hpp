#pragma once

// Brute-force reference implementations. They share no code with the library
// beyond the containers, and favor the textbook formulation over speed.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rgbwforge/cfa.hpp"
#include "rgbwforge/image.hpp"

namespace oracle {

using rgbwforge::CfaPhase;
using rgbwforge::Channel;
using rgbwforge::ImagePlane;

/// reflect-101 by repeated folding.
inline std::size_t mirror(long long i, std::size_t n) {
  if (n == 1) return 0;
  const long long last = static_cast<long long>(n) - 1;
  while (i < 0 || i > last) {
    if (i < 0) i = -i;
    if (i > last) i = 2 * last - i;
  }
  return static_cast<std::size_t>(i);
}

inline double px(const ImagePlane& p, long long x, long long y) {
  return p.at(mirror(x, p.width()), mirror(y, p.height()));
}

inline ImagePlane box_mean(const ImagePlane& p, std::size_t r) {
  const long long R = static_cast<long long>(r);
  std::vector<double> out(p.size());
  for (std::size_t y = 0; y < p.height(); ++y) {
    for (std::size_t x = 0; x < p.width(); ++x) {
      double s = 0.0;
      for (long long dy = -R; dy <= R; ++dy) {
        for (long long dx = -R; dx <= R; ++dx) {
          s += px(p, static_cast<long long>(x) + dx, static_cast<long long>(y) + dy);
        }
      }
      out[y * p.width() + x] = s / static_cast<double>((2 * R + 1) * (2 * R + 1));
    }
  }
  return ImagePlane(p.width(), p.height(), std::move(out));
}

/// Guided filter evaluated window by window: fit a, b per window from raw
/// sums, then average the coefficients of all windows covering each pixel.
inline ImagePlane guided_filter(const ImagePlane& input, const ImagePlane& guide, std::size_t r,
                                double eps) {
  const std::size_t w = input.width(), h = input.height();
  const long long R = static_cast<long long>(r);
  const double n = static_cast<double>((2 * R + 1) * (2 * R + 1));
  std::vector<double> a(w * h), b(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double si = 0, sp = 0, sip = 0, sii = 0;
      for (long long dy = -R; dy <= R; ++dy) {
        for (long long dx = -R; dx <= R; ++dx) {
          const long long xx = static_cast<long long>(x) + dx, yy = static_cast<long long>(y) + dy;
          const double gi = px(guide, xx, yy), pi = px(input, xx, yy);
          si += gi;
          sp += pi;
          sip += gi * pi;
          sii += gi * gi;
        }
      }
      const double mi = si / n, mp = sp / n;
      const double cov = sip / n - mi * mp, var = sii / n - mi * mi;
      a[y * w + x] = cov / (var + eps);
      b[y * w + x] = mp - a[y * w + x] * mi;
    }
  }
  const ImagePlane ma = box_mean(ImagePlane(w, h, std::move(a)), r);
  const ImagePlane mb = box_mean(ImagePlane(w, h, std::move(b)), r);
  std::vector<double> out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) out[y * w + x] = ma.at(x, y) * guide.at(x, y) + mb.at(x, y);
  }
  return ImagePlane(w, h, std::move(out));
}

inline Channel site(CfaPhase phase, std::size_t x, std::size_t y) {
  static constexpr Channel kQuads[4][4] = {
      {Channel::R, Channel::G, Channel::G, Channel::B},
      {Channel::G, Channel::R, Channel::B, Channel::G},
      {Channel::G, Channel::B, Channel::R, Channel::G},
      {Channel::B, Channel::G, Channel::G, Channel::R},
  };
  return kQuads[static_cast<int>(phase)][(y % 2) * 2 + (x % 2)];
}

using Kernel = std::array<std::array<double, 5>, 5>;

// Malvar, He, Cutler (2004) filter taps, to be divided by 8.
inline constexpr Kernel kGreenAtRb{{{0, 0, -1, 0, 0},
                                    {0, 0, 2, 0, 0},
                                    {-1, 2, 4, 2, -1},
                                    {0, 0, 2, 0, 0},
                                    {0, 0, -1, 0, 0}}};
// Color at a green site whose same-row neighbors carry that color.
inline constexpr Kernel kColorAtGreenRow{{{0, 0, 0.5, 0, 0},
                                          {0, -1, 0, -1, 0},
                                          {-1, 4, 5, 4, -1},
                                          {0, -1, 0, -1, 0},
                                          {0, 0, 0.5, 0, 0}}};
// Color at a green site whose same-column neighbors carry that color.
inline constexpr Kernel kColorAtGreenColumn{{{0, 0, -1, 0, 0},
                                             {0, -1, 4, -1, 0},
                                             {0.5, 0, 5, 0, 0.5},
                                             {0, -1, 4, -1, 0},
                                             {0, 0, -1, 0, 0}}};
// Red at a blue site and blue at a red site.
inline constexpr Kernel kColorAtOpposite{{{0, 0, -1.5, 0, 0},
                                          {0, 2, 0, 2, 0},
                                          {-1.5, 0, 6, 0, -1.5},
                                          {0, 2, 0, 2, 0},
                                          {0, 0, -1.5, 0, 0}}};

inline double convolve(const ImagePlane& m, std::size_t x, std::size_t y, const Kernel& k) {
  double s = 0.0;
  for (int dy = -2; dy <= 2; ++dy) {
    for (int dx = -2; dx <= 2; ++dx) {
      s += k[dy + 2][dx + 2] * px(m, static_cast<long long>(x) + dx, static_cast<long long>(y) + dy);
    }
  }
  return s / 8.0;
}

/// Unclamped Malvar demosaic, planes in R, G, B order.
inline std::array<ImagePlane, 3> malvar(const ImagePlane& mosaic, CfaPhase phase) {
  const std::size_t w = mosaic.width(), h = mosaic.height();
  std::array<std::vector<double>, 3> out{std::vector<double>(w * h), std::vector<double>(w * h),
                                         std::vector<double>(w * h)};
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const Channel here = site(phase, x, y);
      const std::size_t i = y * w + x;
      for (int c = 0; c < 3; ++c) {
        const auto want = static_cast<Channel>(c);
        double v;
        if (want == here) {
          v = mosaic.at(x, y);
        } else if (want == Channel::G) {
          v = convolve(mosaic, x, y, kGreenAtRb);
        } else if (here == Channel::G) {
          const bool row_has_want = site(phase, x + 1, y) == want;
          v = convolve(mosaic, x, y, row_has_want ? kColorAtGreenRow : kColorAtGreenColumn);
        } else {
          v = convolve(mosaic, x, y, kColorAtOpposite);
        }
        out[c][i] = v;
      }
    }
  }
  return {ImagePlane(w, h, std::move(out[0])), ImagePlane(w, h, std::move(out[1])),
          ImagePlane(w, h, std::move(out[2]))};
}

/// SSIM of one plane with an explicit Gaussian window per valid pixel.
inline double ssim(const ImagePlane& a, const ImagePlane& b) {
  constexpr int kR = 5;
  double g[11][11];
  double gs = 0.0;
  for (int dy = -kR; dy <= kR; ++dy) {
    for (int dx = -kR; dx <= kR; ++dx) {
      g[dy + kR][dx + kR] = std::exp(-(dx * dx + dy * dy) / (2.0 * 1.5 * 1.5));
      gs += g[dy + kR][dx + kR];
    }
  }
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t y = kR; y + kR < a.height(); ++y) {
    for (std::size_t x = kR; x + kR < a.width(); ++x) {
      double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
      for (int dy = -kR; dy <= kR; ++dy) {
        for (int dx = -kR; dx <= kR; ++dx) {
          const double wgt = g[dy + kR][dx + kR] / gs;
          const double va = a.at(x + dx, y + dy), vb = b.at(x + dx, y + dy);
          ma += wgt * va;
          mb += wgt * vb;
          saa += wgt * va * va;
          sbb += wgt * vb * vb;
          sab += wgt * va * vb;
        }
      }
      const double va = saa - ma * ma, vb = sbb - mb * mb, cov = sab - ma * mb;
      total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace oracle
