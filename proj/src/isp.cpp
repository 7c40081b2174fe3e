#include "rgbwforge/isp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rgbwforge/error.hpp"
#include "rgbwforge/guided_filter.hpp"
#include "rgbwforge/simd/kernels.hpp"

namespace rgbwforge {

std::string_view to_string(DemosaicMethod m) {
  return m == DemosaicMethod::Malvar ? "malvar" : "bilinear";
}

DemosaicMethod parse_demosaic_method(std::string_view text) {
  if (text == "malvar") return DemosaicMethod::Malvar;
  if (text == "bilinear") return DemosaicMethod::Bilinear;
  throw ConfigError("unknown demosaic method '" + std::string(text) + "'");
}

IspConfig IspConfig::identity() {
  IspConfig c;
  c.wb = {1.0, 1.0, 1.0};
  c.ccm = kIdentityCcm;
  c.gamma = Gamma::power(1.0);
  c.demosaic = DemosaicMethod::Malvar;
  return c;
}

namespace {

void check_ccm(const ColorMatrix& m) {
  for (int row = 0; row < 3; ++row) {
    const double sum = m[3 * row] + m[3 * row + 1] + m[3 * row + 2];
    if (!(std::abs(sum - 1.0) <= 1e-6)) {
      throw ConfigError("CCM row " + std::to_string(row) + " sums to " + std::to_string(sum) +
                        ", expected 1");
    }
  }
}

double gain_for(const WbGains& g, Channel c) {
  switch (c) {
    case Channel::R: return g.r;
    case Channel::G: return g.g;
    case Channel::B: return g.b;
    case Channel::W: break;
  }
  throw ConfigError("white balance has no gain for W sites");
}

}  // namespace

void IspConfig::validate() const {
  if (!(wb.r > 0.0 && wb.g > 0.0 && wb.b > 0.0)) throw ConfigError("white balance gains must be > 0");
  check_ccm(ccm);
  if (gamma.kind == Gamma::Kind::Power && !(gamma.exponent > 0.0)) {
    throw ConfigError("gamma exponent must be > 0");
  }
}

BayerImage black_level_correct(const BayerImage& bayer) {
  const Levels& lv = bayer.levels();
  const double range = lv.white - lv.black;
  std::vector<double> out(bayer.plane().size());
  const auto in = bayer.plane().pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp((in[i] - lv.black) / range, 0.0, 1.0);
  }
  return BayerImage(ImagePlane(bayer.width(), bayer.height(), std::move(out)), bayer.phase());
}

BayerImage white_balance(const BayerImage& bayer, const WbGains& gains) {
  if (!(gains.r > 0.0 && gains.g > 0.0 && gains.b > 0.0)) {
    throw ConfigError("white balance gains must be > 0");
  }
  const auto quad = bayer_quad(bayer.phase());
  const std::size_t w = bayer.width();
  std::vector<double> out(bayer.plane().size());
  const auto& k = simd::kernels();
  for (std::size_t y = 0; y < bayer.height(); ++y) {
    const std::size_t q = (y & 1) * 2;
    k.gain_alternating(bayer.plane().row(y).data(), gain_for(gains, quad[q]),
                       gain_for(gains, quad[q + 1]), out.data() + y * w, w);
  }
  return BayerImage(ImagePlane(w, bayer.height(), std::move(out)), bayer.phase(), bayer.levels());
}

WbGains gray_world_gains(const BayerImage& bayer) {
  double sum[3] = {0, 0, 0};
  double count[3] = {0, 0, 0};
  for (std::size_t y = 0; y < bayer.height(); ++y) {
    const auto row = bayer.plane().row(y);
    for (std::size_t x = 0; x < bayer.width(); ++x) {
      const auto c = static_cast<std::size_t>(bayer.color_at(x, y));
      sum[c] += row[x];
      count[c] += 1.0;
    }
  }
  const double r = sum[0] / count[0];
  const double g = sum[1] / count[1];
  const double b = sum[2] / count[2];
  if (!(r > 0.0 && b > 0.0)) throw ConfigError("gray-world gains need non-zero R and B means");
  return {g / r, 1.0, g / b};
}

namespace {

/// Bayer plane padded by two samples of reflect-101 on every side.
class Padded {
 public:
  static constexpr std::size_t kPad = 2;

  explicit Padded(const ImagePlane& p) : stride_(p.width() + 2 * kPad), data_(stride_ * (p.height() + 2 * kPad)) {
    const auto pad = static_cast<long long>(kPad);
    for (std::size_t py = 0; py < p.height() + 2 * kPad; ++py) {
      const auto src = p.row(reflect101(static_cast<long long>(py) - pad, p.height()));
      for (std::size_t px = 0; px < stride_; ++px) {
        data_[py * stride_ + px] = src[reflect101(static_cast<long long>(px) - pad, p.width())];
      }
    }
  }

  /// Pointer to the padded sample at image position (x, y).
  const double* at(std::size_t x, std::size_t y) const {
    return data_.data() + (y + kPad) * stride_ + (x + kPad);
  }
  long long stride() const { return static_cast<long long>(stride_); }

 private:
  std::size_t stride_;
  std::vector<double> data_;
};

struct Estimates {
  double horizontal;  // color found on the left/right neighbors
  double vertical;    // color found on the up/down neighbors
  double cross;       // at R/B sites: G from the 4-neighborhood
  double diagonal;    // at R/B sites: the opposite color from the diagonals
};

// Neighbor differences relative to the center keep constant inputs exact.
Estimates malvar(const double* c, long long s) {
  const double c0 = c[0];
  const double e = c[1] - c0, w = c[-1] - c0, n = c[-s] - c0, so = c[s] - c0;
  const double ee = c[2] - c0, ww = c[-2] - c0, nn = c[-2 * s] - c0, ss = c[2 * s] - c0;
  const double diag = ((c[-s - 1] - c0) + (c[-s + 1] - c0)) + ((c[s - 1] - c0) + (c[s + 1] - c0));
  const double near_h = e + w, near_v = n + so;
  const double far_h = ee + ww, far_v = nn + ss;
  Estimates out;
  out.cross = c0 + (2.0 * (near_h + near_v) - (far_h + far_v)) / 8.0;
  out.horizontal = c0 + (4.0 * near_h - diag - far_h + 0.5 * far_v) / 8.0;
  out.vertical = c0 + (4.0 * near_v - diag - far_v + 0.5 * far_h) / 8.0;
  out.diagonal = c0 + (2.0 * diag - 1.5 * (far_h + far_v)) / 8.0;
  return out;
}

Estimates bilinear(const double* c, long long s) {
  Estimates out;
  out.horizontal = (c[-1] + c[1]) * 0.5;
  out.vertical = (c[-s] + c[s]) * 0.5;
  out.cross = ((c[-s] + c[s]) + (c[-1] + c[1])) * 0.25;
  out.diagonal = ((c[-s - 1] + c[-s + 1]) + (c[s - 1] + c[s + 1])) * 0.25;
  return out;
}

}  // namespace

std::array<ImagePlane, 3> demosaic_planes(const BayerImage& bayer, DemosaicMethod method) {
  const std::size_t w = bayer.width();
  const std::size_t h = bayer.height();
  const Padded padded(bayer.plane());
  const long long s = padded.stride();
  std::vector<double> out[3] = {std::vector<double>(w * h), std::vector<double>(w * h),
                                std::vector<double>(w * h)};
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double* c = padded.at(x, y);
      const Estimates est = method == DemosaicMethod::Malvar ? malvar(c, s) : bilinear(c, s);
      const Channel site = bayer.color_at(x, y);
      const std::size_t i = y * w + x;
      if (site == Channel::G) {
        const Channel left_right = bayer.color_at(x + 1, y);
        out[1][i] = c[0];
        out[static_cast<std::size_t>(left_right)][i] = est.horizontal;
        out[left_right == Channel::R ? 2 : 0][i] = est.vertical;
      } else {
        const auto native = static_cast<std::size_t>(site);
        out[native][i] = c[0];
        out[1][i] = est.cross;
        out[2 - native][i] = est.diagonal;
      }
    }
  }
  return {ImagePlane(w, h, std::move(out[0])), ImagePlane(w, h, std::move(out[1])),
          ImagePlane(w, h, std::move(out[2]))};
}

RgbImage demosaic(const BayerImage& bayer, DemosaicMethod method) {
  auto planes = demosaic_planes(bayer, method);
  auto clamp_plane = [](ImagePlane&& p) {
    const std::size_t w = p.width(), h = p.height();
    std::vector<double> v = std::move(p).release();
    for (double& x : v) x = std::clamp(x, 0.0, 1.0);
    return ImagePlane(w, h, std::move(v));
  };
  return RgbImage(clamp_plane(std::move(planes[0])), clamp_plane(std::move(planes[1])),
                  clamp_plane(std::move(planes[2])));
}

RgbImage apply_ccm(const RgbImage& rgb, const ColorMatrix& ccm) {
  check_ccm(ccm);
  const std::size_t n = rgb.r().size();
  std::vector<double> r(n), g(n), b(n);
  simd::kernels().color_matrix(rgb.r().pixels().data(), rgb.g().pixels().data(),
                               rgb.b().pixels().data(), ccm.data(), r.data(), g.data(), b.data(), n);
  const std::size_t w = rgb.width(), h = rgb.height();
  return RgbImage(ImagePlane(w, h, std::move(r)), ImagePlane(w, h, std::move(g)),
                  ImagePlane(w, h, std::move(b)));
}

double gamma_encode(double v, const Gamma& gamma) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  if (gamma.kind == Gamma::Kind::Power) {
    return gamma.exponent == 1.0 ? v : std::pow(v, 1.0 / gamma.exponent);
  }
  if (v <= 0.0031308) return 12.92 * v;
  return std::min(1.0, 1.055 * std::pow(v, 1.0 / 2.4) - 0.055);
}

RgbImage apply_gamma(const RgbImage& rgb, const Gamma& gamma) {
  if (gamma.kind == Gamma::Kind::Power && !(gamma.exponent > 0.0)) {
    throw ConfigError("gamma exponent must be > 0");
  }
  auto encode = [&](const ImagePlane& p) {
    std::vector<double> v(p.pixels().begin(), p.pixels().end());
    for (double& x : v) x = gamma_encode(x, gamma);
    return ImagePlane(p.width(), p.height(), std::move(v));
  };
  return RgbImage(encode(rgb.r()), encode(rgb.g()), encode(rgb.b()));
}

RgbImage run_isp(const BayerImage& bayer, const IspConfig& config) {
  config.validate();
  const BayerImage balanced = white_balance(black_level_correct(bayer), config.wb);
  return apply_gamma(apply_ccm(demosaic(balanced, config.demosaic), config.ccm), config.gamma);
}

}  // namespace rgbwforge
