#include "rgbwforge/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rgbwforge/error.hpp"
#include "rgbwforge/simd/kernels.hpp"

namespace rgbwforge {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

void NoiseParams::validate() const {
  if (!(read_sigma_0 >= 0.0)) throw ConfigError("read_sigma_0 must be non-negative");
  if (!(shot_k_0 >= 0.0)) throw ConfigError("shot_k_0 must be non-negative");
  if (!std::isfinite(gain_db)) throw ConfigError("gain_db must be finite");
}

double db_to_gain(double db) { return std::pow(10.0, db / 20.0); }

double NoiseParams::gain() const { return db_to_gain(gain_db); }

double NoiseParams::read_variance() const {
  const double s = gain() * read_sigma_0;
  return s * s;
}

double NoiseParams::shot_slope() const { return gain() * shot_k_0; }

double standard_normal(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t h1 = mix64(mix64(seed) ^ (index * 0xD1B54A32D192ED03ull));
  const std::uint64_t h2 = mix64(h1 ^ 0xA0761D6478BD642Full);
  constexpr double kScale = 0x1.0p-53;
  const double u1 = (static_cast<double>(h1 >> 11) + 0.5) * kScale;
  const double u2 = static_cast<double>(h2 >> 11) * kScale;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return mix64(seed ^ mix64(h));
}

ImagePlane apply_noise(const ImagePlane& plane, const NoiseParams& params) {
  params.validate();
  for (double v : plane.pixels()) {
    if (v < 0.0 || v > 1.0) throw ConfigError("apply_noise expects values in [0,1]");
  }
  const double read_var = params.read_variance();
  const double shot_k = params.shot_slope();
  if (read_var == 0.0 && shot_k == 0.0) return plane;

  const auto& k = simd::kernels();
  const std::size_t w = plane.width();
  std::vector<double> out(plane.size());
  std::vector<double> z(w);
  for (std::size_t y = 0; y < plane.height(); ++y) {
    const std::uint64_t base = static_cast<std::uint64_t>(y) * w;
    for (std::size_t x = 0; x < w; ++x) z[x] = standard_normal(params.seed, base + x);
    k.noise_row(plane.row(y).data(), z.data(), read_var, shot_k, out.data() + base, w);
  }
  return ImagePlane(w, plane.height(), std::move(out));
}

NoiseFit estimate_noise(const ImagePlane& clean, const ImagePlane& noisy,
                        const NoiseFitOptions& options) {
  if (!clean.same_shape(noisy)) throw ShapeError("clean and noisy planes differ in size");
  if (options.bins < 2) throw ConfigError("noise fit needs at least 2 intensity bins");

  struct Bin {
    std::size_t n = 0;
    double sum_x = 0.0, sum_r = 0.0, sum_rr = 0.0;
  };
  std::vector<Bin> bins(options.bins);
  const auto c = clean.pixels();
  const auto d = noisy.pixels();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = std::clamp(c[i], 0.0, 1.0);
    const auto idx = std::min(options.bins - 1, static_cast<std::size_t>(x * options.bins));
    const double r = d[i] - c[i];
    Bin& b = bins[idx];
    ++b.n;
    b.sum_x += x;
    b.sum_r += r;
    b.sum_rr += r * r;
  }

  struct Point {
    double x, var, n;
  };
  std::vector<Point> pts;
  for (const Bin& b : bins) {
    if (b.n < std::max<std::size_t>(options.min_count, 2)) continue;
    const double n = static_cast<double>(b.n);
    const double mean_r = b.sum_r / n;
    const double var = std::max(0.0, (b.sum_rr - n * mean_r * mean_r) / (n - 1.0));
    pts.push_back({b.sum_x / n, var, n});
  }
  if (pts.size() < 2) {
    throw EstimationError("noise fit needs at least 2 populated intensity bins, found " +
                          std::to_string(pts.size()));
  }

  bool any_zero = false;
  for (const Point& p : pts) any_zero |= p.var == 0.0;

  double sw = 0.0, mx = 0.0, my = 0.0, sxx = 0.0, sxy = 0.0;
  auto weighted_line = [&](const std::vector<double>& wts) {
    sw = 0.0;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      sw += wts[i];
      sx += wts[i] * pts[i].x;
      sy += wts[i] * pts[i].var;
    }
    mx = sx / sw;
    my = sy / sw;
    sxx = 0.0;
    sxy = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double dx = pts[i].x - mx;
      sxx += wts[i] * dx * dx;
      sxy += wts[i] * dx * (pts[i].var - my);
    }
    if (sxx <= 0.0) throw EstimationError("noise fit bins have no intensity spread");
  };

  std::vector<double> wts(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) wts[i] = pts[i].n;
  weighted_line(wts);

  // Var(s^2) ~ 2 sigma^4 / (n - 1). Weights come from the fitted line rather than
  // the observed bin variances, which would favor bins that happen to read low.
  bool model_weights = !any_zero;
  for (int pass = 0; model_weights && pass < 2; ++pass) {
    const double slope = sxy / sxx, icpt = my - slope * mx;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double m = icpt + slope * pts[i].x;
      if (!(m > 0.0)) {
        model_weights = false;
        break;
      }
      wts[i] = (pts[i].n - 1.0) / (2.0 * m * m);
    }
    if (!model_weights) {
      for (std::size_t i = 0; i < pts.size(); ++i) wts[i] = pts[i].n;
    }
    weighted_line(wts);
  }

  NoiseFit fit;
  fit.shot_slope = sxy / sxx;
  fit.read_var = my - fit.shot_slope * mx;
  fit.bins_used = pts.size();

  if (!model_weights) {
    // Residual scatter defines the error scale when weights are plain counts.
    double ss = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double e = pts[i].var - (fit.read_var + fit.shot_slope * pts[i].x);
      ss += wts[i] * e * e;
    }
    const double dof = static_cast<double>(pts.size()) - 2.0;
    const double s2 = dof > 0.0 ? ss / dof : 0.0;
    fit.shot_slope_stderr = std::sqrt(s2 / sxx);
    fit.read_var_stderr = std::sqrt(s2 * (1.0 / sw + mx * mx / sxx));
  } else {
    fit.shot_slope_stderr = std::sqrt(1.0 / sxx);
    fit.read_var_stderr = std::sqrt(1.0 / sw + mx * mx / sxx);
  }
  return fit;
}

double estimate_noise_variance(const ImagePlane& plane) {
  const std::size_t w = plane.width(), h = plane.height();
  if (w < 3 || h < 3) return 0.0;
  double sum = 0.0;
  for (std::size_t y = 1; y + 1 < h; ++y) {
    const auto up = plane.row(y - 1), mid = plane.row(y), down = plane.row(y + 1);
    for (std::size_t x = 1; x + 1 < w; ++x) {
      // 1 -2 1 / -2 4 -2 / 1 -2 1
      const double v = (up[x - 1] - 2.0 * up[x] + up[x + 1]) -
                       2.0 * (mid[x - 1] - 2.0 * mid[x] + mid[x + 1]) +
                       (down[x - 1] - 2.0 * down[x] + down[x + 1]);
      sum += std::abs(v);
    }
  }
  const double sigma = std::sqrt(0.5 * std::numbers::pi) * sum /
                       (6.0 * static_cast<double>(w - 2) * static_cast<double>(h - 2));
  return sigma * sigma;
}

}  // namespace rgbwforge
