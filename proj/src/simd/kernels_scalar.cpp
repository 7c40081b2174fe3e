#include <cmath>

#include "rgbwforge/simd/kernels.hpp"
#include "simd/kernels_impl.hpp"

namespace rgbwforge::simd {

namespace {

inline double clamp01(double v) {
  const double lo = v > 0.0 ? v : 0.0;
  return lo < 1.0 ? lo : 1.0;
}

void sat_row(const double* prev, const double* row, double* out, std::size_t n) {
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    running = running + row[i];
    out[i] = prev[i] + running;
  }
}

void box_row(const double* top, const double* bottom, std::size_t span, double scale, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ((bottom[i + span] - top[i + span]) - (bottom[i] - top[i])) * scale;
  }
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void guided_coeffs(const double* mean_i, const double* mean_p, const double* corr_ip,
                   const double* corr_ii, double eps, double* a, double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double var = corr_ii[i] - mean_i[i] * mean_i[i];
    const double cov = corr_ip[i] - mean_i[i] * mean_p[i];
    const double ai = cov / (var + eps);
    a[i] = ai;
    b[i] = mean_p[i] - ai * mean_i[i];
  }
}

void affine(const double* a, const double* g, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * g[i] + b[i];
}

void diag_means(const double* row0, const double* row1, double* main, double* anti,
                std::size_t cells) {
  for (std::size_t c = 0; c < cells; ++c) {
    main[c] = (row0[2 * c] + row1[2 * c + 1]) * 0.5;
    anti[c] = (row0[2 * c + 1] + row1[2 * c]) * 0.5;
  }
}

void noise_row(const double* x, const double* z, double read_var, double shot_k, double* out,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = clamp01(x[i] + std::sqrt(read_var + shot_k * x[i]) * z[i]);
  }
}

void gain_alternating(const double* in, double gain_even, double gain_odd, double* out,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = clamp01(in[i] * ((i & 1) ? gain_odd : gain_even));
}

void color_matrix(const double* r, const double* g, const double* b, const double* m,
                  double* out_r, double* out_g, double* out_b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = r[i], gi = g[i], bi = b[i];
    out_r[i] = clamp01(m[0] * ri + m[1] * gi + m[2] * bi);
    out_g[i] = clamp01(m[3] * ri + m[4] * gi + m[5] * bi);
    out_b[i] = clamp01(m[6] * ri + m[7] * gi + m[8] * bi);
  }
}

void detail_inject(const double* base, const double* w, const double* w_mean, double gain,
                   double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = clamp01(base[i] + gain * (w[i] - w_mean[i]));
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      "scalar",   &sat_row,   &box_row,          &multiply,     &guided_coeffs, &affine,
      &diag_means, &noise_row, &gain_alternating, &color_matrix, &detail_inject,
  };
  return table;
}

}  // namespace rgbwforge::simd
