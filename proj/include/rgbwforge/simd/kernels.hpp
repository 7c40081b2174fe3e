#pragma once

#include <cstddef>
#include <string_view>

namespace rgbwforge::simd {

/// Row kernels behind the data-parallel inner loops.
///
/// Every variant evaluates the same expression tree in the same order with no
/// fused multiply-add, so all variants agree bit for bit with the scalar
/// reference. Clamping follows max-then-min semantics (v > 0 ? v : 0, then
/// v < 1 ? v : 1), which also maps -0.0 to +0.0.
struct KernelTable {
  const char* name;

  /// out[i] = prev[i] + (row[0] + ... + row[i]), running sum accumulated left to right.
  void (*sat_row)(const double* prev, const double* row, double* out, std::size_t n);

  /// out[i] = ((bottom[i+span] - top[i+span]) - (bottom[i] - top[i])) * scale.
  void (*box_row)(const double* top, const double* bottom, std::size_t span, double scale,
                  double* out, std::size_t n);

  /// out[i] = a[i] * b[i].
  void (*multiply)(const double* a, const double* b, double* out, std::size_t n);

  /// Guided-filter local linear model:
  /// a = (corr_ip - mean_i*mean_p) / ((corr_ii - mean_i*mean_i) + eps), b = mean_p - a*mean_i.
  void (*guided_coeffs)(const double* mean_i, const double* mean_p, const double* corr_ip,
                        const double* corr_ii, double eps, double* a, double* b, std::size_t n);

  /// out[i] = a[i] * g[i] + b[i].
  void (*affine)(const double* a, const double* g, const double* b, double* out, std::size_t n);

  /// Per 2x2 cell spanning rows row0/row1 (2*cells samples each):
  /// main[c] = (row0[2c] + row1[2c+1]) * 0.5, anti[c] = (row0[2c+1] + row1[2c]) * 0.5.
  void (*diag_means)(const double* row0, const double* row1, double* main, double* anti,
                     std::size_t cells);

  /// out[i] = clamp01(x[i] + sqrt(read_var + shot_k * x[i]) * z[i]); x must be >= 0.
  void (*noise_row)(const double* x, const double* z, double read_var, double shot_k, double* out,
                    std::size_t n);

  /// out[i] = clamp01(in[i] * (i even ? gain_even : gain_odd)).
  void (*gain_alternating)(const double* in, double gain_even, double gain_odd, double* out,
                           std::size_t n);

  /// Row-major 3x3 matrix applied per pixel, ((m0*r + m1*g) + m2*b) per output, then clamp01.
  void (*color_matrix)(const double* r, const double* g, const double* b, const double* m,
                       double* out_r, double* out_g, double* out_b, std::size_t n);

  /// out[i] = clamp01(base[i] + gain * (w[i] - w_mean[i])).
  void (*detail_inject)(const double* base, const double* w, const double* w_mean, double gain,
                        double* out, std::size_t n);
};

const KernelTable& scalar_kernels();

/// AVX2 variant, or nullptr when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// The table used by the library. Chosen on first use: AVX2 when available,
/// overridable with RGBWFORGE_SIMD=scalar|avx2|auto.
const KernelTable& kernels();

/// Forces a variant ("scalar", "avx2", "auto"). Throws ConfigError for an
/// unknown or unavailable variant.
void select_kernels(std::string_view variant);

}  // namespace rgbwforge::simd
