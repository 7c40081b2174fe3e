// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "rgbwforge/simd/kernels.hpp"
#include "simd/kernels_impl.hpp"

namespace rgbwforge::simd {

namespace {

inline double clamp01(double v) {
  const double lo = v > 0.0 ? v : 0.0;
  return lo < 1.0 ? lo : 1.0;
}

// _mm256_max_pd(a, b) returns b unless a > b; same for min with <. Matches clamp01.
inline __m256d clamp01(__m256d v) {
  return _mm256_min_pd(_mm256_max_pd(v, _mm256_setzero_pd()), _mm256_set1_pd(1.0));
}

void sat_row(const double* prev, const double* row, double* out, std::size_t n) {
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    running = running + row[i];
    out[i] = running;
  }
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(prev + i), _mm256_loadu_pd(out + i)));
  }
  for (; i < n; ++i) out[i] = prev[i] + out[i];
}

void box_row(const double* top, const double* bottom, std::size_t span, double scale, double* out,
             std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d far = _mm256_sub_pd(_mm256_loadu_pd(bottom + i + span),
                                      _mm256_loadu_pd(top + i + span));
    const __m256d near = _mm256_sub_pd(_mm256_loadu_pd(bottom + i), _mm256_loadu_pd(top + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(far, near), s));
  }
  for (; i < n; ++i) {
    out[i] = ((bottom[i + span] - top[i + span]) - (bottom[i] - top[i])) * scale;
  }
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void guided_coeffs(const double* mean_i, const double* mean_p, const double* corr_ip,
                   const double* corr_ii, double eps, double* a, double* b, std::size_t n) {
  const __m256d e = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mi = _mm256_loadu_pd(mean_i + i);
    const __m256d mp = _mm256_loadu_pd(mean_p + i);
    const __m256d var = _mm256_sub_pd(_mm256_loadu_pd(corr_ii + i), _mm256_mul_pd(mi, mi));
    const __m256d cov = _mm256_sub_pd(_mm256_loadu_pd(corr_ip + i), _mm256_mul_pd(mi, mp));
    const __m256d ai = _mm256_div_pd(cov, _mm256_add_pd(var, e));
    _mm256_storeu_pd(a + i, ai);
    _mm256_storeu_pd(b + i, _mm256_sub_pd(mp, _mm256_mul_pd(ai, mi)));
  }
  for (; i < n; ++i) {
    const double var = corr_ii[i] - mean_i[i] * mean_i[i];
    const double cov = corr_ip[i] - mean_i[i] * mean_p[i];
    const double ai = cov / (var + eps);
    a[i] = ai;
    b[i] = mean_p[i] - ai * mean_i[i];
  }
}

void affine(const double* a, const double* g, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(g + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(prod, _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * g[i] + b[i];
}

void diag_means(const double* row0, const double* row1, double* main, double* anti,
                std::size_t cells) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t c = 0;
  for (; c + 4 <= cells; c += 4) {
    const __m256d t0 = _mm256_loadu_pd(row0 + 2 * c);
    const __m256d t1 = _mm256_loadu_pd(row0 + 2 * c + 4);
    const __m256d u0 = _mm256_loadu_pd(row1 + 2 * c);
    const __m256d u1 = _mm256_loadu_pd(row1 + 2 * c + 4);
    // Lanes come out in cell order 0,2,1,3; the permute restores 0,1,2,3.
    const __m256d top_even = _mm256_unpacklo_pd(t0, t1);
    const __m256d top_odd = _mm256_unpackhi_pd(t0, t1);
    const __m256d bot_even = _mm256_unpacklo_pd(u0, u1);
    const __m256d bot_odd = _mm256_unpackhi_pd(u0, u1);
    const __m256d m = _mm256_mul_pd(_mm256_add_pd(top_even, bot_odd), half);
    const __m256d a = _mm256_mul_pd(_mm256_add_pd(top_odd, bot_even), half);
    _mm256_storeu_pd(main + c, _mm256_permute4x64_pd(m, 0b11011000));
    _mm256_storeu_pd(anti + c, _mm256_permute4x64_pd(a, 0b11011000));
  }
  for (; c < cells; ++c) {
    main[c] = (row0[2 * c] + row1[2 * c + 1]) * 0.5;
    anti[c] = (row0[2 * c + 1] + row1[2 * c]) * 0.5;
  }
}

void noise_row(const double* x, const double* z, double read_var, double shot_k, double* out,
               std::size_t n) {
  const __m256d rv = _mm256_set1_pd(read_var);
  const __m256d k = _mm256_set1_pd(shot_k);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d sigma = _mm256_sqrt_pd(_mm256_add_pd(rv, _mm256_mul_pd(k, xi)));
    const __m256d v = _mm256_add_pd(xi, _mm256_mul_pd(sigma, _mm256_loadu_pd(z + i)));
    _mm256_storeu_pd(out + i, clamp01(v));
  }
  for (; i < n; ++i) out[i] = clamp01(x[i] + std::sqrt(read_var + shot_k * x[i]) * z[i]);
}

void gain_alternating(const double* in, double gain_even, double gain_odd, double* out,
                      std::size_t n) {
  const __m256d g = _mm256_setr_pd(gain_even, gain_odd, gain_even, gain_odd);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, clamp01(_mm256_mul_pd(_mm256_loadu_pd(in + i), g)));
  }
  for (; i < n; ++i) out[i] = clamp01(in[i] * ((i & 1) ? gain_odd : gain_even));
}

void color_matrix(const double* r, const double* g, const double* b, const double* m,
                  double* out_r, double* out_g, double* out_b, std::size_t n) {
  __m256d mv[9];
  for (int k = 0; k < 9; ++k) mv[k] = _mm256_set1_pd(m[k]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ri = _mm256_loadu_pd(r + i);
    const __m256d gi = _mm256_loadu_pd(g + i);
    const __m256d bi = _mm256_loadu_pd(b + i);
    double* outs[3] = {out_r, out_g, out_b};
    for (int row = 0; row < 3; ++row) {
      __m256d acc = _mm256_add_pd(_mm256_mul_pd(mv[3 * row], ri), _mm256_mul_pd(mv[3 * row + 1], gi));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(mv[3 * row + 2], bi));
      _mm256_storeu_pd(outs[row] + i, clamp01(acc));
    }
  }
  for (; i < n; ++i) {
    const double ri = r[i], gi = g[i], bi = b[i];
    out_r[i] = clamp01(m[0] * ri + m[1] * gi + m[2] * bi);
    out_g[i] = clamp01(m[3] * ri + m[4] * gi + m[5] * bi);
    out_b[i] = clamp01(m[6] * ri + m[7] * gi + m[8] * bi);
  }
}

void detail_inject(const double* base, const double* w, const double* w_mean, double gain,
                   double* out, std::size_t n) {
  const __m256d gv = _mm256_set1_pd(gain);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(w_mean + i));
    const __m256d v = _mm256_add_pd(_mm256_loadu_pd(base + i), _mm256_mul_pd(gv, d));
    _mm256_storeu_pd(out + i, clamp01(v));
  }
  for (; i < n; ++i) out[i] = clamp01(base[i] + gain * (w[i] - w_mean[i]));
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2",     &sat_row,   &box_row,          &multiply,     &guided_coeffs, &affine,
      &diag_means, &noise_row, &gain_alternating, &color_matrix, &detail_inject,
  };
  return table;
}

}  // namespace rgbwforge::simd
