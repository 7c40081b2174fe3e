#include <vector>

#include "rgbwforge/guided_filter.hpp"
#include "rgbwforge/simd/kernels.hpp"

namespace rgbwforge {

std::size_t reflect101(long long i, std::size_t n) {
  if (n == 1) return 0;
  const long long period = 2 * static_cast<long long>(n) - 2;
  long long m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<long long>(n)) m = period - m;
  return static_cast<std::size_t>(m);
}

ImagePlane box_mean(const ImagePlane& plane, std::size_t radius) {
  if (radius == 0) return plane;
  const std::size_t w = plane.width();
  const std::size_t h = plane.height();
  const std::size_t span = 2 * radius + 1;
  const std::size_t pw = w + 2 * radius;
  const std::size_t ph = h + 2 * radius;
  const std::size_t stride = pw + 1;
  const auto r = static_cast<long long>(radius);
  const auto& k = simd::kernels();

  std::vector<std::size_t> col_src(pw);
  for (std::size_t px = 0; px < pw; ++px) col_src[px] = reflect101(static_cast<long long>(px) - r, w);

  // Row py+1 of the table holds sums over padded rows [0, py] and columns [0, px).
  std::vector<double> sat((ph + 1) * stride, 0.0);
  std::vector<double> padded(pw);
  for (std::size_t py = 0; py < ph; ++py) {
    const auto src = plane.row(reflect101(static_cast<long long>(py) - r, h));
    for (std::size_t px = 0; px < pw; ++px) padded[px] = src[col_src[px]];
    k.sat_row(sat.data() + py * stride + 1, padded.data(), sat.data() + (py + 1) * stride + 1, pw);
  }

  const double scale = 1.0 / static_cast<double>(span * span);
  std::vector<double> out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    k.box_row(sat.data() + y * stride, sat.data() + (y + span) * stride, span, scale,
              out.data() + y * w, w);
  }
  return ImagePlane(w, h, std::move(out));
}

}  // namespace rgbwforge
