#include "rgbwforge/guided_filter.hpp"

#include <vector>

#include "rgbwforge/error.hpp"
#include "rgbwforge/simd/kernels.hpp"

namespace rgbwforge {

namespace {

ImagePlane product(const ImagePlane& a, const ImagePlane& b) {
  std::vector<double> out(a.size());
  simd::kernels().multiply(a.pixels().data(), b.pixels().data(), out.data(), out.size());
  return ImagePlane(a.width(), a.height(), std::move(out));
}

}  // namespace

ImagePlane guided_filter(const ImagePlane& input, const ImagePlane& guide, std::size_t radius,
                         double eps) {
  if (!input.same_shape(guide)) throw ShapeError("guided filter input and guide differ in size");
  if (!(eps > 0.0)) throw ConfigError("guided filter eps must be positive");
  const auto& k = simd::kernels();
  const std::size_t n = input.size();

  const ImagePlane mean_i = box_mean(guide, radius);
  const ImagePlane mean_p = box_mean(input, radius);
  const ImagePlane corr_ip = box_mean(product(guide, input), radius);
  const ImagePlane corr_ii = box_mean(product(guide, guide), radius);

  std::vector<double> a(n), b(n);
  k.guided_coeffs(mean_i.pixels().data(), mean_p.pixels().data(), corr_ip.pixels().data(),
                  corr_ii.pixels().data(), eps, a.data(), b.data(), n);
  const ImagePlane mean_a = box_mean(ImagePlane(input.width(), input.height(), std::move(a)), radius);
  const ImagePlane mean_b = box_mean(ImagePlane(input.width(), input.height(), std::move(b)), radius);

  std::vector<double> q(n);
  k.affine(mean_a.pixels().data(), guide.pixels().data(), mean_b.pixels().data(), q.data(), n);
  return ImagePlane(input.width(), input.height(), std::move(q));
}

}  // namespace rgbwforge
