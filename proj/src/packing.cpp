#include "rgbwforge/packing.hpp"

#include <string>

#include "rgbwforge/error.hpp"

namespace rgbwforge {

std::vector<ImagePlane> space_to_depth(const ImagePlane& plane, std::size_t factor) {
  if (factor == 0) throw ShapeError("space_to_depth factor must be positive");
  if (plane.width() % factor || plane.height() % factor) {
    throw ShapeError("plane " + std::to_string(plane.width()) + "x" +
                     std::to_string(plane.height()) + " is not divisible by factor " +
                     std::to_string(factor));
  }
  const std::size_t ow = plane.width() / factor;
  const std::size_t oh = plane.height() / factor;
  std::vector<ImagePlane> out;
  out.reserve(factor * factor);
  for (std::size_t p = 0; p < factor; ++p) {
    for (std::size_t q = 0; q < factor; ++q) {
      std::vector<double> data(ow * oh);
      for (std::size_t i = 0; i < oh; ++i) {
        const auto src = plane.row(i * factor + p);
        for (std::size_t j = 0; j < ow; ++j) data[i * ow + j] = src[j * factor + q];
      }
      out.emplace_back(ow, oh, std::move(data));
    }
  }
  return out;
}

ImagePlane depth_to_space(std::span<const ImagePlane> planes, std::size_t factor) {
  if (factor == 0 || planes.size() != factor * factor) {
    throw ShapeError("depth_to_space expects factor^2 = " + std::to_string(factor * factor) +
                     " planes, got " + std::to_string(planes.size()));
  }
  const std::size_t iw = planes[0].width();
  const std::size_t ih = planes[0].height();
  for (const auto& p : planes) {
    if (p.width() != iw || p.height() != ih) throw ShapeError("depth_to_space planes differ in size");
  }
  const std::size_t w = iw * factor;
  std::vector<double> data(w * ih * factor);
  for (std::size_t p = 0; p < factor; ++p) {
    for (std::size_t q = 0; q < factor; ++q) {
      const ImagePlane& src = planes[p * factor + q];
      for (std::size_t i = 0; i < ih; ++i) {
        const auto row = src.row(i);
        double* dst = data.data() + (i * factor + p) * w + q;
        for (std::size_t j = 0; j < iw; ++j) dst[j * factor] = row[j];
      }
    }
  }
  return ImagePlane(w, ih * factor, std::move(data));
}

}  // namespace rgbwforge
