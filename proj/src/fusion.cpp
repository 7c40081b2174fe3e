#include "rgbwforge/fusion.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rgbwforge/error.hpp"
#include "rgbwforge/guided_filter.hpp"
#include "rgbwforge/noise.hpp"
#include "rgbwforge/packing.hpp"
#include "rgbwforge/parallel.hpp"
#include "rgbwforge/simd/kernels.hpp"

namespace rgbwforge {

std::string_view to_string(FusionMethod m) {
  switch (m) {
    case FusionMethod::Passthrough: return "passthrough";
    case FusionMethod::Guided: return "guided";
    case FusionMethod::GuidedDetail: return "guided_detail";
  }
  return "?";
}

FusionMethod parse_fusion_method(std::string_view text) {
  if (text == "passthrough") return FusionMethod::Passthrough;
  if (text == "guided") return FusionMethod::Guided;
  if (text == "guided_detail") return FusionMethod::GuidedDetail;
  throw ConfigError("unknown fusion method '" + std::string(text) + "'");
}

void FusionConfig::validate() const {
  if (radius < 1) throw ConfigError("fusion radius must be >= 1");
  if (!(eps > 0.0)) throw ConfigError("fusion eps must be positive");
  if (!(detail_gain >= 0.0 && detail_gain <= 2.0)) {
    throw ConfigError("fusion detail_gain must lie in [0, 2]");
  }
  if (!(w_noise_scale >= 0.0 && std::isfinite(w_noise_scale))) {
    throw ConfigError("fusion w_noise_scale must be finite and >= 0");
  }
}

BayerImage fuse_guided(const BinnedPair& pair, const FusionConfig& config, unsigned threads) {
  config.validate();
  ImagePlane white = pair.dbinc;
  if (config.w_predenoise_radius > 0) {
    const double eps_w =
        config.eps + config.w_noise_scale * estimate_noise_variance(pair.dbinc);
    white = guided_filter(pair.dbinc, pair.dbinc, config.w_predenoise_radius, eps_w);
  }

  const std::vector<ImagePlane> colors = space_to_depth(pair.dbinb.plane(), 2);
  const std::vector<ImagePlane> guides = space_to_depth(white, 2);
  std::vector<std::optional<ImagePlane>> fused(4);

  parallel_for(4, threads, [&](std::size_t phase) {
    const ImagePlane& guide = guides[phase];
    const ImagePlane filtered = guided_filter(colors[phase], guide, config.radius, config.eps);
    const double gain = config.method == FusionMethod::GuidedDetail ? config.detail_gain : 0.0;
    // With no detail gain the injected term is zero and only the clamp remains.
    const ImagePlane guide_mean = gain > 0.0 ? box_mean(guide, config.radius) : guide;
    std::vector<double> out(filtered.size());
    simd::kernels().detail_inject(filtered.pixels().data(), guide.pixels().data(),
                                  guide_mean.pixels().data(), gain, out.data(), out.size());
    fused[phase].emplace(filtered.width(), filtered.height(), std::move(out));
  });

  std::vector<ImagePlane> planes;
  planes.reserve(4);
  for (auto& p : fused) planes.push_back(std::move(*p));
  return BayerImage(depth_to_space(planes, 2), pair.dbinb.phase(), pair.dbinb.levels());
}

BayerImage fuse(const BinnedPair& pair, const FusionConfig& config, unsigned threads) {
  config.validate();
  if (config.method == FusionMethod::Passthrough) return pair.dbinb;
  return fuse_guided(pair, config, threads);
}

}  // namespace rgbwforge
