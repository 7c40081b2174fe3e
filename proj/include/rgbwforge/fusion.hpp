#pragma once

#include <cstddef>
#include <string_view>

#include "rgbwforge/mosaic.hpp"

namespace rgbwforge {

enum class FusionMethod { Passthrough, Guided, GuidedDetail };

std::string_view to_string(FusionMethod m);
FusionMethod parse_fusion_method(std::string_view text);

struct FusionConfig {
  FusionMethod method = FusionMethod::GuidedDetail;
  std::size_t radius = 2;           ///< window radius at CFA-plane (quarter) resolution
  double eps = 1e-3;                ///< regularization, normalized intensity squared
  double detail_gain = 0.1;         ///< W detail injected by GuidedDetail, in [0, 2]
  std::size_t w_predenoise_radius = 1;  ///< guided self-filter on DbinC; 0 disables
  /// Pre-denoise eps is eps + w_noise_scale * (blind noise variance of DbinC).
  double w_noise_scale = 4.0;

  /// radius >= 1, eps > 0, detail_gain in [0, 2]; otherwise ConfigError.
  void validate() const;
};

/// DbinB + DbinC -> enhanced Bayer with the dimensions and phase of DbinB.
///
/// Passthrough returns DbinB unchanged. The guided methods work per CFA
/// phase plane (see fuse_guided). The four planes are independent and may be
/// processed on up to `threads` workers without changing the result.
BayerImage fuse(const BinnedPair& pair, const FusionConfig& config, unsigned threads = 1);

/// Guided fusion:
///  1. optionally pre-smooth DbinC with a guided self-filter;
///  2. split DbinB and the smoothed W into 4 phase planes (space_to_depth, 2);
///  3. guided-filter every color plane with its phase-matched W plane as guide;
///  4. for GuidedDetail add detail_gain * (W_phase - box_mean(W_phase, radius));
///  5. reassemble (depth_to_space) and clamp to [0,1].
BayerImage fuse_guided(const BinnedPair& pair, const FusionConfig& config, unsigned threads = 1);

}  // namespace rgbwforge
