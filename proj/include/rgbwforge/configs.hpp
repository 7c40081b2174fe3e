#pragma once

#include <iosfwd>

#include "rgbwforge/fusion.hpp"
#include "rgbwforge/isp.hpp"
#include "rgbwforge/keyvalue.hpp"
#include "rgbwforge/mosaic.hpp"
#include "rgbwforge/noise.hpp"

namespace rgbwforge {

// Config files are flat key=value text, one file per concern. Missing keys
// keep their defaults; unknown keys are a ParseError.
//
//   ISP:      wb_r, wb_g, wb_b, ccm (9 comma-separated values, row-major),
//             gamma (srgb | exponent), demosaic (malvar | bilinear)
//   fusion:   method, radius, eps, detail_gain, w_predenoise_radius,
//             w_noise_scale
//   generate: read_sigma_0, shot_k_0, white_r, white_g, white_b,
//             transmittance, layout, raw_wb_r, raw_wb_g, raw_wb_b

IspConfig parse_isp_config(const KeyValues& kv);
KeyValues to_key_values(const IspConfig& config);

FusionConfig parse_fusion_config(const KeyValues& kv);
KeyValues to_key_values(const FusionConfig& config);

/// Scene synthesis settings for the data-generation command.
struct GenerateConfig {
  NoiseParams noise;  ///< gain_db and seed are set per scene by the generator
  WhiteWeights white;
  double transmittance = 1.2;
  RgbwLayout layout = RgbwLayout::canonical();
  /// Source RGB is divided by these gains to mimic an unbalanced sensor response.
  WbGains raw_wb{1.8, 1.0, 1.6};
};

GenerateConfig parse_generate_config(const KeyValues& kv);
KeyValues to_key_values(const GenerateConfig& config);

}  // namespace rgbwforge
