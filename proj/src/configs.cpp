#include "rgbwforge/configs.hpp"

#include <string>

#include "rgbwforge/error.hpp"
#include "text_util.hpp"

namespace rgbwforge {

namespace {

std::size_t get_size(const KeyValues& kv, std::string_view key, std::size_t fallback) {
  const auto v = kv.get_integer(key);
  if (!v) return fallback;
  if (*v < 0) throw ConfigError("'" + std::string(key) + "' must be non-negative");
  return static_cast<std::size_t>(*v);
}

}  // namespace

IspConfig parse_isp_config(const KeyValues& kv) {
  kv.reject_unknown({"wb_r", "wb_g", "wb_b", "ccm", "gamma", "demosaic"});
  IspConfig c;
  c.wb.r = kv.get_double("wb_r").value_or(c.wb.r);
  c.wb.g = kv.get_double("wb_g").value_or(c.wb.g);
  c.wb.b = kv.get_double("wb_b").value_or(c.wb.b);
  if (auto ccm = kv.get("ccm")) {
    const auto parts = text::split(*ccm, ',');
    if (parts.size() != 9) throw ParseError("ccm must hold 9 comma-separated values");
    for (std::size_t i = 0; i < 9; ++i) {
      const auto v = text::to_double(parts[i]);
      if (!v) throw ParseError("ccm entry " + std::to_string(i) + " is not a number");
      c.ccm[i] = *v;
    }
  }
  if (auto g = kv.get("gamma")) {
    if (*g == "srgb") {
      c.gamma = Gamma::srgb();
    } else if (auto e = text::to_double(*g)) {
      c.gamma = Gamma::power(*e);
    } else {
      throw ParseError("gamma must be 'srgb' or a number");
    }
  }
  if (auto d = kv.get("demosaic")) c.demosaic = parse_demosaic_method(*d);
  c.validate();
  return c;
}

KeyValues to_key_values(const IspConfig& c) {
  KeyValues kv;
  kv.set("wb_r", text::exact(c.wb.r));
  kv.set("wb_g", text::exact(c.wb.g));
  kv.set("wb_b", text::exact(c.wb.b));
  std::string ccm;
  for (std::size_t i = 0; i < 9; ++i) ccm += (i ? "," : "") + text::exact(c.ccm[i]);
  kv.set("ccm", ccm);
  kv.set("gamma", c.gamma.kind == Gamma::Kind::Srgb ? "srgb" : text::exact(c.gamma.exponent));
  kv.set("demosaic", std::string(to_string(c.demosaic)));
  return kv;
}

FusionConfig parse_fusion_config(const KeyValues& kv) {
  kv.reject_unknown({"method", "radius", "eps", "detail_gain", "w_predenoise_radius",
                    "w_noise_scale"});
  FusionConfig c;
  if (auto m = kv.get("method")) c.method = parse_fusion_method(*m);
  c.radius = get_size(kv, "radius", c.radius);
  c.eps = kv.get_double("eps").value_or(c.eps);
  c.detail_gain = kv.get_double("detail_gain").value_or(c.detail_gain);
  c.w_predenoise_radius = get_size(kv, "w_predenoise_radius", c.w_predenoise_radius);
  c.w_noise_scale = kv.get_double("w_noise_scale").value_or(c.w_noise_scale);
  c.validate();
  return c;
}

KeyValues to_key_values(const FusionConfig& c) {
  KeyValues kv;
  kv.set("method", std::string(to_string(c.method)));
  kv.set("radius", std::to_string(c.radius));
  kv.set("eps", text::exact(c.eps));
  kv.set("detail_gain", text::exact(c.detail_gain));
  kv.set("w_predenoise_radius", std::to_string(c.w_predenoise_radius));
  kv.set("w_noise_scale", text::exact(c.w_noise_scale));
  return kv;
}

GenerateConfig parse_generate_config(const KeyValues& kv) {
  kv.reject_unknown({"read_sigma_0", "shot_k_0", "white_r", "white_g", "white_b", "transmittance",
                     "layout", "raw_wb_r", "raw_wb_g", "raw_wb_b"});
  GenerateConfig c;
  c.noise.read_sigma_0 = kv.get_double("read_sigma_0").value_or(c.noise.read_sigma_0);
  c.noise.shot_k_0 = kv.get_double("shot_k_0").value_or(c.noise.shot_k_0);
  c.white.r = kv.get_double("white_r").value_or(c.white.r);
  c.white.g = kv.get_double("white_g").value_or(c.white.g);
  c.white.b = kv.get_double("white_b").value_or(c.white.b);
  c.transmittance = kv.get_double("transmittance").value_or(c.transmittance);
  if (auto l = kv.get("layout")) c.layout = RgbwLayout::parse(*l);
  c.raw_wb.r = kv.get_double("raw_wb_r").value_or(c.raw_wb.r);
  c.raw_wb.g = kv.get_double("raw_wb_g").value_or(c.raw_wb.g);
  c.raw_wb.b = kv.get_double("raw_wb_b").value_or(c.raw_wb.b);
  c.noise.validate();
  if (!(c.raw_wb.r > 0 && c.raw_wb.g > 0 && c.raw_wb.b > 0)) {
    throw ConfigError("raw_wb gains must be > 0");
  }
  return c;
}

KeyValues to_key_values(const GenerateConfig& c) {
  KeyValues kv;
  kv.set("read_sigma_0", text::exact(c.noise.read_sigma_0));
  kv.set("shot_k_0", text::exact(c.noise.shot_k_0));
  kv.set("white_r", text::exact(c.white.r));
  kv.set("white_g", text::exact(c.white.g));
  kv.set("white_b", text::exact(c.white.b));
  kv.set("transmittance", text::exact(c.transmittance));
  kv.set("layout", c.layout.to_string());
  kv.set("raw_wb_r", text::exact(c.raw_wb.r));
  kv.set("raw_wb_g", text::exact(c.raw_wb.g));
  kv.set("raw_wb_b", text::exact(c.raw_wb.b));
  return kv;
}

}  // namespace rgbwforge
