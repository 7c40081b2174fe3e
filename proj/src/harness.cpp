#include "rgbwforge/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>

#include "rgbwforge/error.hpp"
#include "rgbwforge/mosaic.hpp"
#include "rgbwforge/noise.hpp"
#include "rgbwforge/parallel.hpp"
#include "rgbwforge/raw_io.hpp"
#include "rgbwforge/synth.hpp"
#include "text_util.hpp"

namespace rgbwforge {

namespace fs = std::filesystem;

namespace {

struct Source {
  std::string name;
  std::optional<fs::path> path;  ///< empty for procedural scenes
  std::size_t index = 0;
};

double srgb_decode(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

ImagePlane crop_plane(const ImagePlane& p, std::size_t x0, std::size_t y0, std::size_t w,
                      std::size_t h, double divide_by) {
  std::vector<double> out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    const auto row = p.row(y0 + y);
    for (std::size_t x = 0; x < w; ++x) {
      out[y * w + x] = std::clamp(srgb_decode(row[x0 + x]) / divide_by, 0.0, 1.0);
    }
  }
  return ImagePlane(w, h, std::move(out));
}

/// sRGB file -> linear raw-like RGB cropped to a multiple of 4.
RgbImage prepare_file_source(const fs::path& path, const GenerateOptions& opt) {
  const RgbImage srgb = read_ppm(path);
  std::size_t w = srgb.width(), h = srgb.height();
  if (opt.crop) {
    if (opt.crop->first > w || opt.crop->second > h) {
      throw ShapeError("crop " + std::to_string(opt.crop->first) + "x" +
                       std::to_string(opt.crop->second) + " exceeds source size");
    }
    w = opt.crop->first;
    h = opt.crop->second;
  }
  w -= w % 4;
  h -= h % 4;
  if (w == 0 || h == 0) throw ShapeError("source is smaller than one 4x4 RGBW super-cell");
  const std::size_t x0 = (srgb.width() - w) / 2;
  const std::size_t y0 = (srgb.height() - h) / 2;
  const WbGains& g = opt.config.raw_wb;
  return RgbImage(crop_plane(srgb.r(), x0, y0, w, h, g.r), crop_plane(srgb.g(), x0, y0, w, h, g.g),
                  crop_plane(srgb.b(), x0, y0, w, h, g.b));
}

void log_line(std::ostream* log, std::mutex& m, const std::string& text) {
  if (!log) return;
  std::lock_guard lock(m);
  *log << text << '\n';
}

}  // namespace

GenerateResult cmd_generate(const GenerateOptions& opt, std::ostream* log) {
  opt.config.noise.validate();
  if (opt.gains.empty()) throw ConfigError("at least one gain is required");
  if (opt.synthetic_width % 4 || opt.synthetic_height % 4 || opt.synthetic_width == 0 ||
      opt.synthetic_height == 0) {
    throw ConfigError("synthetic scene size must be a positive multiple of 4");
  }

  std::vector<Source> sources;
  if (opt.rgb_dir) {
    if (!fs::is_directory(*opt.rgb_dir)) throw IoError("'" + opt.rgb_dir->string() + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(*opt.rgb_dir)) {
      if (e.is_regular_file() && e.path().extension() == ".ppm") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) sources.push_back({f.stem().string(), f, sources.size()});
  }
  for (std::size_t i = 0; i < opt.synthetic_count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "synth%03zu", i);
    sources.push_back({name, std::nullopt, i});
  }
  {
    std::set<std::string> names;
    for (const auto& s : sources) {
      if (!names.insert(s.name).second) throw ConfigError("duplicate scene name '" + s.name + "'");
    }
  }

  const std::string layout_text = opt.config.layout.to_string();
  std::vector<std::vector<SceneEntry>> per_source(sources.size());
  std::vector<std::optional<std::string>> errors(sources.size());
  std::mutex log_mutex;

  parallel_for(sources.size(), opt.threads, [&](std::size_t i) {
    const Source& src = sources[i];
    try {
      const RgbImage rgb = src.path
          ? prepare_file_source(*src.path, opt)
          : synthetic_scene(opt.synthetic_width, opt.synthetic_height,
                            derive_seed(opt.seed, "scene/" + src.name));
      const ImagePlane white = synth_white(rgb, opt.config.white, opt.config.transmittance);
      const BinnedPair clean = bin_diagonal(mosaic_rgbw(rgb, white, opt.config.layout));

      const fs::path dir = opt.out_dir / src.name;
      RawMeta meta;
      meta.levels = kDefaultCodeLevels;
      meta.layout = opt.config.layout;
      meta.cfa = clean.dbinb.phase();
      meta.gain_db = 0.0;
      write_plane(dir / "gt.bin", clean.dbinb.plane(), meta);

      for (double gain : opt.gains) {
        const std::string tag = gain_tag(gain);
        NoiseParams noise = opt.config.noise;
        noise.gain_db = gain;
        noise.seed = derive_seed(opt.seed, src.name + "/dbinb/" + tag);
        const ImagePlane noisy_b = apply_noise(clean.dbinb.plane(), noise);
        noise.seed = derive_seed(opt.seed, src.name + "/dbinc/" + tag);
        const ImagePlane noisy_c = apply_noise(clean.dbinc, noise);

        RawMeta bm = meta;
        bm.gain_db = gain;
        write_plane(dir / ("dbinb_" + tag + ".bin"), noisy_b, bm);
        RawMeta cm = bm;
        cm.cfa.reset();
        write_plane(dir / ("dbinc_" + tag + ".bin"), noisy_c, cm);

        SceneEntry e;
        e.id = src.name + "_" + tag;
        e.scene = src.name;
        e.gain_db = gain;
        e.dbinb = fs::path(src.name) / ("dbinb_" + tag + ".bin");
        e.dbinc = fs::path(src.name) / ("dbinc_" + tag + ".bin");
        e.gt = fs::path(src.name) / "gt.bin";
        per_source[i].push_back(std::move(e));
      }
      log_line(log, log_mutex, "generated " + src.name);
    } catch (const Error& e) {
      errors[i] = src.name + ": " + e.what();
      log_line(log, log_mutex, "error: " + *errors[i]);
    }
  });

  GenerateResult result;
  result.set.root = opt.out_dir;
  result.set.gains = opt.gains;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (auto& e : per_source[i]) result.set.entries.push_back(std::move(e));
    if (errors[i]) result.failures.push_back(*errors[i]);
  }
  write_scene_set(result.set);
  return result;
}

FuseResult cmd_fuse(const FuseOptions& opt, std::ostream* log) {
  opt.config.validate();
  const SceneSet set = load_scene_set(opt.scene_root);
  const std::size_t n = set.entries.size();
  std::vector<std::optional<std::string>> errors(n);
  std::mutex log_mutex;
  FuseResult result;
  result.outputs.resize(n);

  parallel_for(n, opt.threads, [&](std::size_t i) {
    const SceneEntry& e = set.entries[i];
    try {
      RawMeta meta;
      const BayerImage dbinb = read_bayer(set.resolve(e.dbinb), &meta);
      const ImagePlane dbinc = read_plane(set.resolve(e.dbinc));
      const BayerImage fused = fuse(BinnedPair(dbinb, dbinc), opt.config);
      const fs::path out = opt.out_dir / (e.id + ".bin");
      write_plane(out, fused.plane(), meta);
      result.outputs[i] = out;
      log_line(log, log_mutex, "fused " + e.id);
    } catch (const Error& ex) {
      errors[i] = e.id + ": " + ex.what();
      log_line(log, log_mutex, "error: " + *errors[i]);
    }
  });

  std::vector<fs::path> written;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      result.failures.push_back(*errors[i]);
    } else {
      written.push_back(result.outputs[i]);
    }
  }
  result.outputs = std::move(written);
  return result;
}

ScoreResult cmd_score(const ScoreOptions& opt, std::ostream* log) {
  opt.isp.validate();
  const SceneSet set = load_scene_set(opt.gt_root);

  std::set<std::string> pred_ids;
  if (!fs::is_directory(opt.pred_dir)) throw IoError("'" + opt.pred_dir.string() + "' is not a directory");
  for (const auto& e : fs::directory_iterator(opt.pred_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".bin") pred_ids.insert(e.path().stem().string());
  }

  std::set<std::string> gt_ids;
  for (const SceneEntry& e : set.entries) {
    if (!e.gt) continue;
    gt_ids.insert(e.id);
    if (!pred_ids.contains(e.id)) throw PairingError("no prediction for scene '" + e.id + "'");
  }
  for (const auto& id : pred_ids) {
    if (!gt_ids.contains(id)) throw PairingError("prediction '" + id + "' has no ground-truth entry");
  }

  std::map<std::string, BayerImage> preds, gts;
  for (const SceneEntry& e : set.entries) {
    if (!e.gt) continue;
    gts.emplace(e.id, read_bayer(set.resolve(*e.gt)));
    preds.emplace(e.id, read_bayer(opt.pred_dir / (e.id + ".bin")));
  }

  const LpipsTable lpips = opt.lpips ? load_lpips(opt.lpips->string()) : LpipsTable{};
  ScoreResult result;
  result.report = score_set(preds, gts, opt.isp, lpips, opt.threads);
  if (log) {
    for (const auto& w : result.report.warnings) *log << "warning: " << w << '\n';
  }

  fs::create_directories(opt.out_dir);
  result.csv = opt.out_dir / "scores.csv";
  {
    std::ofstream out(result.csv, std::ios::binary);
    if (!out) throw IoError("cannot write '" + result.csv.string() + "'");
    write_report_csv(out, result.report);
  }
  result.leaderboard = opt.out_dir / "leaderboard.txt";
  {
    std::ofstream out(result.leaderboard, std::ios::binary);
    if (!out) throw IoError("cannot write '" + result.leaderboard.string() + "'");
    const MetricReport& agg = result.report.aggregate;
    if (agg.m4) {
      LeaderboardRow row{opt.run_name, agg.psnr, agg.ssim, *agg.lpips, agg.kld, *agg.m4, std::nullopt};
      write_leaderboard(out, rank_leaderboard({row}));
    } else {
      out << "M4 unavailable: LPIPS missing for at least one image\n";
    }
  }
  return result;
}

double estimate_16m_seconds(double measured_seconds, std::size_t width, std::size_t height) {
  return measured_seconds * (kReferenceFramePixels / static_cast<double>(width * height));
}

BenchResult cmd_bench(const BenchOptions& opt) {
  if (opt.runs < 3) throw ConfigError("benchmark needs at least 3 runs");
  opt.fusion.validate();
  if (opt.include_isp) opt.isp.validate();
  const BinnedPair clean = synthetic_pair(opt.width, opt.height, opt.seed);
  NoiseParams noise;
  noise.gain_db = 24.0;
  noise.seed = derive_seed(opt.seed, "bench/dbinb");
  const ImagePlane noisy_b = apply_noise(clean.dbinb.plane(), noise);
  noise.seed = derive_seed(opt.seed, "bench/dbinc");
  const BinnedPair input(BayerImage(noisy_b, clean.dbinb.phase()), apply_noise(clean.dbinc, noise));

  BenchResult result;
  result.width = opt.width;
  result.height = opt.height;
  for (std::size_t k = 0; k < opt.runs; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const BayerImage fused = fuse(input, opt.fusion, opt.threads);
    if (opt.include_isp) {
      const RgbImage rgb = run_isp(fused, opt.isp);
      if (rgb.width() != opt.width) throw ShapeError("unexpected render size");
    }
    const auto t1 = std::chrono::steady_clock::now();
    result.samples.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::vector<double> sorted = result.samples;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  result.median_seconds = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  result.estimate_16m = estimate_16m_seconds(result.median_seconds, opt.width, opt.height);
  return result;
}

void cmd_render(const fs::path& bayer_path, const IspConfig& isp, const fs::path& out_path) {
  write_ppm(out_path, run_isp(read_bayer(bayer_path), isp));
}

std::vector<LeaderboardRow> cmd_table(const fs::path& csv_path, std::ostream& out) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open '" + csv_path.string() + "'");
  auto ranked = rank_leaderboard(parse_leaderboard_csv(in));
  write_leaderboard(out, ranked);
  return ranked;
}

}  // namespace rgbwforge
