// rgbwforge command-line front end.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rgbwforge/configs.hpp"
#include "rgbwforge/error.hpp"
#include "rgbwforge/harness.hpp"
#include "rgbwforge/parallel.hpp"
#include "rgbwforge/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace rgbwforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSceneFailures = 1;
constexpr int kExitConfig = 2;

std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ConfigError("size must look like WxH, got '" + text + "'");
  try {
    std::size_t used = 0;
    const unsigned long w = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const unsigned long h = std::stoul(text.substr(x + 1), &used);
    if (used != text.size() - x - 1 || w == 0 || h == 0) throw std::invalid_argument(text);
    return {w, h};
  } catch (const std::logic_error&) {
    throw ConfigError("size must look like WxH, got '" + text + "'");
  }
}

template <class T, class Parse>
T load_config(const std::string& path, Parse parse) {
  if (path.empty()) return T{};
  return parse(KeyValues::load(path));
}

int report_failures(const std::vector<std::string>& failures) {
  for (const auto& f : failures) std::cerr << "error: " << f << '\n';
  return failures.empty() ? kExitOk : kExitSceneFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RGBW binning fusion: data generation, fusion, rendering and scoring"};
  app.require_subcommand(1);

  std::optional<unsigned> threads_flag;
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads_flag, "worker threads (0 = all cores; default RGBWFORGE_THREADS or 1)");
  };

  // generate
  auto* gen = app.add_subcommand("generate", "synthesize DbinB/DbinC pairs and ground truth");
  std::string rgb_dir, synth_size = "256x256", crop;
  std::size_t synthetic = 0;
  std::vector<double> gains{24.0, 42.0};
  gen->add_option("--rgb-dir", rgb_dir, "directory of sRGB binary PPM sources");
  gen->add_option("--synthetic", synthetic, "number of procedural scenes");
  gen->add_option("--size", synth_size, "procedural scene size WxH (RGBW resolution)");
  gen->add_option("--crop", crop, "centered crop WxH applied to file sources");
  gen->add_option("--gains", gains, "analog gains in dB")->delimiter(',');
  gen->add_option("--seed", seed, "noise and scene seed");
  gen->add_option("--config", config_path, "generate config (key=value)");
  gen->add_option("--out", out, "output scene-set directory")->required();
  add_threads(gen);

  // fuse
  auto* fuse_cmd = app.add_subcommand("fuse", "fuse every entry of a scene set");
  std::string scene_root;
  fuse_cmd->add_option("scene_set", scene_root, "scene-set directory")->required();
  fuse_cmd->add_option("--config", config_path, "fusion config (key=value)");
  fuse_cmd->add_option("--out", out, "prediction directory")->required();
  add_threads(fuse_cmd);

  // render
  auto* render = app.add_subcommand("render", "render a Bayer .bin to PPM through the ISP");
  std::string bayer_path;
  render->add_option("bayer", bayer_path, "Bayer .bin with sidecar .meta")->required();
  render->add_option("--config", config_path, "ISP config (key=value)");
  render->add_option("--out", out, "output .ppm")->required();

  // score
  auto* score = app.add_subcommand("score", "score predictions against scene-set ground truth");
  std::string pred_dir, gt_root, lpips_path, run_name = "run";
  score->add_option("predictions", pred_dir, "prediction directory")->required();
  score->add_option("ground_truth", gt_root, "scene-set directory")->required();
  score->add_option("--config", config_path, "ISP config (key=value)");
  score->add_option("--lpips", lpips_path, "LPIPS sidecar CSV (id,lpips)");
  score->add_option("--name", run_name, "run name for the leaderboard");
  score->add_option("--out", out, "report directory")->required();
  add_threads(score);

  // bench
  auto* bench = app.add_subcommand("bench", "time fusion (+ ISP) on a synthetic frame");
  std::string bench_size = "1800x1200", isp_config_path;
  std::size_t runs = 5;
  bool no_isp = false;
  bench->add_option("--config", config_path, "fusion config (key=value)");
  bench->add_option("--isp-config", isp_config_path, "ISP config (key=value)");
  bench->add_option("--size", bench_size, "binned frame size WxH");
  bench->add_option("--runs", runs, "timed runs (>= 3)");
  bench->add_flag("--no-isp", no_isp, "time fusion only");
  bench->add_option("--seed", seed, "synthetic input seed");
  add_threads(bench);

  // table
  auto* table = app.add_subcommand("table", "rank metric quadruples from CSV");
  std::string table_csv;
  table->add_option("csv", table_csv, "team,psnr,ssim,lpips,kld[,m4]")->required();
  table->add_option("--out", out, "write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const unsigned threads = resolve_threads(threads_flag);
    if (*gen) {
      GenerateOptions opt;
      if (!rgb_dir.empty()) opt.rgb_dir = rgb_dir;
      opt.synthetic_count = synthetic;
      std::tie(opt.synthetic_width, opt.synthetic_height) = parse_size(synth_size);
      if (!crop.empty()) opt.crop = parse_size(crop);
      if (!opt.rgb_dir && opt.synthetic_count == 0) throw ConfigError("give --rgb-dir and/or --synthetic N");
      opt.out_dir = out;
      opt.gains = gains;
      opt.seed = seed;
      opt.config = load_config<GenerateConfig>(config_path, parse_generate_config);
      opt.threads = threads;
      const GenerateResult r = cmd_generate(opt, &std::cout);
      std::cout << r.set.entries.size() << " entries written to " << out << '\n';
      return report_failures(r.failures);
    }
    if (*fuse_cmd) {
      FuseOptions opt;
      opt.scene_root = scene_root;
      opt.config = load_config<FusionConfig>(config_path, parse_fusion_config);
      opt.out_dir = out;
      opt.threads = threads;
      const FuseResult r = cmd_fuse(opt, &std::cout);
      return report_failures(r.failures);
    }
    if (*render) {
      cmd_render(bayer_path, load_config<IspConfig>(config_path, parse_isp_config), out);
      return kExitOk;
    }
    if (*score) {
      ScoreOptions opt;
      opt.pred_dir = pred_dir;
      opt.gt_root = gt_root;
      opt.isp = load_config<IspConfig>(config_path, parse_isp_config);
      if (!lpips_path.empty()) opt.lpips = lpips_path;
      opt.out_dir = out;
      opt.run_name = run_name;
      opt.threads = threads;
      const ScoreResult r = cmd_score(opt, &std::cerr);
      const MetricReport& a = r.report.aggregate;
      std::printf("images %zu  psnr %.4f  ssim %.6f  kld %.6f", r.report.images.size(), a.psnr, a.ssim, a.kld);
      if (a.m4) std::printf("  m4 %.4f", *a.m4);
      std::printf("\n");
      return kExitOk;
    }
    if (*bench) {
      BenchOptions opt;
      opt.fusion = load_config<FusionConfig>(config_path, parse_fusion_config);
      opt.isp = load_config<IspConfig>(isp_config_path, parse_isp_config);
      std::tie(opt.width, opt.height) = parse_size(bench_size);
      opt.runs = runs;
      opt.include_isp = !no_isp;
      opt.threads = threads;
      opt.seed = seed;
      const BenchResult r = cmd_bench(opt);
      std::printf("kernels %s\n", simd::kernels().name);
      std::printf("size %zux%zu  runs %zu\n", r.width, r.height, r.samples.size());
      std::printf("median %.4f s  16M estimate %.4f s\n", r.median_seconds, r.estimate_16m);
      return kExitOk;
    }
    if (*table) {
      if (out.empty()) {
        cmd_table(table_csv, std::cout);
      } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw IoError("cannot write '" + out + "'");
        cmd_table(table_csv, f);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
