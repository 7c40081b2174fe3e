#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rgbwforge/configs.hpp"
#include "rgbwforge/metrics.hpp"
#include "rgbwforge/scene_set.hpp"

namespace rgbwforge {

struct GenerateOptions {
  /// Directory of binary PPM sources (sRGB-encoded); used when set.
  std::optional<std::filesystem::path> rgb_dir;
  /// Procedural scenes generated in addition to (or instead of) rgb_dir.
  std::size_t synthetic_count = 0;
  std::size_t synthetic_width = 256;  ///< RGBW resolution of procedural scenes
  std::size_t synthetic_height = 256;
  /// Optional centered crop applied to file sources (e.g. 3600x2400).
  std::optional<std::pair<std::size_t, std::size_t>> crop;
  std::filesystem::path out_dir;
  std::vector<double> gains{24.0, 42.0};
  std::uint64_t seed = 0;
  GenerateConfig config;
  unsigned threads = 1;
};

struct GenerateResult {
  SceneSet set;
  std::vector<std::string> failures;  ///< one message per source that could not be processed
};

/// For each source: synthesize W, mosaic, bin diagonally, write the clean
/// DbinB as ground truth (gt.bin) and noisy DbinB/DbinC per gain
/// (dbinb_<gain>db.bin, dbinc_<gain>db.bin) under out_dir/<scene>/, plus the
/// scene-set manifest. Noise streams are keyed by (seed, scene, plane, gain).
GenerateResult cmd_generate(const GenerateOptions& options, std::ostream* log = nullptr);

struct FuseOptions {
  std::filesystem::path scene_root;
  FusionConfig config;
  std::filesystem::path out_dir;
  unsigned threads = 1;
};

struct FuseResult {
  std::vector<std::filesystem::path> outputs;  ///< out_dir/<entry id>.bin, manifest order
  std::vector<std::string> failures;
};

/// Fuses every entry of a scene set; predictions use the ground-truth file layout.
FuseResult cmd_fuse(const FuseOptions& options, std::ostream* log = nullptr);

struct ScoreOptions {
  std::filesystem::path pred_dir;  ///< holds <entry id>.bin/.meta
  std::filesystem::path gt_root;   ///< scene set root
  IspConfig isp;
  std::optional<std::filesystem::path> lpips;
  std::filesystem::path out_dir;
  std::string run_name = "run";
  unsigned threads = 1;
};

struct ScoreResult {
  SetReport report;
  std::filesystem::path csv;          ///< out_dir/scores.csv
  std::filesystem::path leaderboard;  ///< out_dir/leaderboard.txt
};

/// Scores predictions against the ground truth of a scene set.
/// Throws PairingError when prediction files and ground-truth entries differ.
ScoreResult cmd_score(const ScoreOptions& options, std::ostream* log = nullptr);

inline constexpr double kReferenceFramePixels = 16e6;

/// Area scaling of a measured time to a 16M-pixel binned frame.
double estimate_16m_seconds(double measured_seconds, std::size_t width, std::size_t height);

struct BenchOptions {
  FusionConfig fusion;
  std::size_t width = 1800;  ///< binned (DbinB) resolution
  std::size_t height = 1200;
  std::size_t runs = 5;      ///< must be >= 3
  bool include_isp = true;   ///< time run_isp on the fused Bayer as well
  IspConfig isp;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

struct BenchResult {
  std::size_t width = 0;
  std::size_t height = 0;
  double median_seconds = 0.0;
  double estimate_16m = 0.0;
  std::vector<double> samples;
};

BenchResult cmd_bench(const BenchOptions& options);

/// run_isp on a Bayer raster and PPM export.
void cmd_render(const std::filesystem::path& bayer_path, const IspConfig& isp,
                const std::filesystem::path& out_path);

/// Ranks metric quadruples read from CSV and writes the text leaderboard.
std::vector<LeaderboardRow> cmd_table(const std::filesystem::path& csv_path, std::ostream& out);

}  // namespace rgbwforge
