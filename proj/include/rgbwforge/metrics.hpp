#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rgbwforge/image.hpp"
#include "rgbwforge/isp.hpp"

namespace rgbwforge {

inline constexpr double kPsnrCap = 100.0;

/// 10*log10(peak^2 / MSE) over all pixels and channels, capped at `cap`
/// (returned as-is when the images are identical). Symmetric in its operands.
double psnr(const RgbImage& pred, const RgbImage& gt, double peak = 1.0, double cap = kPsnrCap);
double psnr(const ImagePlane& pred, const ImagePlane& gt, double peak = 1.0,
            double cap = kPsnrCap);

/// SSIM with an 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03 and
/// dynamic range 1, evaluated over the valid region (no padding) and averaged
/// over pixels and channels. Both dimensions must be at least 11.
double ssim(const RgbImage& pred, const RgbImage& gt);
double ssim(const ImagePlane& pred, const ImagePlane& gt);

struct KldOptions {
  std::size_t bins = 256;
  double epsilon = 1e-6;  ///< added to every normalized bin before renormalizing
};

/// D_KL(P_gt || P_pred) in nats over histograms of the whole mosaic (values in [0,1]).
double kld(const BayerImage& pred, const BayerImage& gt, const KldOptions& options = {});
double kld(const ImagePlane& pred, const ImagePlane& gt, const KldOptions& options = {});

/// PSNR * SSIM * 2^(1 - LPIPS - KLD).
double m4(double psnr, double ssim, double lpips, double kld);

/// True when an M4 value lies outside the nominal [0, 100] score range.
bool m4_out_of_range(double value);

struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
  std::optional<double> lpips;
  double kld = 0.0;
  std::optional<double> m4;

  /// M4 from the four components; IncompleteReportError if LPIPS is absent.
  double compute_m4() const;
};

/// Per-image LPIPS values keyed by image id.
using LpipsTable = std::map<std::string, double>;

/// Reads "image_id,value" lines. Blank lines and '#' comments are skipped.
/// Malformed lines, negative values and duplicate ids raise ParseError with the line number.
LpipsTable parse_lpips(std::istream& in);
LpipsTable load_lpips(const std::string& path);

struct ImageReport {
  std::string id;
  MetricReport metrics;
};

struct SetReport {
  std::vector<ImageReport> images;  ///< sorted by id
  MetricReport aggregate;
  std::vector<std::string> warnings;
};

/// Scores matched prediction/ground-truth Bayer images.
///
/// PSNR and SSIM are computed on run_isp renders, KLD on the Bayer images.
/// LPIPS comes from the sidecar table; images without an entry get no LPIPS
/// and no M4. The aggregate is the arithmetic mean of each per-image metric in
/// id order (PSNR averaged in dB); aggregate LPIPS and M4 exist only when every
/// image has them. M4 values outside [0, 100] are kept and reported in warnings.
/// Throws PairingError unless both maps hold the same ids.
SetReport score_set(const std::map<std::string, BayerImage>& preds,
                    const std::map<std::string, BayerImage>& gts, const IspConfig& isp,
                    const LpipsTable& lpips = {}, unsigned threads = 1);

/// CSV with header id,psnr,ssim,lpips,kld,m4; absent values are empty fields.
/// The aggregate is the final row with id "mean".
void write_report_csv(std::ostream& out, const SetReport& report);

struct LeaderboardRow {
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
  double lpips = 0.0;
  double kld = 0.0;
  double m4 = 0.0;
  std::optional<double> reported_m4;
};

/// Sorts by M4 descending, ties broken by name.
std::vector<LeaderboardRow> rank_leaderboard(std::vector<LeaderboardRow> rows);

/// Reads "team,psnr,ssim,lpips,kld[,m4]" with that header. M4 is computed from
/// the four components; an m4 column is kept as the reported value for comparison.
std::vector<LeaderboardRow> parse_leaderboard_csv(std::istream& in);

/// Plain-text table: Team name | PSNR | SSIM | LPIPS | KLD | M4, plus the
/// reported M4 and the difference when any row carries one.
void write_leaderboard(std::ostream& out, const std::vector<LeaderboardRow>& ranked);

}  // namespace rgbwforge
