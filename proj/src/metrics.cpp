#include "rgbwforge/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>

#include "rgbwforge/error.hpp"
#include "rgbwforge/parallel.hpp"
#include "text_util.hpp"

namespace rgbwforge {

namespace {

void require_same_shape(const ImagePlane& a, const ImagePlane& b, const char* metric) {
  if (!a.same_shape(b)) throw ShapeError(std::string(metric) + ": images differ in size");
}

double squared_error_sum(const ImagePlane& a, const ImagePlane& b) {
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = pa[i] - pb[i];
    sum += d * d;
  }
  return sum;
}

double psnr_from_mse(double mse, double peak, double cap) {
  if (mse == 0.0) return cap;
  return std::min(cap, 10.0 * std::log10(peak * peak / mse));
}

}  // namespace

double psnr(const ImagePlane& pred, const ImagePlane& gt, double peak, double cap) {
  require_same_shape(pred, gt, "psnr");
  return psnr_from_mse(squared_error_sum(pred, gt) / static_cast<double>(pred.size()), peak, cap);
}

double psnr(const RgbImage& pred, const RgbImage& gt, double peak, double cap) {
  require_same_shape(pred.r(), gt.r(), "psnr");
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) sum += squared_error_sum(pred.channel(c), gt.channel(c));
  return psnr_from_mse(sum / (3.0 * static_cast<double>(pred.r().size())), peak, cap);
}

namespace {

constexpr std::size_t kSsimWindow = 11;

std::array<double, kSsimWindow> gaussian_window() {
  std::array<double, kSsimWindow> w{};
  double sum = 0.0;
  for (std::size_t i = 0; i < kSsimWindow; ++i) {
    const double d = static_cast<double>(i) - 5.0;
    w[i] = std::exp(-(d * d) / (2.0 * 1.5 * 1.5));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

/// Separable Gaussian filter over the valid region of f(a[i], b[i]).
template <typename F>
std::vector<double> valid_blur(const ImagePlane& a, const ImagePlane& b, F f) {
  static const auto win = gaussian_window();
  const std::size_t w = a.width(), h = a.height();
  const std::size_t ow = w - kSsimWindow + 1, oh = h - kSsimWindow + 1;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::vector<double> rows(ow * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < kSsimWindow; ++k) {
        const std::size_t i = y * w + x + k;
        acc += win[k] * f(pa[i], pb[i]);
      }
      rows[y * ow + x] = acc;
    }
  }
  std::vector<double> out(ow * oh);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < kSsimWindow; ++k) acc += win[k] * rows[(y + k) * ow + x];
      out[y * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double ssim(const ImagePlane& pred, const ImagePlane& gt) {
  require_same_shape(pred, gt, "ssim");
  if (pred.width() < kSsimWindow || pred.height() < kSsimWindow) {
    throw ShapeError("ssim needs images of at least 11x11");
  }
  constexpr double c1 = (0.01 * 1.0) * (0.01 * 1.0);
  constexpr double c2 = (0.03 * 1.0) * (0.03 * 1.0);
  const auto mu1 = valid_blur(pred, gt, [](double x, double) { return x; });
  const auto mu2 = valid_blur(pred, gt, [](double, double y) { return y; });
  const auto xx = valid_blur(pred, gt, [](double x, double) { return x * x; });
  const auto yy = valid_blur(pred, gt, [](double, double y) { return y * y; });
  const auto xy = valid_blur(pred, gt, [](double x, double y) { return x * y; });
  double sum = 0.0;
  for (std::size_t i = 0; i < mu1.size(); ++i) {
    const double m12 = mu1[i] * mu2[i];
    const double s1 = xx[i] - mu1[i] * mu1[i];
    const double s2 = yy[i] - mu2[i] * mu2[i];
    const double s12 = xy[i] - m12;
    const double num = (2.0 * m12 + c1) * (2.0 * s12 + c2);
    const double den = ((mu1[i] * mu1[i] + mu2[i] * mu2[i]) + c1) * ((s1 + s2) + c2);
    sum += num / den;
  }
  return sum / static_cast<double>(mu1.size());
}

double ssim(const RgbImage& pred, const RgbImage& gt) {
  require_same_shape(pred.r(), gt.r(), "ssim");
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) sum += ssim(pred.channel(c), gt.channel(c));
  return sum / 3.0;
}

namespace {

std::vector<double> smoothed_histogram(const ImagePlane& p, const KldOptions& opt) {
  std::vector<double> counts(opt.bins, 0.0);
  for (double v : p.pixels()) {
    if (v < 0.0 || v > 1.0) throw ConfigError("kld expects values in [0,1]");
    const auto idx = std::min(opt.bins - 1, static_cast<std::size_t>(v * static_cast<double>(opt.bins)));
    counts[idx] += 1.0;
  }
  const double n = static_cast<double>(p.size());
  const double norm = 1.0 + static_cast<double>(opt.bins) * opt.epsilon;
  for (double& c : counts) c = (c / n + opt.epsilon) / norm;
  return counts;
}

}  // namespace

double kld(const ImagePlane& pred, const ImagePlane& gt, const KldOptions& options) {
  if (options.bins == 0) throw ConfigError("kld needs at least one bin");
  if (!(options.epsilon > 0.0)) throw ConfigError("kld smoothing epsilon must be positive");
  const auto q = smoothed_histogram(pred, options);
  const auto p = smoothed_histogram(gt, options);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += p[i] * std::log(p[i] / q[i]);
  // Non-negative by Gibbs' inequality; only rounding can push it below zero.
  return std::max(0.0, d);
}

double kld(const BayerImage& pred, const BayerImage& gt, const KldOptions& options) {
  return kld(pred.plane(), gt.plane(), options);
}

double m4(double psnr, double ssim, double lpips, double kld) {
  return psnr * ssim * std::exp2(1.0 - lpips - kld);
}

bool m4_out_of_range(double value) { return value < 0.0 || value > 100.0; }

double MetricReport::compute_m4() const {
  if (!lpips) throw IncompleteReportError("M4 needs an LPIPS value");
  return rgbwforge::m4(psnr, ssim, *lpips, kld);
}

LpipsTable parse_lpips(std::istream& in) {
  LpipsTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = text::split(body, ',');
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError("expected 'image_id,value'", line_no);
    }
    const auto value = text::to_double(fields[1]);
    if (!value || !std::isfinite(*value)) throw ParseError("LPIPS value is not a number", line_no);
    if (*value < 0.0) throw ParseError("LPIPS value must be non-negative", line_no);
    if (!table.emplace(std::string(fields[0]), *value).second) {
      throw ParseError("duplicate image id '" + std::string(fields[0]) + "'", line_no);
    }
  }
  return table;
}

LpipsTable load_lpips(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open LPIPS sidecar '" + path + "'");
  return parse_lpips(in);
}

SetReport score_set(const std::map<std::string, BayerImage>& preds,
                    const std::map<std::string, BayerImage>& gts, const IspConfig& isp,
                    const LpipsTable& lpips, unsigned threads) {
  isp.validate();
  for (const auto& [id, _] : preds) {
    if (!gts.contains(id)) throw PairingError("prediction '" + id + "' has no ground truth");
  }
  for (const auto& [id, _] : gts) {
    if (!preds.contains(id)) throw PairingError("ground truth '" + id + "' has no prediction");
  }
  if (preds.empty()) throw PairingError("no images to score");

  std::vector<std::string> ids;
  for (const auto& [id, _] : gts) ids.push_back(id);

  SetReport report;
  report.images.resize(ids.size());
  parallel_for(ids.size(), threads, [&](std::size_t i) {
    const BayerImage& pred = preds.at(ids[i]);
    const BayerImage& gt = gts.at(ids[i]);
    if (pred.width() != gt.width() || pred.height() != gt.height()) {
      throw ShapeError("image '" + ids[i] + "': prediction and ground truth differ in size");
    }
    const RgbImage pred_rgb = run_isp(pred, isp);
    const RgbImage gt_rgb = run_isp(gt, isp);
    MetricReport m;
    m.psnr = psnr(pred_rgb, gt_rgb);
    m.ssim = ssim(pred_rgb, gt_rgb);
    m.kld = kld(black_level_correct(pred), black_level_correct(gt));
    if (auto it = lpips.find(ids[i]); it != lpips.end()) {
      m.lpips = it->second;
      m.m4 = m.compute_m4();
    }
    report.images[i] = {ids[i], m};
  });

  const double n = static_cast<double>(ids.size());
  MetricReport& agg = report.aggregate;
  double lp = 0.0, m4_sum = 0.0;
  bool all_lpips = true;
  for (const ImageReport& r : report.images) {
    agg.psnr += r.metrics.psnr;
    agg.ssim += r.metrics.ssim;
    agg.kld += r.metrics.kld;
    if (r.metrics.lpips) {
      lp += *r.metrics.lpips;
      m4_sum += *r.metrics.m4;
      if (m4_out_of_range(*r.metrics.m4)) {
        report.warnings.push_back("image '" + r.id + "': M4 " + text::fixed(*r.metrics.m4, 2) +
                                  " is outside [0, 100]");
      }
    } else {
      all_lpips = false;
    }
  }
  agg.psnr /= n;
  agg.ssim /= n;
  agg.kld /= n;
  if (all_lpips) {
    agg.lpips = lp / n;
    agg.m4 = m4_sum / n;
    if (m4_out_of_range(*agg.m4)) {
      report.warnings.push_back("aggregate M4 " + text::fixed(*agg.m4, 2) + " is outside [0, 100]");
    }
  }
  return report;
}

namespace {

std::string opt_field(const std::optional<double>& v) { return v ? text::fixed(*v, 6) : ""; }

void write_row(std::ostream& out, const std::string& id, const MetricReport& m) {
  out << id << ',' << text::fixed(m.psnr, 6) << ',' << text::fixed(m.ssim, 6) << ','
      << opt_field(m.lpips) << ',' << text::fixed(m.kld, 6) << ',' << opt_field(m.m4) << '\n';
}

}  // namespace

void write_report_csv(std::ostream& out, const SetReport& report) {
  out << "id,psnr,ssim,lpips,kld,m4\n";
  for (const ImageReport& r : report.images) write_row(out, r.id, r.metrics);
  write_row(out, "mean", report.aggregate);
}

std::vector<LeaderboardRow> rank_leaderboard(std::vector<LeaderboardRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
    if (a.m4 != b.m4) return a.m4 > b.m4;
    return a.name < b.name;
  });
  return rows;
}

std::vector<LeaderboardRow> parse_leaderboard_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool has_m4 = false;
  std::vector<LeaderboardRow> rows;
  std::set<std::string> names;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = text::split(body, ',');
    if (!header_seen) {
      const bool base = fields.size() >= 5 && fields[0] == "team" && fields[1] == "psnr" &&
                        fields[2] == "ssim" && fields[3] == "lpips" && fields[4] == "kld";
      if (!base || fields.size() > 6 || (fields.size() == 6 && fields[5] != "m4")) {
        throw ParseError("expected header 'team,psnr,ssim,lpips,kld[,m4]'", line_no);
      }
      has_m4 = fields.size() == 6;
      header_seen = true;
      continue;
    }
    if (fields.size() != (has_m4 ? 6u : 5u)) throw ParseError("wrong number of fields", line_no);
    LeaderboardRow row;
    row.name = std::string(fields[0]);
    if (row.name.empty()) throw ParseError("empty team name", line_no);
    if (!names.insert(row.name).second) throw ParseError("duplicate team '" + row.name + "'", line_no);
    double* targets[] = {&row.psnr, &row.ssim, &row.lpips, &row.kld};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto v = text::to_double(fields[i + 1]);
      if (!v || !std::isfinite(*v)) throw ParseError("field " + std::to_string(i + 2) + " is not a number", line_no);
      *targets[i] = *v;
    }
    row.m4 = m4(row.psnr, row.ssim, row.lpips, row.kld);
    if (has_m4 && !fields[5].empty()) {
      const auto v = text::to_double(fields[5]);
      if (!v) throw ParseError("m4 is not a number", line_no);
      row.reported_m4 = *v;
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("missing header 'team,psnr,ssim,lpips,kld[,m4]'");
  return rows;
}

void write_leaderboard(std::ostream& out, const std::vector<LeaderboardRow>& ranked) {
  std::size_t name_w = 9;  // "Team name"
  bool reported = false;
  for (const auto& r : ranked) {
    name_w = std::max(name_w, r.name.size());
    reported |= r.reported_m4.has_value();
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  out << pad("Team name", name_w) << " | " << pad("PSNR", 7) << " | " << pad("SSIM", 5) << " | "
      << pad("LPIPS", 6) << " | " << pad("KLD", 6) << " | " << pad("M4", 6);
  if (reported) out << " | " << pad("Reported", 8) << " | Delta";
  out << '\n';
  const std::size_t rule = name_w + 45 + (reported ? 19 : 0);
  out << std::string(rule, '-') << '\n';
  for (const auto& r : ranked) {
    out << pad(r.name, name_w) << " | " << pad(text::fixed(r.psnr, 3), 7) << " | "
        << pad(text::fixed(r.ssim, 3), 5) << " | " << pad(text::fixed(r.lpips, 4), 6) << " | "
        << pad(text::fixed(r.kld, 4), 6) << " | " << pad(text::fixed(r.m4, 2), 6);
    if (reported) {
      if (r.reported_m4) {
        out << " | " << pad(text::fixed(*r.reported_m4, 2), 8) << " | "
            << text::fixed(r.m4 - *r.reported_m4, 2);
      } else {
        out << " | " << pad("", 8) << " |";
      }
    }
    out << '\n';
  }
}

}  // namespace rgbwforge
