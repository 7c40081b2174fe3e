#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rgbwforge/image.hpp"

namespace fixture {

inline rgbwforge::ImagePlane random_plane(std::size_t w, std::size_t h, std::uint64_t seed,
                                          double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(w * h);
  for (double& x : v) x = dist(rng);
  return rgbwforge::ImagePlane(w, h, std::move(v));
}

inline rgbwforge::RgbImage random_rgb(std::size_t w, std::size_t h, std::uint64_t seed) {
  return rgbwforge::RgbImage(random_plane(w, h, seed), random_plane(w, h, seed + 1),
                             random_plane(w, h, seed + 2));
}

inline rgbwforge::ImagePlane constant(std::size_t w, std::size_t h, double v) {
  return rgbwforge::ImagePlane(w, h, v);
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    const auto base = std::filesystem::temp_directory_path();
    for (;;) {
      path_ = base / ("rgbwforge-test-" + std::to_string(rd()));
      if (std::filesystem::create_directory(path_)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

/// FNV-1a over every file under root, in sorted relative-path order.
inline std::uint64_t tree_hash(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files.push_back(std::filesystem::relative(e.path(), root));
  }
  std::sort(files.begin(), files.end());
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& f : files) {
    feed(f.generic_string());
    feed(slurp(root / f));
  }
  return h;
}

}  // namespace fixture
