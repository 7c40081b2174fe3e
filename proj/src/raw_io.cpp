#include "rgbwforge/raw_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "rgbwforge/error.hpp"
#include "rgbwforge/keyvalue.hpp"
#include "text_util.hpp"

namespace rgbwforge {

namespace fs = std::filesystem;

fs::path meta_path(const fs::path& bin_path) {
  fs::path p = bin_path;
  p.replace_extension(".meta");
  return p;
}

namespace {

void write_meta(const fs::path& path, const RawMeta& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  // Fixed key order keeps sidecars byte-stable.
  out << "width=" << m.width << '\n'
      << "height=" << m.height << '\n'
      << "black_level=" << text::exact(m.levels.black) << '\n'
      << "white_level=" << text::exact(m.levels.white) << '\n'
      << "cfa=" << (m.cfa ? std::string(to_string(*m.cfa)) : std::string("none")) << '\n'
      << "gain_db=" << text::exact(m.gain_db) << '\n'
      << "layout=" << (m.layout ? m.layout->to_string() : std::string("none")) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

RawMeta read_meta(const fs::path& path) {
  const KeyValues kv = KeyValues::load(path.string());
  kv.reject_unknown({"width", "height", "black_level", "white_level", "cfa", "gain_db", "layout"});
  RawMeta m;
  const auto w = kv.get_integer("width");
  const auto h = kv.get_integer("height");
  if (!w || !h || *w <= 0 || *h <= 0) throw ParseError(path.string() + ": invalid width/height");
  m.width = static_cast<std::size_t>(*w);
  m.height = static_cast<std::size_t>(*h);
  m.levels.black = kv.get_double("black_level").value_or(kDefaultCodeLevels.black);
  m.levels.white = kv.get_double("white_level").value_or(kDefaultCodeLevels.white);
  m.levels.validate();
  if (auto cfa = kv.get("cfa"); cfa && *cfa != "none") m.cfa = parse_cfa_phase(*cfa);
  m.gain_db = kv.get_double("gain_db").value_or(0.0);
  if (auto layout = kv.get("layout"); layout && *layout != "none") m.layout = RgbwLayout::parse(*layout);
  return m;
}

}  // namespace

void write_raw(const fs::path& bin_path, const RawFile& raw) {
  if (raw.codes.size() != raw.meta.width * raw.meta.height) {
    throw ShapeError("raw sample count does not match width*height");
  }
  if (bin_path.has_parent_path()) fs::create_directories(bin_path.parent_path());
  std::string bytes(raw.codes.size() * 2, '\0');
  for (std::size_t i = 0; i < raw.codes.size(); ++i) {
    bytes[2 * i] = static_cast<char>(raw.codes[i] & 0xFF);
    bytes[2 * i + 1] = static_cast<char>(raw.codes[i] >> 8);
  }
  std::ofstream out(bin_path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + bin_path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + bin_path.string() + "'");
  write_meta(meta_path(bin_path), raw.meta);
}

RawFile read_raw(const fs::path& bin_path) {
  RawFile raw;
  raw.meta = read_meta(meta_path(bin_path));
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + bin_path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t n = raw.meta.width * raw.meta.height;
  if (bytes.size() != 2 * n) {
    throw IoError("'" + bin_path.string() + "' holds " + std::to_string(bytes.size()) +
                  " bytes, expected " + std::to_string(2 * n));
  }
  raw.codes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    raw.codes[i] = static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[2 * i]) |
                                              (static_cast<unsigned char>(bytes[2 * i + 1]) << 8));
  }
  return raw;
}

void write_plane(const fs::path& bin_path, const ImagePlane& plane, const RawMeta& meta) {
  RawFile raw;
  raw.meta = meta;
  raw.meta.width = plane.width();
  raw.meta.height = plane.height();
  raw.codes = denormalize(plane, meta.levels);
  write_raw(bin_path, raw);
}

ImagePlane read_plane(const fs::path& bin_path, RawMeta* meta_out) {
  RawFile raw = read_raw(bin_path);
  ImagePlane plane = normalize(raw.codes, raw.meta.width, raw.meta.height, raw.meta.levels);
  if (meta_out) *meta_out = raw.meta;
  return plane;
}

BayerImage read_bayer(const fs::path& bin_path, RawMeta* meta_out) {
  RawMeta meta;
  ImagePlane plane = read_plane(bin_path, &meta);
  if (!meta.cfa) throw ParseError(bin_path.string() + ": sidecar does not name a CFA phase");
  if (meta_out) *meta_out = meta;
  return BayerImage(std::move(plane), *meta.cfa);
}

void write_ppm(const fs::path& path, const RgbImage& rgb) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "P6\n" << rgb.width() << ' ' << rgb.height() << "\n255\n";
  std::string bytes(rgb.width() * rgb.height() * 3, '\0');
  for (std::size_t i = 0, n = rgb.width() * rgb.height(); i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      bytes[3 * i + c] = static_cast<char>(static_cast<unsigned char>(
          std::round(rgb.channel(c).pixels()[i] * 255.0)));
    }
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

long read_header_number(std::istream& in, const fs::path& path) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      break;
    }
  }
  long v = -1;
  if (!(in >> v) || v <= 0) throw ParseError(path.string() + ": malformed PPM header");
  return v;
}

}  // namespace

RgbImage read_ppm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (magic != "P6") throw ParseError(path.string() + ": not a binary PPM (P6)");
  const long w = read_header_number(in, path);
  const long h = read_header_number(in, path);
  const long maxval = read_header_number(in, path);
  if (maxval > 65535) throw ParseError(path.string() + ": PPM maxval above 65535");
  in.get();  // single whitespace before the raster
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  std::string bytes(n * 3 * bytes_per, '\0');
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw IoError(path.string() + ": truncated PPM raster");
  }
  std::vector<double> ch[3] = {std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  const double scale = 1.0 / static_cast<double>(maxval);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t k = (3 * i + c) * bytes_per;
      unsigned v = static_cast<unsigned char>(bytes[k]);
      if (bytes_per == 2) v = (v << 8) | static_cast<unsigned char>(bytes[k + 1]);  // big-endian
      ch[c][i] = std::min(1.0, static_cast<double>(v) * scale);
    }
  }
  const auto uw = static_cast<std::size_t>(w), uh = static_cast<std::size_t>(h);
  return RgbImage(ImagePlane(uw, uh, std::move(ch[0])), ImagePlane(uw, uh, std::move(ch[1])),
                  ImagePlane(uw, uh, std::move(ch[2])));
}

}  // namespace rgbwforge
