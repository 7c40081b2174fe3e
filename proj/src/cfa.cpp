#include "rgbwforge/cfa.hpp"

#include "rgbwforge/error.hpp"

namespace rgbwforge {

char to_char(Channel c) {
  switch (c) {
    case Channel::R: return 'R';
    case Channel::G: return 'G';
    case Channel::B: return 'B';
    case Channel::W: return 'W';
  }
  return '?';
}

std::string_view to_string(CfaPhase phase) {
  switch (phase) {
    case CfaPhase::RGGB: return "RGGB";
    case CfaPhase::GRBG: return "GRBG";
    case CfaPhase::GBRG: return "GBRG";
    case CfaPhase::BGGR: return "BGGR";
  }
  return "?";
}

CfaPhase parse_cfa_phase(std::string_view text) {
  if (text == "RGGB") return CfaPhase::RGGB;
  if (text == "GRBG") return CfaPhase::GRBG;
  if (text == "GBRG") return CfaPhase::GBRG;
  if (text == "BGGR") return CfaPhase::BGGR;
  throw ConfigError("unsupported CFA phase '" + std::string(text) + "'");
}

std::array<Channel, 4> bayer_quad(CfaPhase phase) {
  using enum Channel;
  switch (phase) {
    case CfaPhase::RGGB: return {R, G, G, B};
    case CfaPhase::GRBG: return {G, R, B, G};
    case CfaPhase::GBRG: return {G, B, R, G};
    case CfaPhase::BGGR: return {B, G, G, R};
  }
  throw ConfigError("unsupported CFA phase");
}

Channel bayer_color(CfaPhase phase, std::size_t row, std::size_t col) {
  return bayer_quad(phase)[(row & 1) * 2 + (col & 1)];
}

namespace {

Channel parse_channel(char c) {
  switch (c) {
    case 'R': return Channel::R;
    case 'G': return Channel::G;
    case 'B': return Channel::B;
    case 'W': return Channel::W;
    default: throw ConfigError(std::string("invalid RGBW layout letter '") + c + "'");
  }
}

}  // namespace

RgbwLayout RgbwLayout::canonical() {
  using enum Channel;
  return RgbwLayout({W, R, W, G,
                     R, W, G, W,
                     W, G, W, B,
                     G, W, B, W});
}

RgbwLayout RgbwLayout::parse(std::string_view text) {
  std::array<Channel, 16> sites{};
  std::size_t n = 0;
  std::size_t in_row = 0;
  for (char c : text) {
    if (c == '/') {
      if (in_row != 4) throw ConfigError("RGBW layout rows must have 4 sites");
      in_row = 0;
      continue;
    }
    if (n == 16) throw ConfigError("RGBW layout has more than 16 sites");
    sites[n++] = parse_channel(c);
    ++in_row;
  }
  if (n != 16 || in_row != 4) throw ConfigError("RGBW layout must have 4 rows of 4 sites");
  return RgbwLayout(sites);
}

RgbwLayout::RgbwLayout(const std::array<Channel, 16>& sites) : sites_(sites) {
  std::array<Channel, 4> quad{};
  for (std::size_t cr = 0; cr < 2; ++cr) {
    for (std::size_t cc = 0; cc < 2; ++cc) {
      const Channel a = at(2 * cr, 2 * cc);
      const Channel b = at(2 * cr, 2 * cc + 1);
      const Channel c = at(2 * cr + 1, 2 * cc);
      const Channel d = at(2 * cr + 1, 2 * cc + 1);
      Channel color;
      if (a == Channel::W && d == Channel::W && b == c && b != Channel::W) {
        color = b;
      } else if (b == Channel::W && c == Channel::W && a == d && a != Channel::W) {
        color = a;
      } else {
        throw ConfigError("RGBW layout cell must hold a W diagonal and a same-color diagonal");
      }
      quad[cr * 2 + cc] = color;
    }
  }
  for (CfaPhase p : {CfaPhase::RGGB, CfaPhase::GRBG, CfaPhase::GBRG, CfaPhase::BGGR}) {
    if (bayer_quad(p) == quad) return;
  }
  throw ConfigError("RGBW layout cell colors do not form a Bayer quad");
}

Channel RgbwLayout::cell_color(std::size_t cell_row, std::size_t cell_col) const {
  const std::size_t r = 2 * (cell_row % 2);
  const std::size_t c = 2 * (cell_col % 2);
  return at(r, c) == Channel::W ? at(r, c + 1) : at(r, c);
}

bool RgbwLayout::white_on_main_diagonal(std::size_t cell_row, std::size_t cell_col) const {
  return at(2 * (cell_row % 2), 2 * (cell_col % 2)) == Channel::W;
}

CfaPhase RgbwLayout::binned_phase() const {
  const std::array<Channel, 4> quad{cell_color(0, 0), cell_color(0, 1), cell_color(1, 0),
                                    cell_color(1, 1)};
  for (CfaPhase p : {CfaPhase::RGGB, CfaPhase::GRBG, CfaPhase::GBRG, CfaPhase::BGGR}) {
    if (bayer_quad(p) == quad) return p;
  }
  throw ConfigError("RGBW layout cell colors do not form a Bayer quad");
}

std::string RgbwLayout::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < 4; ++r) {
    if (r) s += '/';
    for (std::size_t c = 0; c < 4; ++c) s += to_char(at(r, c));
  }
  return s;
}

}  // namespace rgbwforge
