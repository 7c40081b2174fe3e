#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace rgbwforge {

enum class Channel : unsigned char { R = 0, G = 1, B = 2, W = 3 };

char to_char(Channel c);

/// 2x2 Bayer phase, named by the colors of the top-left quad in raster order.
enum class CfaPhase { RGGB, GRBG, GBRG, BGGR };

std::string_view to_string(CfaPhase phase);
CfaPhase parse_cfa_phase(std::string_view text);

/// Color of the Bayer site at (row, col).
Channel bayer_color(CfaPhase phase, std::size_t row, std::size_t col);

/// The 2x2 quad of a phase in raster order (top-left, top-right, bottom-left, bottom-right).
std::array<Channel, 4> bayer_quad(CfaPhase phase);

/// 4x4 RGBW super-cell.
///
/// Every 2x2 cell holds two W sites on one diagonal and two sites of a single
/// color on the other; the four cell colors form a Bayer quad, which becomes
/// the phase of the binned Bayer image.
class RgbwLayout {
 public:
  /// W on the main diagonal of each cell, cells colored R G / G B:
  ///
  ///     W R W G
  ///     R W G W
  ///     W G W B
  ///     G W B W
  static RgbwLayout canonical();

  /// Parses four rows of four channel letters separated by '/', e.g. "WRWG/RWGW/WGWB/GWBW".
  static RgbwLayout parse(std::string_view text);

  /// Throws ConfigError unless the grid satisfies the super-cell invariants.
  explicit RgbwLayout(const std::array<Channel, 16>& sites);

  Channel at(std::size_t row, std::size_t col) const { return sites_[(row % 4) * 4 + (col % 4)]; }

  /// Color carried by the 2x2 cell (cell_row, cell_col) of the super-cell.
  Channel cell_color(std::size_t cell_row, std::size_t cell_col) const;

  /// True when the W pair of the cell sits on its main diagonal.
  bool white_on_main_diagonal(std::size_t cell_row, std::size_t cell_col) const;

  CfaPhase binned_phase() const;

  std::string to_string() const;

  bool operator==(const RgbwLayout&) const = default;

 private:
  std::array<Channel, 16> sites_;
};

}  // namespace rgbwforge
