#include <doctest.h>

#include "fixtures.hpp"
#include "rgbwforge/error.hpp"
#include "rgbwforge/mosaic.hpp"

using namespace rgbwforge;

namespace {

RgbImage constant_rgb(std::size_t w, std::size_t h, double r, double g, double b) {
  return RgbImage(ImagePlane(w, h, r), ImagePlane(w, h, g), ImagePlane(w, h, b));
}

}  // namespace

TEST_SUITE("mosaic_binning") {

TEST_CASE("synth_white") {
  CHECK(synth_white(constant_rgb(4, 4, 1, 1, 1), {0.2, 0.5, 0.3}).at(2, 2) == 1.0);
  const RgbImage rgb = fixture::random_rgb(8, 4, 11);
  CHECK(synth_white(rgb, {1, 0, 0}) == rgb.r());
  CHECK(synth_white(constant_rgb(4, 4, 0.2, 0.4, 0.6)).at(0, 0) == doctest::Approx(0.363).epsilon(1e-15));
  CHECK(synth_white(constant_rgb(4, 4, 0.2, 0.4, 0.6), {}, 2.0).at(0, 0) ==
        doctest::Approx(0.726).epsilon(1e-15));
  CHECK(synth_white(constant_rgb(4, 4, 0.9, 0.9, 0.9), {}, 1.5).at(1, 1) == 1.0);
  CHECK_THROWS_AS(synth_white(rgb, {0.5, 0.5, 0.1}), ConfigError);
  CHECK_THROWS_AS(synth_white(rgb, {1.2, -0.1, -0.1}), ConfigError);
  CHECK_THROWS_AS(synth_white(rgb, {}, 0.9), ConfigError);
}

TEST_CASE("mosaic_rgbw samples the layout") {
  CHECK(mosaic_rgbw(constant_rgb(8, 8, 0.3, 0.3, 0.3), ImagePlane(8, 8, 0.3)).plane() ==
        ImagePlane(8, 8, 0.3));

  // Channel value = channel code / 8; the layout letters are the hand table.
  const RgbImage rgb = constant_rgb(4, 4, 0.125, 0.25, 0.375);
  const ImagePlane white(4, 4, 0.5);
  const RgbwImage m = mosaic_rgbw(rgb, white);
  const double W = 0.5, R = 0.125, G = 0.25, B = 0.375;
  const std::vector<double> table{W, R, W, G,
                                  R, W, G, W,
                                  W, G, W, B,
                                  G, W, B, W};
  CHECK(m.plane() == ImagePlane(4, 4, table));

  const ImagePlane wr = fixture::random_plane(8, 8, 5);
  CHECK(mosaic_rgbw(fixture::random_rgb(8, 8, 1), wr).plane().at(0, 0) == wr.at(0, 0));

  CHECK_THROWS_AS(mosaic_rgbw(constant_rgb(8, 8, 0, 0, 0), ImagePlane(8, 4, 0.0)), ShapeError);
  CHECK_THROWS_AS(mosaic_rgbw(constant_rgb(6, 8, 0, 0, 0), ImagePlane(6, 8, 0.0)), ShapeError);
}

TEST_CASE("bin_diagonal two-sample means") {
  // One super-cell in units of 1/1024 so every mean is exact.
  const double u = 1.0 / 1024;
  const std::vector<double> v{10 * u,  100 * u, 30 * u,  300 * u,
                              200 * u, 20 * u,  500 * u, 40 * u,
                              50 * u,  7 * u,   60 * u,  9 * u,
                              3 * u,   70 * u,  11 * u,  80 * u};
  const BinnedPair p = bin_diagonal(RgbwImage(ImagePlane(4, 4, v), RgbwLayout::canonical()));
  CHECK(p.dbinb.phase() == CfaPhase::RGGB);
  CHECK(p.dbinc == ImagePlane(2, 2, std::vector<double>{15 * u, 35 * u, 60 * u, 70 * u}));
  CHECK(p.dbinb.plane() == ImagePlane(2, 2, std::vector<double>{150 * u, 400 * u, 5 * u, 10 * u}));
}

TEST_CASE("bin_diagonal follows anti-diagonal layouts") {
  const RgbwLayout anti = RgbwLayout::parse("RWGW/WRWG/GWBW/WGWB");
  const double u = 1.0 / 64;
  std::vector<double> v(16);
  for (std::size_t i = 0; i < 16; ++i) v[i] = static_cast<double>(i) * u;
  const BinnedPair p = bin_diagonal(RgbwImage(ImagePlane(4, 4, v), anti));
  // Cell (0,0): color at (0,0),(1,1) = 0,5; W at (0,1),(1,0) = 1,4.
  CHECK(p.dbinb.plane().at(0, 0) == 2.5 * u);
  CHECK(p.dbinc.at(0, 0) == 2.5 * u);
  CHECK(p.dbinb.plane().at(1, 0) == 4.5 * u);  // (0,2),(1,3) = 2,7
  CHECK(p.dbinc.at(1, 0) == 4.5 * u);          // (0,3),(1,2) = 3,6
}

TEST_CASE("bin_diagonal properties") {
  const RgbwImage c(ImagePlane(8, 8, 0.4), RgbwLayout::canonical());
  const BinnedPair pc = bin_diagonal(c);
  CHECK(pc.dbinb.plane() == ImagePlane(4, 4, 0.4));
  CHECK(pc.dbinc == ImagePlane(4, 4, 0.4));

  const ImagePlane x = fixture::random_plane(16, 8, 1), y = fixture::random_plane(16, 8, 2);
  const double a = 0.25, b = 0.5;  // powers of two keep the combination exact
  std::vector<double> mix(x.size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * x.pixels()[i] + b * y.pixels()[i];
  const BinnedPair bx = bin_diagonal(RgbwImage(x, RgbwLayout::canonical()));
  const BinnedPair by = bin_diagonal(RgbwImage(y, RgbwLayout::canonical()));
  const BinnedPair bm = bin_diagonal(RgbwImage(ImagePlane(16, 8, mix), RgbwLayout::canonical()));
  REQUIRE(bm.dbinb.width() == 8);
  REQUIRE(bm.dbinb.height() == 4);
  for (std::size_t i = 0; i < bm.dbinc.size(); ++i) {
    CHECK(bm.dbinb.plane().pixels()[i] ==
          doctest::Approx(a * bx.dbinb.plane().pixels()[i] + b * by.dbinb.plane().pixels()[i]).epsilon(1e-14));
    CHECK(bm.dbinc.pixels()[i] ==
          doctest::Approx(a * bx.dbinc.pixels()[i] + b * by.dbinc.pixels()[i]).epsilon(1e-14));
  }
}

TEST_CASE("binned pair shape check") {
  CHECK_THROWS_AS(BinnedPair(BayerImage(ImagePlane(4, 4, 0.0), CfaPhase::RGGB), ImagePlane(4, 2, 0.0)),
                  ShapeError);
}

}
