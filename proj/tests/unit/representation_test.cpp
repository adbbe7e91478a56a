#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "scatter/error.hpp"
#include "scatter/representation.hpp"

using namespace scatter;

TEST(Bin, CellLayoutAndUpperEdge) {
  const std::vector<Point> pts{{0.0, 0.0}, {0.99, 0.1}, {1.0, 1.0}, {0.25, 0.75}};
  const auto l = bin(pts, 4);
  EXPECT_EQ(l.resolution, 4u);
  EXPECT_EQ(l.at(0, 0), 1.0);
  EXPECT_EQ(l.at(3, 0), 1.0);  // x-bin 3, y-bin 0
  EXPECT_EQ(l.at(3, 3), 1.0);
  EXPECT_EQ(l.at(1, 3), 1.0);
  EXPECT_EQ(l.cells[1 * 4 + 3], 1.0);
  EXPECT_EQ(l.sum(), 4.0);
}

TEST(Bin, RejectsBadResolutionAndCoordinates) {
  const std::vector<Point> ok{{0.5, 0.5}};
  EXPECT_THROW(bin(ok, 3), Error);
  EXPECT_THROW(bin(ok, 1), Error);
  const std::vector<Point> out{{1.01, 0.5}};
  EXPECT_THROW(bin(out, 4), Error);
}

TEST(Pyramid, ConservationAndConsistencyProperty) {
  fixtures::Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto ps = fixtures::point_set(fixtures::uniform_points(rng, rng() % 3000));
    const auto p = build_pyramid(ps, {2, 128, true});
    EXPECT_EQ(p.resolutions(), (std::vector<std::size_t>{2, 4, 8, 16, 32, 64, 128}));
    EXPECT_EQ(p.point_count, ps.points.size());
    for (std::size_t l = 0; l < p.levels.size(); ++l) {
      EXPECT_EQ(p.levels[l].sum(), static_cast<double>(ps.points.size()));
      if (l > 0) {
        EXPECT_EQ(block_downsample(p.levels[l]), p.levels[l - 1]);
      }
    }
  }
}

TEST(Pyramid, DensityAndEmpty) {
  fixtures::Rng rng(2);
  const auto ps = fixtures::point_set(fixtures::uniform_points(rng, 77));
  const auto d = to_density(build_pyramid(ps, {4, 16, true}));
  EXPECT_EQ(d.kind(), HeatmapKind::Density);
  for (const auto& l : d.levels) EXPECT_NEAR(l.sum(), 1.0, 1e-12);

  const auto empty = to_density(build_pyramid(fixtures::point_set({}), {2, 8, true}));
  EXPECT_TRUE(empty.empty());
  for (const auto& l : empty.levels) EXPECT_EQ(l.sum(), 0.0);
  EXPECT_THROW(to_density(d), Error);
}

TEST(Pyramid, ConfigValidation) {
  EXPECT_THROW(validate(PyramidConfig{3, 8}), Error);
  EXPECT_THROW(validate(PyramidConfig{8, 4}), Error);
  EXPECT_THROW(validate(PyramidConfig{1, 4}), Error);
  EXPECT_THROW(validate(PyramidConfig{2, 8192}), Error);
  EXPECT_EQ(level_resolutions({8, 8}), (std::vector<std::size_t>{8}));
}

TEST(Downsample, ErrorsAtCoarsestAndForDensity) {
  const std::vector<Point> pts{{0.1, 0.1}};
  try {
    block_downsample(bin(pts, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CannotDownsample);
  }
  auto d = bin(pts, 4);
  d.kind = HeatmapKind::Density;
  EXPECT_THROW(block_downsample(d), Error);
}
