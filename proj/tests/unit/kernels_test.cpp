#include <gtest/gtest.h>

#include <limits>

#include "fixtures.hpp"
#include "scatter/error.hpp"
#include "scatter/ingest.hpp"
#include "scatter/kernels.hpp"

using namespace scatter;

namespace {

std::vector<HeatmapPyramid> random_pyramids(fixtures::Rng& rng, std::size_t n) {
  std::vector<HeatmapPyramid> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(fixtures::random_density_pyramid(rng, 2, 32));
  return out;
}

}  // namespace

TEST(Kernels, MldScanSerialEqualsParallel) {
  fixtures::Rng rng(8);
  const auto pyramids = random_pyramids(rng, 120);
  const auto w = default_weights(pyramids[0].levels.size());
  const auto serial = kernels::mld_scan(pyramids[0], pyramids, w, Execution::Serial);
  const auto parallel = kernels::mld_scan(pyramids[0], pyramids, w, Execution::Parallel);
  EXPECT_EQ(serial, parallel);
  for (std::size_t i = 0; i < pyramids.size(); ++i) EXPECT_EQ(serial[i], mld(pyramids[0], pyramids[i], w).value);
}

TEST(Kernels, PrunedScanKeepsExactValuesOfSurvivors) {
  fixtures::Rng rng(8);
  const auto pyramids = random_pyramids(rng, 80);
  const auto w = default_weights(pyramids[0].levels.size());
  const auto full = kernels::mld_scan(pyramids[1], pyramids, w, Execution::Serial);
  for (double t : {0.0, 0.01, 0.05, std::numeric_limits<double>::infinity()}) {
    const auto s = kernels::mld_scan_pruned(pyramids[1], pyramids, w, t, Execution::Serial);
    const auto p = kernels::mld_scan_pruned(pyramids[1], pyramids, w, t, Execution::Parallel);
    EXPECT_EQ(s, p);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double coarse = w[0] * level_distance(pyramids[1].levels[0], pyramids[i].levels[0]);
      EXPECT_EQ(s[i].has_value(), coarse <= t);
      if (s[i]) {
        EXPECT_EQ(*s[i], full[i]);
      }
    }
  }
}

TEST(Kernels, ErrorsPropagateFromParallelRegion) {
  fixtures::Rng rng(8);
  auto pyramids = random_pyramids(rng, 40);
  pyramids[17] = fixtures::random_density_pyramid(rng, 2, 8);
  const auto w = default_weights(pyramids[0].levels.size());
  for (auto exec : {Execution::Serial, Execution::Parallel}) {
    try {
      kernels::mld_scan(pyramids[0], pyramids, w, exec);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IncompatiblePyramid);
    }
  }
}

TEST(Kernels, RegionScanAndBuildAgree) {
  fixtures::Rng rng(31);
  std::vector<PointSet> plots;
  for (int i = 0; i < 64; ++i) plots.push_back(fixtures::point_set(fixtures::uniform_points(rng, rng() % 500)));
  const Region region({{0.1, 0.1}, {0.6, 0.2}, {0.4, 0.8}});
  for (bool norm : {false, true}) {
    EXPECT_EQ(kernels::region_scan(plots, region, norm, Execution::Serial),
              kernels::region_scan(plots, region, norm, Execution::Parallel));
  }
  EXPECT_EQ(kernels::build_pyramids(plots, {2, 64, true}, Execution::Serial),
            kernels::build_pyramids(plots, {2, 64, true}, Execution::Parallel));
}

TEST(Kernels, PreparePlotsSerialEqualsParallel) {
  const auto table = load_table(fixtures::communities_csv(8, 300));
  const auto specs = enumerate_pairwise(classify_attributes(table));
  PreprocessConfig cfg;
  cfg.sample_cap = 100;
  const auto s = kernels::prepare_plots(table, specs, cfg, Execution::Serial);
  const auto p = kernels::prepare_plots(table, specs, cfg, Execution::Parallel);
  ASSERT_EQ(s.size(), specs.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].points.points, p[i].points.points);
    EXPECT_EQ(s[i].clipped, p[i].clipped);
    EXPECT_EQ(s[i].points.spec, specs[i]);
  }
}
