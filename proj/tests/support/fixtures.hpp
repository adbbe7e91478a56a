#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scatter/point.hpp"
#include "scatter/preprocess.hpp"
#include "scatter/representation.hpp"

namespace fixtures {

using Rng = std::mt19937_64;

/// Socio-economic style table: a text "state" column, a low-cardinality
/// numeric "region" code and `measures` continuous columns m00, m01, ...
/// with a handful of missing cells.
std::string communities_csv(std::size_t measures = 20, std::size_t rows = 400, std::uint64_t seed = 7);

/// Basketball shot log: shot_type (5 values), period, x, y, distance, made.
std::string ncaa_csv(std::size_t rows = 600, std::uint64_t seed = 11);

/// Uniform points in [0,1]^2; every few sets land some points on 0 and 1 exactly.
std::vector<scatter::Point> uniform_points(Rng& rng, std::size_t n);

/// Isotropic Gaussian blob clamped to [0,1]^2.
std::vector<scatter::Point> gaussian_cluster(Rng& rng, std::size_t n, double cx, double cy, double sigma);

scatter::PointSet point_set(std::vector<scatter::Point> points, std::string id = "p");

/// Density pyramid over uniform or clustered random points.
scatter::HeatmapPyramid random_density_pyramid(Rng& rng, std::size_t min_res, std::size_t max_res,
                                               std::size_t max_points = 400);

/// Star-shaped polygon around a random centre with vertices snapped to
/// multiples of 1/grid. May be degenerate after snapping.
std::vector<scatter::Point> star_polygon(Rng& rng, std::size_t vertices, double grid);

/// Points with coordinates k/grid, k in [0, grid].
std::vector<scatter::Point> grid_points(Rng& rng, std::size_t n, double grid);

/// Random density grid with at least one positive cell and some zero cells.
scatter::HeatmapLevel random_density_level(Rng& rng, std::size_t resolution);

}  // namespace fixtures
