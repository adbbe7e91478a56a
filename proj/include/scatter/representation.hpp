#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scatter/preprocess.hpp"

namespace scatter {

enum class HeatmapKind : std::uint8_t { Counts = 0, Density = 1 };

/// Square r x r grid. Cell (i, j) covers x-bin i and y-bin j (x grows to the
/// right, y grows upward) and is stored row-major at index i * r + j.
struct HeatmapLevel {
  std::size_t resolution = 0;
  HeatmapKind kind = HeatmapKind::Counts;
  std::vector<double> cells;

  double at(std::size_t i, std::size_t j) const { return cells[i * resolution + j]; }
  double& at(std::size_t i, std::size_t j) { return cells[i * resolution + j]; }
  double sum() const noexcept;

  friend bool operator==(const HeatmapLevel&, const HeatmapLevel&) = default;
};

/// Levels ordered coarse to fine with strictly doubling resolutions.
struct HeatmapPyramid {
  std::string spec_id;
  std::vector<HeatmapLevel> levels;
  std::size_t point_count = 0;

  HeatmapKind kind() const noexcept { return levels.empty() ? HeatmapKind::Counts : levels.front().kind; }
  bool empty() const noexcept { return point_count == 0; }
  std::vector<std::size_t> resolutions() const;

  friend bool operator==(const HeatmapPyramid&, const HeatmapPyramid&) = default;
};

struct PyramidConfig {
  std::size_t min_resolution = 2;
  std::size_t max_resolution = 64;
  /// Score on per-plot densities (true) or raw counts (false).
  bool density = true;

  friend bool operator==(const PyramidConfig&, const PyramidConfig&) = default;
};

inline constexpr std::size_t kMaxResolution = 4096;

bool is_power_of_two(std::size_t v) noexcept;

/// Throws InvalidArgument unless both bounds are powers of two >= 2, min <= max
/// and max <= kMaxResolution.
void validate(const PyramidConfig& config);

/// Dyadic resolutions min, 2*min, ..., max.
std::vector<std::size_t> level_resolutions(const PyramidConfig& config);

/// Counts grid: point (x, y) lands in (floor(x r), floor(y r)) with 1.0 going
/// to the last bin. Throws InvalidArgument for r that is not a power of two
/// >= 2 or for coordinates outside [0,1].
HeatmapLevel bin(std::span<const Point> points, std::size_t resolution);
inline HeatmapLevel bin(const PointSet& ps, std::size_t resolution) { return bin(ps.points, resolution); }

/// One counts level per dyadic resolution in the config, each binned
/// directly from the points.
HeatmapPyramid build_pyramid(const PointSet& ps, const PyramidConfig& config);

/// Divides every level by point_count. Empty pyramids stay all-zero.
/// Throws InvalidArgument when the input is not counts-kind.
HeatmapPyramid to_density(const HeatmapPyramid& pyramid);

/// Sums 2x2 blocks of a counts level. Throws CannotDownsample at r = 2 and
/// InvalidArgument for density input.
HeatmapLevel block_downsample(const HeatmapLevel& level);

}  // namespace scatter
