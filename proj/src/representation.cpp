#include "scatter/representation.hpp"

#include <cmath>
#include <numeric>

#include "scatter/error.hpp"

namespace scatter {

double HeatmapLevel::sum() const noexcept { return std::accumulate(cells.begin(), cells.end(), 0.0); }

std::vector<std::size_t> HeatmapPyramid::resolutions() const {
  std::vector<std::size_t> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.resolution);
  return out;
}

bool is_power_of_two(std::size_t v) noexcept { return v != 0 && (v & (v - 1)) == 0; }

void validate(const PyramidConfig& config) {
  const auto ok = [](std::size_t r) { return r >= 2 && is_power_of_two(r) && r <= kMaxResolution; };
  if (!ok(config.min_resolution) || !ok(config.max_resolution) ||
      config.min_resolution > config.max_resolution) {
    throw Error(ErrorCode::InvalidArgument,
                "pyramid resolutions must be powers of two in [2, " + std::to_string(kMaxResolution) +
                    "] with min <= max");
  }
}

std::vector<std::size_t> level_resolutions(const PyramidConfig& config) {
  validate(config);
  std::vector<std::size_t> out;
  for (std::size_t r = config.min_resolution; r <= config.max_resolution; r *= 2) out.push_back(r);
  return out;
}

HeatmapLevel bin(std::span<const Point> points, std::size_t resolution) {
  if (resolution < 2 || !is_power_of_two(resolution)) {
    throw Error(ErrorCode::InvalidArgument, "resolution must be a power of two >= 2");
  }
  HeatmapLevel level{resolution, HeatmapKind::Counts, std::vector<double>(resolution * resolution, 0.0)};
  const double scale = static_cast<double>(resolution);
  const std::size_t last = resolution - 1;
  for (const auto& p : points) {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "binned coordinates must lie in [0,1]");
    }
    const auto i = std::min(static_cast<std::size_t>(p.x * scale), last);
    const auto j = std::min(static_cast<std::size_t>(p.y * scale), last);
    level.cells[i * resolution + j] += 1.0;
  }
  return level;
}

HeatmapPyramid build_pyramid(const PointSet& ps, const PyramidConfig& config) {
  HeatmapPyramid pyramid{ps.spec.id, {}, ps.points.size()};
  for (const auto r : level_resolutions(config)) pyramid.levels.push_back(bin(ps.points, r));
  return pyramid;
}

HeatmapPyramid to_density(const HeatmapPyramid& pyramid) {
  if (pyramid.kind() != HeatmapKind::Counts) {
    throw Error(ErrorCode::InvalidArgument, "to_density expects a counts pyramid");
  }
  HeatmapPyramid out = pyramid;
  const double total = static_cast<double>(pyramid.point_count);
  for (auto& level : out.levels) {
    level.kind = HeatmapKind::Density;
    if (total > 0.0) {
      for (auto& c : level.cells) c /= total;
    }
  }
  return out;
}

HeatmapLevel block_downsample(const HeatmapLevel& level) {
  if (level.kind != HeatmapKind::Counts) {
    throw Error(ErrorCode::InvalidArgument, "block_downsample expects a counts level");
  }
  if (level.resolution <= 2) {
    throw Error(ErrorCode::CannotDownsample, "cannot downsample a level at resolution 2");
  }
  const std::size_t half = level.resolution / 2;
  HeatmapLevel out{half, HeatmapKind::Counts, std::vector<double>(half * half, 0.0)};
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = 0; j < half; ++j) {
      out.at(i, j) = level.at(2 * i, 2 * j) + level.at(2 * i + 1, 2 * j) + level.at(2 * i, 2 * j + 1) +
                     level.at(2 * i + 1, 2 * j + 1);
    }
  }
  return out;
}

}  // namespace scatter
