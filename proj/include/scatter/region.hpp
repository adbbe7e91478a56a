#pragma once

#include <span>
#include <vector>

#include "scatter/point.hpp"

namespace scatter {

inline constexpr std::size_t kMaxRegionVertices = 4096;

/// Closed simple polygon in normalized [0,1]^2 space.
///
/// Construction drops a repeated closing vertex and consecutive duplicates,
/// then requires at least 3 vertices, all inside [0,1]^2, no
/// self-intersection and nonzero area. Violations throw InvalidRegion.
class Region {
 public:
  explicit Region(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  double area() const noexcept;

  /// Even-odd membership; points on an edge or vertex count as inside.
  bool contains(const Point& p) const noexcept;

 private:
  std::vector<Point> vertices_;
};

/// Twice the signed area (positive for counter-clockwise rings).
double signed_area2(std::span<const Point> ring) noexcept;

/// True when p lies on the closed segment [a, b].
bool on_segment(const Point& a, const Point& b, const Point& p) noexcept;

/// True when the closed segments [a, b] and [c, d] share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) noexcept;

}  // namespace scatter
