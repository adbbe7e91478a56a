#include "scatter/region.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/error.hpp"

namespace scatter {

namespace {

double cross(const Point& o, const Point& a, const Point& b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

bool within_box(const Point& a, const Point& b, const Point& p) noexcept {
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
         p.y <= std::max(a.y, b.y);
}

constexpr double kMinArea2 = 1e-14;

}  // namespace

double signed_area2(std::span<const Point> ring) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    acc += a.x * b.y - b.x * a.y;
  }
  return acc;
}

bool on_segment(const Point& a, const Point& b, const Point& p) noexcept {
  return cross(a, b, p) == 0.0 && within_box(a, b, p);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) noexcept {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return (d1 == 0 && within_box(c, d, a)) || (d2 == 0 && within_box(c, d, b)) ||
         (d3 == 0 && within_box(a, b, c)) || (d4 == 0 && within_box(a, b, d));
}

Region::Region(std::vector<Point> vertices) {
  for (const auto& v : vertices) {
    if (!(v.x >= 0.0 && v.x <= 1.0 && v.y >= 0.0 && v.y <= 1.0)) {
      throw Error(ErrorCode::InvalidRegion, "region vertices must lie in [0,1]^2");
    }
    if (vertices_.empty() || !(vertices_.back() == v)) vertices_.push_back(v);
  }
  while (vertices_.size() > 1 && vertices_.back() == vertices_.front()) vertices_.pop_back();

  const std::size_t n = vertices_.size();
  if (n < 3) throw Error(ErrorCode::InvalidRegion, "region needs at least 3 distinct vertices");
  if (n > kMaxRegionVertices) {
    throw Error(ErrorCode::InvalidRegion,
                "region has more than " + std::to_string(kMaxRegionVertices) + " vertices");
  }
  if (std::abs(signed_area2(vertices_)) <= kMinArea2) {
    throw Error(ErrorCode::InvalidRegion, "region has zero area");
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& c = vertices_[j];
      const auto& d = vertices_[(j + 1) % n];
      const bool next = j == i + 1;            // edges share b == c
      const bool wrap = i == 0 && j == n - 1;  // edges share a == d
      bool bad = false;
      if (next) {
        bad = on_segment(a, b, d) || on_segment(c, d, a);
      } else if (wrap) {
        bad = on_segment(a, b, c) || on_segment(c, d, b);
      } else {
        bad = segments_intersect(a, b, c, d);
      }
      if (bad) throw Error(ErrorCode::InvalidRegion, "region polygon is self-intersecting");
    }
  }
}

double Region::area() const noexcept { return std::abs(signed_area2(vertices_)) / 2.0; }

bool Region::contains(const Point& p) const noexcept {
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, k = n - 1; i < n; k = i++) {
    const auto& a = vertices_[k];
    const auto& b = vertices_[i];
    if (on_segment(a, b, p)) return true;
    // Half-open straddle test avoids double counting shared vertices.
    if ((a.y <= p.y) != (b.y <= p.y)) {
      const double c = cross(a, b, p);
      if ((c > 0.0) == (b.y > a.y)) inside = !inside;
    }
  }
  return inside;
}

}  // namespace scatter
