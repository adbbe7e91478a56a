#pragma once

namespace scatter {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

}  // namespace scatter
