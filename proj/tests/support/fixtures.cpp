#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace fixtures {

std::string communities_csv(std::size_t measures, std::size_t rows, std::uint64_t seed) {
  static const char* kStates[] = {"CA", "NY", "TX", "WA", "OH", "NJ", "FL", "IL"};
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::ostringstream out;
  out << "state,region";
  for (std::size_t m = 0; m < measures; ++m) out << ",m" << std::setw(2) << std::setfill('0') << m;
  out << '\n' << std::setprecision(10);
  for (std::size_t r = 0; r < rows; ++r) {
    const double latent = noise(rng);
    out << kStates[r % 8] << ',' << (r % 4);
    for (std::size_t m = 0; m < measures; ++m) {
      out << ',';
      if (u(rng) < 0.01) {
        out << "?";
        continue;
      }
      const double mix = static_cast<double>(m % 5) / 4.0;
      double v = mix * latent + (1.0 - mix) * noise(rng);
      if (m % 3 == 1) v = std::exp(0.5 * v);  // skewed
      out << v * (1.0 + static_cast<double>(m));
    }
    out << '\n';
  }
  return out.str();
}

std::string ncaa_csv(std::size_t rows, std::uint64_t seed) {
  static const char* kTypes[] = {"dunk", "hook", "jump", "layup", "tip"};
  static const double kRange[] = {2.0, 8.0, 24.0, 4.0, 3.0};
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::ostringstream out;
  out << "shot_type,period,x,y,distance,made\n" << std::setprecision(8);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = r % 5;
    const double angle = u(rng) * 3.14159265358979;
    const double dist = u(rng) * kRange[t];
    const double x = 25.0 + dist * std::cos(angle);
    const double y = 5.0 + dist * std::sin(angle);
    out << kTypes[t] << ',' << (1 + r % 2) << ',' << x << ',' << y << ',' << dist << ','
        << (u(rng) < 0.6 - dist / 60.0 ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<scatter::Point> uniform_points(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<scatter::Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  if (n >= 4 && rng() % 3 == 0) {
    pts[0] = {0.0, 0.0};
    pts[1] = {1.0, 1.0};
    pts[2] = {1.0, 0.0};
    pts[3] = {0.5, 1.0};
  }
  return pts;
}

std::vector<scatter::Point> gaussian_cluster(Rng& rng, std::size_t n, double cx, double cy, double sigma) {
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<scatter::Point> pts(n);
  for (auto& p : pts) {
    p = {std::clamp(cx + g(rng), 0.0, 1.0), std::clamp(cy + g(rng), 0.0, 1.0)};
  }
  return pts;
}

scatter::PointSet point_set(std::vector<scatter::Point> points, std::string id) {
  scatter::PointSet ps;
  ps.spec.id = std::move(id);
  ps.n_before_sampling = points.size();
  ps.points = std::move(points);
  return ps;
}

scatter::HeatmapPyramid random_density_pyramid(Rng& rng, std::size_t min_res, std::size_t max_res,
                                               std::size_t max_points) {
  const std::size_t n = 1 + rng() % max_points;
  std::vector<scatter::Point> pts;
  if (rng() % 2 == 0) {
    pts = uniform_points(rng, n);
  } else {
    std::uniform_real_distribution<double> u(0.1, 0.9);
    pts = gaussian_cluster(rng, n, u(rng), u(rng), 0.05 + 0.2 * u(rng));
  }
  const auto ps = point_set(std::move(pts));
  return scatter::to_density(scatter::build_pyramid(ps, {min_res, max_res, true}));
}

std::vector<scatter::Point> star_polygon(Rng& rng, std::size_t vertices, double grid) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double cx = 0.3 + 0.4 * u(rng);
  const double cy = 0.3 + 0.4 * u(rng);
  std::vector<double> angles(vertices);
  for (auto& a : angles) a = u(rng) * 2.0 * 3.14159265358979;
  std::sort(angles.begin(), angles.end());
  const auto snap = [grid](double v) { return std::round(std::clamp(v, 0.0, 1.0) * grid) / grid; };
  std::vector<scatter::Point> ring;
  for (const double a : angles) {
    const double radius = 0.05 + 0.3 * u(rng);
    ring.push_back({snap(cx + radius * std::cos(a)), snap(cy + radius * std::sin(a))});
  }
  return ring;
}

std::vector<scatter::Point> grid_points(Rng& rng, std::size_t n, double grid) {
  std::uniform_int_distribution<int> k(0, static_cast<int>(grid));
  std::vector<scatter::Point> pts(n);
  for (auto& p : pts) p = {k(rng) / grid, k(rng) / grid};
  return pts;
}

scatter::HeatmapLevel random_density_level(Rng& rng, std::size_t resolution) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  scatter::HeatmapLevel level{resolution, scatter::HeatmapKind::Density,
                              std::vector<double>(resolution * resolution, 0.0)};
  double total = 0.0;
  for (auto& c : level.cells) {
    if (u(rng) < 0.3) continue;
    c = u(rng);
    total += c;
  }
  if (total == 0.0) {
    level.cells[rng() % level.cells.size()] = 1.0;
    total = 1.0;
  }
  for (auto& c : level.cells) c /= total;
  return level;
}

}  // namespace fixtures
