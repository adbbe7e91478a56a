#include "scatter/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>

#include "scatter/error.hpp"

namespace scatter {

void validate(const Extent& e) {
  const bool finite = std::isfinite(e.x_min) && std::isfinite(e.x_max) && std::isfinite(e.y_min) &&
                      std::isfinite(e.y_max);
  if (!finite || e.x_min > e.x_max || e.y_min > e.y_max) {
    throw Error(ErrorCode::InvalidArgument, "extent must satisfy min <= max on both axes");
  }
}

Extent extent_of(const std::vector<Point>& points) {
  if (points.empty()) return {};
  Extent e{points[0].x, points[0].x, points[0].y, points[0].y};
  for (const auto& p : points) {
    e.x_min = std::min(e.x_min, p.x);
    e.x_max = std::max(e.x_max, p.x);
    e.y_min = std::min(e.y_min, p.y);
    e.y_max = std::max(e.y_max, p.y);
  }
  return e;
}

Extent merge(const Extent& a, const Extent& b) {
  return {std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max), std::min(a.y_min, b.y_min),
          std::max(a.y_max, b.y_max)};
}

void validate(const PreprocessConfig& config) {
  if (!(config.clip_low >= 0.0 && config.clip_low < config.clip_high && config.clip_high <= 100.0)) {
    throw Error(ErrorCode::InvalidArgument, "clip percentiles must satisfy 0 <= low < high <= 100");
  }
  if (config.sample_cap < 1) throw Error(ErrorCode::InvalidArgument, "sample_cap must be >= 1");
  if (config.shared_extent) validate(*config.shared_extent);
}

double percentile(const std::vector<double>& sorted, double p) {
  const double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

RawPointSet clip_outliers(const RawPointSet& raw, double clip_low, double clip_high) {
  if (raw.points.empty()) throw Error(ErrorCode::InvalidArgument, "cannot clip an empty plot");

  std::vector<double> xs, ys;
  xs.reserve(raw.points.size());
  ys.reserve(raw.points.size());
  for (const auto& p : raw.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double x_lo = percentile(xs, clip_low), x_hi = percentile(xs, clip_high);
  const double y_lo = percentile(ys, clip_low), y_hi = percentile(ys, clip_high);

  RawPointSet out{raw.spec, {}, raw.dropped_rows};
  std::copy_if(raw.points.begin(), raw.points.end(), std::back_inserter(out.points), [&](const Point& p) {
    return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
  });
  if (out.points.empty()) {
    throw Error(ErrorCode::EmptyAfterClip, "no points of '" + raw.spec.id + "' survive clipping");
  }
  return out;
}

namespace {

double map_axis(double v, double lo, double hi) {
  if (!(hi > lo)) return 0.5;
  return std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
}

}  // namespace

PointSet normalize(const RawPointSet& raw, const std::optional<Extent>& shared_extent) {
  if (raw.points.empty()) throw Error(ErrorCode::InvalidArgument, "cannot normalize an empty plot");
  const Extent e = shared_extent ? *shared_extent : extent_of(raw.points);
  PointSet ps{raw.spec, {}, e, raw.points.size()};
  ps.points.reserve(raw.points.size());
  for (const auto& p : raw.points) {
    ps.points.push_back({map_axis(p.x, e.x_min, e.x_max), map_axis(p.y, e.y_min, e.y_max)});
  }
  return ps;
}

PointSet sample(const PointSet& ps, std::size_t cap, std::uint64_t seed) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "sample cap must be >= 1");
  PointSet out{ps.spec, {}, ps.source_extent, std::max(ps.n_before_sampling, ps.points.size())};
  if (ps.points.size() <= cap) {
    out.points = ps.points;
    return out;
  }
  std::mt19937_64 rng(seed);
  out.points.reserve(cap);
  std::sample(ps.points.begin(), ps.points.end(), std::back_inserter(out.points), cap, rng);
  return out;
}

PreprocessResult preprocess(const RawPointSet& raw, const PreprocessConfig& config) {
  validate(config);
  PreprocessResult result;
  result.points.spec = raw.spec;
  result.dropped_rows = raw.dropped_rows;
  if (raw.points.empty()) {
    result.empty_reason = EmptyReason::NoRows;
    if (config.shared_extent) result.points.source_extent = *config.shared_extent;
    return result;
  }
  RawPointSet clipped;
  try {
    clipped = clip_outliers(raw, config.clip_low, config.clip_high);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyAfterClip) throw;
    result.empty_reason = EmptyReason::EmptyAfterClip;
    result.clipped = raw.points.size();
    if (config.shared_extent) result.points.source_extent = *config.shared_extent;
    return result;
  }
  result.clipped = raw.points.size() - clipped.points.size();
  result.points = sample(normalize(clipped, config.shared_extent), config.sample_cap, config.seed);
  return result;
}

}  // namespace scatter
