#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scatter/ingest.hpp"

namespace scatter {

/// Axis ranges in data units.
struct Extent {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  friend bool operator==(const Extent&, const Extent&) = default;
};

/// Throws InvalidArgument unless x_min <= x_max and y_min <= y_max (all finite).
void validate(const Extent& extent);

/// Bounding box of the points; all zeros for an empty set.
Extent extent_of(const std::vector<Point>& points);

/// Smallest extent containing both.
Extent merge(const Extent& a, const Extent& b);

/// A scatterplot in normalized [0,1]^2 coordinates, ready for binning.
struct PointSet {
  ScatterplotSpec spec;
  std::vector<Point> points;
  Extent source_extent;
  std::size_t n_before_sampling = 0;

  bool empty() const noexcept { return points.empty(); }
};

struct PreprocessConfig {
  double clip_low = 1.0;    // percentile
  double clip_high = 99.0;  // percentile
  std::size_t sample_cap = 10000;
  std::uint64_t seed = 0;
  std::optional<Extent> shared_extent;

  friend bool operator==(const PreprocessConfig&, const PreprocessConfig&) = default;
};

/// Throws InvalidArgument unless 0 <= clip_low < clip_high <= 100 and sample_cap >= 1.
void validate(const PreprocessConfig& config);

/// Percentile of an ascending range by linear interpolation between order
/// statistics (rank p/100 * (n-1)). `sorted` must be nonempty.
double percentile(const std::vector<double>& sorted, double p);

/// Keeps points whose x and y both lie inside their axis' [low, high]
/// percentile interval; order is preserved. Throws EmptyAfterClip when
/// nothing survives and InvalidArgument on empty input.
RawPointSet clip_outliers(const RawPointSet& raw, double clip_low, double clip_high);

/// Maps to [0,1]^2 from the shared extent (clamping) or from the set's own
/// bounding box. A degenerate axis maps every coordinate to 0.5.
PointSet normalize(const RawPointSet& raw, const std::optional<Extent>& shared_extent = std::nullopt);

/// Uniform sample without replacement of at most `cap` points, preserving
/// input order; deterministic for a given seed.
PointSet sample(const PointSet& ps, std::size_t cap, std::uint64_t seed);

/// Why a plot carries no points after preprocessing.
enum class EmptyReason { None, NoRows, EmptyAfterClip };

struct PreprocessResult {
  PointSet points;
  EmptyReason empty_reason = EmptyReason::None;
  std::size_t clipped = 0;       // points removed as outliers
  std::size_t dropped_rows = 0;  // rows without finite coordinates
};

/// clip -> normalize -> sample. Empty inputs and empty clip results produce
/// an empty PointSet with the reason recorded instead of throwing.
PreprocessResult preprocess(const RawPointSet& raw, const PreprocessConfig& config);

}  // namespace scatter
