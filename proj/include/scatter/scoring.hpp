#pragma once

#include <cstddef>
#include <vector>

#include "scatter/preprocess.hpp"
#include "scatter/region.hpp"
#include "scatter/representation.hpp"

namespace scatter {

enum class ScoreDirection { LowerIsBetter, HigherIsBetter };

struct Score {
  double value = 0.0;
  ScoreDirection direction = ScoreDirection::LowerIsBetter;

  friend bool operator==(const Score&, const Score&) = default;
};

/// Per-level weights k_1..k_L aligned coarse to fine. Construction requires
/// finite non-negative entries, at least one positive, in non-increasing
/// order; violations throw InvalidWeights.
class WeightSchedule {
 public:
  explicit WeightSchedule(std::vector<double> weights);

  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  friend bool operator==(const WeightSchedule&, const WeightSchedule&) = default;

 private:
  std::vector<double> weights_;
};

/// k_i proportional to 2^-(i-1), normalized to sum 1.
WeightSchedule default_weights(std::size_t level_count);

/// Euclidean distance between two grids divided by their resolution, so
/// levels of different size report comparable magnitudes. Throws
/// IncompatibleLevel when resolution or kind differ.
double level_distance(const HeatmapLevel& a, const HeatmapLevel& b);

/// Multi-level distance: sum_i k_i * level_distance(a_i, b_i), lower is
/// better. Throws IncompatiblePyramid when level resolutions or kinds
/// differ or the schedule length does not match.
Score mld(const HeatmapPyramid& a, const HeatmapPyramid& b, const WeightSchedule& weights);

/// Throws IncompatiblePyramid unless a and b can be compared under `weights`.
void check_compatible(const HeatmapPyramid& a, const HeatmapPyramid& b, const WeightSchedule& weights);

/// Weighted term of level `index` alone (no compatibility checks).
double weighted_level_term(const HeatmapPyramid& a, const HeatmapPyramid& b, const WeightSchedule& weights,
                           std::size_t index);

/// Number of points inside the region (boundary inclusive). When
/// `normalized` the count is divided by the plot size; empty plots score 0.
Score region_score(const PointSet& ps, const Region& region, bool normalized = false);

}  // namespace scatter
