#include "scatter/scoring.hpp"

#include <cmath>
#include <numeric>

#include "scatter/error.hpp"

namespace scatter {

WeightSchedule::WeightSchedule(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidWeights, "weight schedule is empty");
  bool any_positive = false;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::InvalidWeights, "weights must be finite and non-negative");
    }
    if (i > 0 && w > weights_[i - 1]) {
      throw Error(ErrorCode::InvalidWeights, "weights must not increase from coarse to fine levels");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::InvalidWeights, "at least one weight must be positive");
}

WeightSchedule default_weights(std::size_t level_count) {
  if (level_count < 1) throw Error(ErrorCode::InvalidWeights, "level count must be >= 1");
  std::vector<double> w(level_count);
  double v = 1.0;
  for (auto& k : w) {
    k = v;
    v /= 2.0;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& k : w) k /= total;
  return WeightSchedule(std::move(w));
}

double level_distance(const HeatmapLevel& a, const HeatmapLevel& b) {
  if (a.resolution != b.resolution || a.kind != b.kind || a.cells.size() != b.cells.size()) {
    throw Error(ErrorCode::IncompatibleLevel, "levels differ in resolution or kind");
  }
  double acc = 0.0;
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    const double d = a.cells[c] - b.cells[c];
    acc += d * d;
  }
  return std::sqrt(acc) / static_cast<double>(a.resolution);
}

void check_compatible(const HeatmapPyramid& a, const HeatmapPyramid& b, const WeightSchedule& weights) {
  if (a.levels.size() != b.levels.size() || a.levels.size() != weights.size()) {
    throw Error(ErrorCode::IncompatiblePyramid,
                "pyramids have " + std::to_string(a.levels.size()) + " and " +
                    std::to_string(b.levels.size()) + " levels for " + std::to_string(weights.size()) +
                    " weights");
  }
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    if (a.levels[i].resolution != b.levels[i].resolution || a.levels[i].kind != b.levels[i].kind) {
      throw Error(ErrorCode::IncompatiblePyramid, "pyramid levels differ in resolution or kind");
    }
  }
}

double weighted_level_term(const HeatmapPyramid& a, const HeatmapPyramid& b, const WeightSchedule& weights,
                           std::size_t index) {
  return weights[index] * level_distance(a.levels[index], b.levels[index]);
}

Score mld(const HeatmapPyramid& a, const HeatmapPyramid& b, const WeightSchedule& weights) {
  check_compatible(a, b, weights);
  double total = 0.0;
  for (std::size_t i = 0; i < a.levels.size(); ++i) total += weighted_level_term(a, b, weights, i);
  return {total, ScoreDirection::LowerIsBetter};
}

Score region_score(const PointSet& ps, const Region& region, bool normalized) {
  std::size_t inside = 0;
  for (const auto& p : ps.points) inside += region.contains(p) ? 1 : 0;
  double value = static_cast<double>(inside);
  if (normalized) value = ps.points.empty() ? 0.0 : value / static_cast<double>(ps.points.size());
  return {value, ScoreDirection::HigherIsBetter};
}

}  // namespace scatter
