#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "scatter/ingest.hpp"
#include "scatter/kernels.hpp"
#include "scatter/preprocess.hpp"
#include "scatter/region.hpp"
#include "scatter/representation.hpp"
#include "scatter/scoring.hpp"

namespace scatter {

struct PlotMeta {
  EmptyReason empty_reason = EmptyReason::None;
  std::size_t dropped_rows = 0;
  std::size_t clipped = 0;

  bool empty() const noexcept { return empty_reason != EmptyReason::None; }
  friend bool operator==(const PlotMeta&, const PlotMeta&) = default;
};

struct CollectionInfo {
  std::string id;
  std::string dataset_id;
  std::string table_name;
  PreprocessConfig preprocess;
  PyramidConfig pyramid;
};

/// Immutable set of candidate scatterplots with their preprocessed points
/// and counts pyramids. Scoring pyramids (density or counts, per the
/// pyramid config) are derived once at construction.
class Collection {
 public:
  Collection(CollectionInfo info, std::vector<ScatterplotSpec> specs, std::vector<PointSet> point_sets,
             std::vector<HeatmapPyramid> pyramids, std::vector<PlotMeta> meta);

  const CollectionInfo& info() const noexcept { return info_; }
  const std::string& id() const noexcept { return info_.id; }
  std::size_t size() const noexcept { return specs_.size(); }

  const std::vector<ScatterplotSpec>& specs() const noexcept { return specs_; }
  const std::vector<PointSet>& point_sets() const noexcept { return point_sets_; }
  /// Counts pyramids as built from the points.
  const std::vector<HeatmapPyramid>& pyramids() const noexcept { return pyramids_; }
  /// Pyramids MLD is evaluated on.
  const std::vector<HeatmapPyramid>& scoring_pyramids() const noexcept { return scoring_; }
  const std::vector<PlotMeta>& meta() const noexcept { return meta_; }

  std::optional<std::size_t> index_of(std::string_view spec_id) const;
  /// Throws NotFound.
  std::size_t require(std::string_view spec_id) const;

  /// Union of every nonempty plot's source extent.
  Extent collection_extent() const;

  /// Preprocesses and bins external points (data units) exactly like a
  /// member plot; returns the scoring-kind pyramid.
  HeatmapPyramid pyramid_for(const std::vector<Point>& raw_points) const;

 private:
  CollectionInfo info_;
  std::vector<ScatterplotSpec> specs_;
  std::vector<PointSet> point_sets_;
  std::vector<HeatmapPyramid> pyramids_;
  std::vector<HeatmapPyramid> scoring_;
  std::vector<PlotMeta> meta_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

struct BuildOptions {
  std::string id = "collection";
  std::string dataset_id;
  Execution execution = Execution::Parallel;
};

/// Materializes, preprocesses and bins every spec. Plots that end up empty
/// are kept with zero pyramids and flagged. Deterministic for fixed inputs.
Collection build_collection(const Table& table, std::vector<ScatterplotSpec> specs,
                            const PreprocessConfig& preprocess, const PyramidConfig& pyramid,
                            const BuildOptions& options = {});

struct RankedResult {
  std::string spec_id;
  Score score;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

struct RankedList {
  std::vector<RankedResult> results;
  bool pruning_active = false;
  std::size_t candidates = 0;  // plots considered (after self-exclusion)
  std::size_t pruned = 0;      // skipped by the coarse-level threshold
};

/// Similarity query by member plot id.
struct SpecRef {
  std::string id;
};
/// Similarity query by raw points in data units.
struct RawPoints {
  std::vector<Point> points;
};
using SimilarityQuery = std::variant<HeatmapPyramid, SpecRef, RawPoints>;

inline constexpr std::size_t kAllResults = std::numeric_limits<std::size_t>::max();

/// Top-k plots by ascending MLD (ties by ascending spec id). A member-plot
/// query excludes itself. Weights default to default_weights(levels).
RankedList query_similar(const Collection& collection, const SimilarityQuery& query, std::size_t k,
                         const std::optional<WeightSchedule>& weights = std::nullopt,
                         Execution execution = Execution::Parallel);

/// Like query_similar but candidates whose coarsest weighted term exceeds
/// `threshold` are dropped before finer levels are evaluated. An infinite
/// threshold reproduces query_similar exactly.
RankedList query_similar_pruned(const Collection& collection, const SimilarityQuery& query, std::size_t k,
                                const std::optional<WeightSchedule>& weights, double threshold,
                                Execution execution = Execution::Parallel);

/// Top-k plots by descending region_score (ties by ascending spec id).
RankedList query_region(const Collection& collection, const Region& region, std::size_t k,
                        bool normalized = false, Execution execution = Execution::Parallel);

}  // namespace scatter
