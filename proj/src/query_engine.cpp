#include "scatter/query_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scatter/error.hpp"

namespace scatter {

Collection::Collection(CollectionInfo info, std::vector<ScatterplotSpec> specs, std::vector<PointSet> point_sets,
                       std::vector<HeatmapPyramid> pyramids, std::vector<PlotMeta> meta)
    : info_(std::move(info)),
      specs_(std::move(specs)),
      point_sets_(std::move(point_sets)),
      pyramids_(std::move(pyramids)),
      meta_(std::move(meta)) {
  validate(info_.preprocess);
  const auto resolutions = level_resolutions(info_.pyramid);
  if (specs_.empty()) throw Error(ErrorCode::InvalidArgument, "a collection needs at least one plot");
  if (point_sets_.size() != specs_.size() || pyramids_.size() != specs_.size() || meta_.size() != specs_.size()) {
    throw Error(ErrorCode::InvalidArgument, "collection caches do not match its spec list");
  }
  by_id_.reserve(specs_.size());
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (!by_id_.emplace(specs_[i].id, i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate plot id '" + specs_[i].id + "'");
    }
    if (point_sets_[i].spec.id != specs_[i].id || pyramids_[i].spec_id != specs_[i].id) {
      throw Error(ErrorCode::InvalidArgument, "cache entry does not belong to plot '" + specs_[i].id + "'");
    }
    if (pyramids_[i].kind() != HeatmapKind::Counts || pyramids_[i].resolutions() != resolutions ||
        pyramids_[i].point_count != point_sets_[i].points.size()) {
      throw Error(ErrorCode::IncompatiblePyramid,
                  "pyramid of '" + specs_[i].id + "' does not match the collection configuration");
    }
  }
  scoring_.reserve(pyramids_.size());
  for (const auto& p : pyramids_) scoring_.push_back(info_.pyramid.density ? to_density(p) : p);
}

std::optional<std::size_t> Collection::index_of(std::string_view spec_id) const {
  const auto it = by_id_.find(std::string(spec_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t Collection::require(std::string_view spec_id) const {
  if (const auto i = index_of(spec_id)) return *i;
  throw Error(ErrorCode::NotFound, "no plot '" + std::string(spec_id) + "' in collection '" + info_.id + "'");
}

Extent Collection::collection_extent() const {
  std::optional<Extent> acc;
  for (std::size_t i = 0; i < size(); ++i) {
    if (meta_[i].empty()) continue;
    acc = acc ? merge(*acc, point_sets_[i].source_extent) : point_sets_[i].source_extent;
  }
  return acc.value_or(Extent{});
}

HeatmapPyramid Collection::pyramid_for(const std::vector<Point>& raw_points) const {
  RawPointSet raw{make_spec("query:x", "query:y"), {}, 0};
  for (const auto& p : raw_points) {
    if (std::isfinite(p.x) && std::isfinite(p.y)) {
      raw.points.push_back(p);
    } else {
      ++raw.dropped_rows;
    }
  }
  if (raw.points.empty()) throw Error(ErrorCode::InvalidArgument, "query has no finite points");
  const auto prepared = preprocess(raw, info_.preprocess);
  if (prepared.empty_reason != EmptyReason::None) {
    throw Error(ErrorCode::EmptyAfterClip, "no query points survive preprocessing");
  }
  auto counts = build_pyramid(prepared.points, info_.pyramid);
  return info_.pyramid.density ? to_density(counts) : counts;
}

Collection build_collection(const Table& table, std::vector<ScatterplotSpec> specs,
                            const PreprocessConfig& preprocess_config, const PyramidConfig& pyramid_config,
                            const BuildOptions& options) {
  if (specs.empty()) throw Error(ErrorCode::InvalidArgument, "a collection needs at least one plot");
  validate(preprocess_config);
  validate(pyramid_config);

  auto prepared = kernels::prepare_plots(table, specs, preprocess_config, options.execution);
  std::vector<PointSet> point_sets;
  std::vector<PlotMeta> meta;
  point_sets.reserve(prepared.size());
  meta.reserve(prepared.size());
  for (auto& p : prepared) {
    point_sets.push_back(std::move(p.points));
    meta.push_back({p.empty_reason, p.dropped_rows, p.clipped});
  }
  auto pyramids = kernels::build_pyramids(point_sets, pyramid_config, options.execution);

  CollectionInfo info{options.id, options.dataset_id, table.name(), preprocess_config, pyramid_config};
  return Collection(std::move(info), std::move(specs), std::move(point_sets), std::move(pyramids),
                    std::move(meta));
}

namespace {

void require_k(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
}

struct Candidate {
  std::size_t index;
  double score;
};

RankedList rank(const Collection& c, std::vector<Candidate> candidates, std::size_t k, ScoreDirection direction) {
  const auto& specs = c.specs();
  const auto better = [&](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) {
      return direction == ScoreDirection::LowerIsBetter ? a.score < b.score : a.score > b.score;
    }
    return specs[a.index].id < specs[b.index].id;
  };
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), better);
  RankedList list;
  list.results.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    list.results.push_back({specs[candidates[r].index].id, {candidates[r].score, direction}, r + 1});
  }
  return list;
}

// Resolves the query to a scoring pyramid; `exclude` is set for member queries.
HeatmapPyramid resolve(const Collection& c, const SimilarityQuery& query, std::optional<std::size_t>& exclude) {
  exclude.reset();
  if (const auto* ref = std::get_if<SpecRef>(&query)) {
    const auto index = c.require(ref->id);
    exclude = index;
    return c.scoring_pyramids()[index];
  }
  if (const auto* raw = std::get_if<RawPoints>(&query)) return c.pyramid_for(raw->points);

  const auto& pyramid = std::get<HeatmapPyramid>(query);
  if (pyramid.resolutions() != level_resolutions(c.info().pyramid)) {
    throw Error(ErrorCode::IncompatiblePyramid, "query pyramid resolutions do not match the collection");
  }
  if (c.info().pyramid.density && pyramid.kind() == HeatmapKind::Counts) return to_density(pyramid);
  if (!c.info().pyramid.density && pyramid.kind() == HeatmapKind::Density) {
    throw Error(ErrorCode::IncompatiblePyramid, "collection scores counts but the query is a density pyramid");
  }
  return pyramid;
}

RankedList similar(const Collection& c, const SimilarityQuery& query, std::size_t k,
                   const std::optional<WeightSchedule>& weights, std::optional<double> threshold,
                   Execution execution) {
  require_k(k);
  if (threshold && (std::isnan(*threshold) || *threshold < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "prune threshold must be >= 0");
  }
  std::optional<std::size_t> exclude;
  const auto query_pyramid = resolve(c, query, exclude);
  const auto schedule = weights ? *weights : default_weights(query_pyramid.levels.size());
  const auto& pool = c.scoring_pyramids();

  // The member itself is scored with the rest and dropped afterwards.
  std::vector<std::optional<double>> scores;
  if (threshold) {
    scores = kernels::mld_scan_pruned(query_pyramid, pool, schedule, *threshold, execution);
  } else {
    const auto full = kernels::mld_scan(query_pyramid, pool, schedule, execution);
    scores.assign(full.begin(), full.end());
  }

  std::vector<Candidate> candidates;
  candidates.reserve(pool.size());
  std::size_t pruned = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (exclude && *exclude == i) continue;
    if (scores[i]) {
      candidates.push_back({i, *scores[i]});
    } else {
      ++pruned;
    }
  }
  auto list = rank(c, std::move(candidates), k, ScoreDirection::LowerIsBetter);
  list.candidates = pool.size() - (exclude ? 1 : 0);
  list.pruned = pruned;
  list.pruning_active = threshold.has_value() && std::isfinite(*threshold);
  return list;
}

}  // namespace

RankedList query_similar(const Collection& collection, const SimilarityQuery& query, std::size_t k,
                         const std::optional<WeightSchedule>& weights, Execution execution) {
  return similar(collection, query, k, weights, std::nullopt, execution);
}

RankedList query_similar_pruned(const Collection& collection, const SimilarityQuery& query, std::size_t k,
                                const std::optional<WeightSchedule>& weights, double threshold,
                                Execution execution) {
  return similar(collection, query, k, weights, threshold, execution);
}

RankedList query_region(const Collection& collection, const Region& region, std::size_t k, bool normalized,
                        Execution execution) {
  require_k(k);
  const auto scores = kernels::region_scan(collection.point_sets(), region, normalized, execution);
  std::vector<Candidate> candidates;
  candidates.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) candidates.push_back({i, scores[i]});
  auto list = rank(collection, std::move(candidates), k, ScoreDirection::HigherIsBetter);
  list.candidates = collection.size();
  return list;
}

}  // namespace scatter
