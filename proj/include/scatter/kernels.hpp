#pragma once

#include <optional>
#include <span>
#include <vector>

#include "scatter/ingest.hpp"
#include "scatter/preprocess.hpp"
#include "scatter/representation.hpp"
#include "scatter/scoring.hpp"

namespace scatter {

/// Serial is the reference path; Parallel splits candidates across OpenMP
/// threads. Every kernel computes each candidate's value with the same
/// arithmetic on both paths, so results are bitwise identical.
enum class Execution { Serial, Parallel };

namespace kernels {

/// MLD between the query and every candidate. All candidates must be
/// compatible with the query under `weights` (IncompatiblePyramid otherwise).
std::vector<double> mld_scan(const HeatmapPyramid& query, std::span<const HeatmapPyramid> candidates,
                             const WeightSchedule& weights, Execution execution);

/// Coarse-to-fine scan: a candidate whose first weighted term exceeds
/// `threshold` is skipped (nullopt) before finer levels are touched.
/// Survivors carry exactly the value mld_scan would report.
std::vector<std::optional<double>> mld_scan_pruned(const HeatmapPyramid& query,
                                                   std::span<const HeatmapPyramid> candidates,
                                                   const WeightSchedule& weights, double threshold,
                                                   Execution execution);

/// region_score of every plot.
std::vector<double> region_scan(std::span<const PointSet> plots, const Region& region, bool normalized,
                                Execution execution);

/// materialize + preprocess for every spec.
std::vector<PreprocessResult> prepare_plots(const Table& table, std::span<const ScatterplotSpec> specs,
                                            const PreprocessConfig& config, Execution execution);

/// build_pyramid of every plot (counts kind).
std::vector<HeatmapPyramid> build_pyramids(std::span<const PointSet> plots, const PyramidConfig& config,
                                           Execution execution);

}  // namespace kernels
}  // namespace scatter
