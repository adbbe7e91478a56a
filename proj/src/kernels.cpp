#include "scatter/kernels.hpp"

#include <exception>

namespace scatter::kernels {

namespace {

// Runs body(i) for i in [0, n). Exceptions must not cross the OpenMP
// region, so the first one is captured and rethrown afterwards.
template <typename Body>
void for_each_index(std::size_t n, Execution execution, Body&& body) {
  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(scatter_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double mld_from(const HeatmapPyramid& query, const HeatmapPyramid& candidate, const WeightSchedule& weights,
                std::size_t first_level, double partial) {
  for (std::size_t l = first_level; l < query.levels.size(); ++l) {
    partial += weighted_level_term(query, candidate, weights, l);
  }
  return partial;
}

}  // namespace

std::vector<double> mld_scan(const HeatmapPyramid& query, std::span<const HeatmapPyramid> candidates,
                             const WeightSchedule& weights, Execution execution) {
  for (const auto& c : candidates) check_compatible(query, c, weights);
  std::vector<double> out(candidates.size());
  for_each_index(candidates.size(), execution,
                 [&](std::size_t i) { out[i] = mld_from(query, candidates[i], weights, 0, 0.0); });
  return out;
}

std::vector<std::optional<double>> mld_scan_pruned(const HeatmapPyramid& query,
                                                   std::span<const HeatmapPyramid> candidates,
                                                   const WeightSchedule& weights, double threshold,
                                                   Execution execution) {
  for (const auto& c : candidates) check_compatible(query, c, weights);
  std::vector<std::optional<double>> out(candidates.size());
  for_each_index(candidates.size(), execution, [&](std::size_t i) {
    const double coarse = 0.0 + weighted_level_term(query, candidates[i], weights, 0);
    if (coarse > threshold) return;
    out[i] = mld_from(query, candidates[i], weights, 1, coarse);
  });
  return out;
}

std::vector<double> region_scan(std::span<const PointSet> plots, const Region& region, bool normalized,
                                Execution execution) {
  std::vector<double> out(plots.size());
  for_each_index(plots.size(), execution,
                 [&](std::size_t i) { out[i] = region_score(plots[i], region, normalized).value; });
  return out;
}

std::vector<PreprocessResult> prepare_plots(const Table& table, std::span<const ScatterplotSpec> specs,
                                            const PreprocessConfig& config, Execution execution) {
  validate(config);
  std::vector<PreprocessResult> out(specs.size());
  for_each_index(specs.size(), execution,
                 [&](std::size_t i) { out[i] = preprocess(materialize(table, specs[i]), config); });
  return out;
}

std::vector<HeatmapPyramid> build_pyramids(std::span<const PointSet> plots, const PyramidConfig& config,
                                           Execution execution) {
  validate(config);
  std::vector<HeatmapPyramid> out(plots.size());
  for_each_index(plots.size(), execution, [&](std::size_t i) { out[i] = build_pyramid(plots[i], config); });
  return out;
}

}  // namespace scatter::kernels
