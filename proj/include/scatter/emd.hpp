#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "scatter/representation.hpp"

namespace scatter {

/// Largest grid the exact transport solver accepts.
inline constexpr std::size_t kEmdMaxResolution = 16;

/// Minimum total cost of moving `supply` onto `demand` where moving one
/// unit from source i to sink j costs cost(i, j) >= 0. Both sides must have
/// the same positive total (they are rescaled to 1 internally, so the
/// result is per unit of mass). Solved to optimality by successive shortest
/// augmenting paths with node potentials.
double min_cost_transport(std::span<const double> supply, std::span<const double> demand,
                          const std::function<double(std::size_t, std::size_t)>& cost);

/// Exact earth mover's distance between two density levels with Euclidean
/// ground distance between cell centres in normalized units.
///
/// Throws InvalidArgument for counts input, IncompatibleLevel when the
/// resolutions differ, OracleScale above kEmdMaxResolution and
/// UndefinedDistribution when either level carries no mass.
double emd_exact(const HeatmapLevel& a, const HeatmapLevel& b);

}  // namespace scatter
