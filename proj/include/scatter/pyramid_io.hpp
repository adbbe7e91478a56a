#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "scatter/representation.hpp"

namespace scatter {

// Pyramid cache layout (all integers little-endian):
//
//   magic   "SQPYRMD1"                      8 bytes
//   count   u32                             number of pyramids
//   per pyramid:
//     id_len u32, id bytes (UTF-8)
//     point_count u64
//     kind u8                               0 = counts, 1 = density
//     level_count u32, resolutions u32[level_count]
//     per level, r*r row-major cells:       u32 for counts, IEEE f32 for density
//
// Counts round-trip exactly; density cells are narrowed to f32.

void write_pyramids(std::ostream& out, std::span<const HeatmapPyramid> pyramids);

/// Throws IoError on truncated or malformed input.
std::vector<HeatmapPyramid> read_pyramids(std::istream& in);

}  // namespace scatter
