#pragma once

#include <filesystem>

#include "scatter/query_engine.hpp"

namespace scatter {

// A collection directory holds
//   manifest.json  specs, effective configs and per-plot facts
//   pyramids.bin   counts pyramids (see pyramid_io.hpp)
//   points.bin     preprocessed points:
//                    magic "SQPNTS01", u32 count, then per plot:
//                    u32 id_len, id, u64 n_before_sampling,
//                    f64 x_min x_max y_min y_max, u64 n, n * (f64 x, f64 y)
// Integers and IEEE doubles are little-endian.

void save_collection(const Collection& collection, const std::filesystem::path& dir);

/// Throws IoError for missing or inconsistent files.
Collection load_collection(const std::filesystem::path& dir);

}  // namespace scatter
