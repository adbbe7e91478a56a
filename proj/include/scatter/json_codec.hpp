#pragma once

#include <json.hpp>

#include "scatter/error.hpp"
#include "scatter/ingest.hpp"
#include "scatter/preprocess.hpp"
#include "scatter/query_engine.hpp"
#include "scatter/region.hpp"
#include "scatter/representation.hpp"
#include "scatter/scoring.hpp"

namespace scatter {

/// Insertion-ordered so serialized output is stable and readable.
using Json = nlohmann::ordered_json;

Json to_json(const AttributeCatalog& catalog);
Json to_json(const ScatterplotSpec& spec);
Json to_json(const Extent& extent);
Json to_json(const PreprocessConfig& config);
Json to_json(const PyramidConfig& config);
Json to_json(const HeatmapLevel& level);
Json to_json(const HeatmapPyramid& pyramid);
Json to_json(const Error& error);

std::string_view to_string(EmptyReason reason) noexcept;
std::string_view to_string(ScoreDirection direction) noexcept;
std::string_view to_string(HeatmapKind kind) noexcept;

// Readers throw InvalidArgument (or InvalidRegion / InvalidWeights) on
// malformed input. Config readers overlay the fields present in `json`
// onto `base`.
Extent extent_from_json(const Json& json);
PreprocessConfig preprocess_config_from_json(const Json& json, PreprocessConfig base);
PyramidConfig pyramid_config_from_json(const Json& json, PyramidConfig base);
ScatterplotSpec spec_from_json(const Json& json);
WeightSchedule weights_from_json(const Json& json);

/// Accepts a GeoJSON Polygon object (outer ring only), a bare ring
/// [[x,y],...] or a ring wrapped once more [[[x,y],...]]. Coordinates are
/// normalized [0,1] with y growing upward.
Region region_from_json(const Json& json);

/// [[x,y],...] in data units.
std::vector<Point> points_from_json(const Json& json);
Json points_to_json(const std::vector<Point>& points);

/// Collection description: identity, effective configs and per-plot facts.
Json manifest_json(const Collection& collection);

}  // namespace scatter
