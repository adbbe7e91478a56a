#include "scatter/json_codec.hpp"

#include <cmath>

namespace scatter {

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::InvalidArgument, message); }

double number_field(const Json& json, const char* key) {
  const auto& v = json.at(key);
  if (!v.is_number()) bad(std::string("'") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(std::string("'") + key + "' must be finite");
  return d;
}

std::uint64_t unsigned_field(const Json& json, const char* key) {
  const auto& v = json.at(key);
  if (!v.is_number_unsigned()) bad(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Point point_from_json(const Json& p, ErrorCode code) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
    throw Error(code, "points must be [x, y] number pairs");
  }
  return {p[0].get<double>(), p[1].get<double>()};
}

}  // namespace

std::string_view to_string(EmptyReason reason) noexcept {
  switch (reason) {
    case EmptyReason::None: return "none";
    case EmptyReason::NoRows: return "no-rows";
    case EmptyReason::EmptyAfterClip: return "empty-after-clip";
  }
  return "none";
}

std::string_view to_string(ScoreDirection direction) noexcept {
  return direction == ScoreDirection::LowerIsBetter ? "lower-is-better" : "higher-is-better";
}

std::string_view to_string(HeatmapKind kind) noexcept {
  return kind == HeatmapKind::Counts ? "counts" : "density";
}

Json to_json(const AttributeCatalog& catalog) {
  Json measures = Json::array();
  for (const auto& m : catalog.measures) {
    measures.push_back({{"name", m.name}, {"min", m.min}, {"max", m.max}, {"missing", m.missing}});
  }
  Json categories = Json::array();
  for (const auto& c : catalog.categories) {
    Json entry = {{"name", c.name},
                  {"numeric", c.numeric},
                  {"distinct_count", c.values.size()}};
    // Value lists are omitted above the default cardinality limit.
    if (c.values.size() <= kDefaultMaxCategoryValues) entry["values"] = c.values;
    categories.push_back(std::move(entry));
  }
  return {{"measures", std::move(measures)}, {"categories", std::move(categories)}};
}

Json to_json(const ScatterplotSpec& spec) {
  Json j = {{"id", spec.id}, {"x_attr", spec.x_attr}, {"y_attr", spec.y_attr}};
  j["filter"] = spec.filter ? Json{{"attribute", spec.filter->attribute}, {"value", spec.filter->value}}
                            : Json(nullptr);
  return j;
}

Json to_json(const Extent& e) {
  return {{"x_min", e.x_min}, {"x_max", e.x_max}, {"y_min", e.y_min}, {"y_max", e.y_max}};
}

Json to_json(const PreprocessConfig& c) {
  Json j = {{"clip_low", c.clip_low},
            {"clip_high", c.clip_high},
            {"sample_cap", c.sample_cap},
            {"seed", c.seed}};
  j["shared_extent"] = c.shared_extent ? to_json(*c.shared_extent) : Json(nullptr);
  return j;
}

Json to_json(const PyramidConfig& c) {
  return {{"min_resolution", c.min_resolution},
          {"max_resolution", c.max_resolution},
          {"density", c.density}};
}

Json to_json(const HeatmapLevel& level) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < level.resolution; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < level.resolution; ++j) {
      if (level.kind == HeatmapKind::Counts) {
        row.push_back(static_cast<std::uint64_t>(level.at(i, j)));
      } else {
        row.push_back(level.at(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"resolution", level.resolution}, {"kind", to_string(level.kind)}, {"cells", std::move(rows)}};
}

Json to_json(const HeatmapPyramid& pyramid) {
  Json levels = Json::array();
  for (const auto& l : pyramid.levels) levels.push_back(to_json(l));
  return {{"spec_id", pyramid.spec_id},
          {"point_count", pyramid.point_count},
          {"kind", to_string(pyramid.kind())},
          {"empty", pyramid.empty()},
          {"levels", std::move(levels)}};
}

Json to_json(const Error& error) {
  Json body = {{"code", code_name(error.code())}, {"message", error.what()}};
  if (const auto* parse = dynamic_cast<const ParseError*>(&error)) {
    body["detail"] = {{"row", parse->row()}};
  }
  return {{"error", std::move(body)}};
}

Extent extent_from_json(const Json& json) {
  if (!json.is_object()) bad("extent must be an object");
  Extent e{number_field(json, "x_min"), number_field(json, "x_max"), number_field(json, "y_min"),
           number_field(json, "y_max")};
  validate(e);
  return e;
}

PreprocessConfig preprocess_config_from_json(const Json& json, PreprocessConfig base) {
  if (json.is_null()) return base;
  if (!json.is_object()) bad("preprocess config must be an object");
  if (json.contains("clip_low")) base.clip_low = number_field(json, "clip_low");
  if (json.contains("clip_high")) base.clip_high = number_field(json, "clip_high");
  if (json.contains("sample_cap")) base.sample_cap = unsigned_field(json, "sample_cap");
  if (json.contains("seed")) base.seed = unsigned_field(json, "seed");
  if (json.contains("shared_extent")) {
    const auto& e = json.at("shared_extent");
    if (e.is_null()) {
      base.shared_extent.reset();
    } else if (e.is_object()) {
      base.shared_extent = extent_from_json(e);
    } else if (!e.is_boolean()) {
      bad("'shared_extent' must be null, a boolean or an extent object");
    }
  }
  validate(base);
  return base;
}

PyramidConfig pyramid_config_from_json(const Json& json, PyramidConfig base) {
  if (json.is_null()) return base;
  if (!json.is_object()) bad("pyramid config must be an object");
  if (json.contains("min_resolution")) base.min_resolution = unsigned_field(json, "min_resolution");
  if (json.contains("max_resolution")) base.max_resolution = unsigned_field(json, "max_resolution");
  if (json.contains("density")) {
    if (!json.at("density").is_boolean()) bad("'density' must be a boolean");
    base.density = json.at("density").get<bool>();
  }
  validate(base);
  return base;
}

ScatterplotSpec spec_from_json(const Json& json) {
  if (!json.is_object() || !json.contains("x_attr") || !json.contains("y_attr")) bad("malformed plot spec");
  std::optional<CategoryFilter> filter;
  if (json.contains("filter") && !json.at("filter").is_null()) {
    const auto& f = json.at("filter");
    filter = CategoryFilter{f.at("attribute").get<std::string>(), f.at("value").get<std::string>()};
  }
  return make_spec(json.at("x_attr").get<std::string>(), json.at("y_attr").get<std::string>(),
                   std::move(filter));
}

WeightSchedule weights_from_json(const Json& json) {
  if (!json.is_array()) throw Error(ErrorCode::InvalidWeights, "weights must be an array of numbers");
  std::vector<double> w;
  for (const auto& v : json) {
    if (!v.is_number()) throw Error(ErrorCode::InvalidWeights, "weights must be an array of numbers");
    w.push_back(v.get<double>());
  }
  return WeightSchedule(std::move(w));
}

Region region_from_json(const Json& json) {
  const Json* ring = &json;
  if (json.is_object()) {
    if (json.value("type", "") != "Polygon" || !json.contains("coordinates")) {
      throw Error(ErrorCode::InvalidRegion, "expected a GeoJSON Polygon");
    }
    ring = &json.at("coordinates");
  }
  if (ring->is_array() && !ring->empty() && (*ring)[0].is_array() && !(*ring)[0].empty() &&
      (*ring)[0][0].is_array()) {
    ring = &(*ring)[0];  // outer ring of a GeoJSON coordinate list
  }
  if (!ring->is_array()) throw Error(ErrorCode::InvalidRegion, "polygon must be an array of [x, y] pairs");
  std::vector<Point> vertices;
  for (const auto& p : *ring) vertices.push_back(point_from_json(p, ErrorCode::InvalidRegion));
  return Region(std::move(vertices));
}

std::vector<Point> points_from_json(const Json& json) {
  if (!json.is_array()) bad("points must be an array of [x, y] pairs");
  std::vector<Point> points;
  points.reserve(json.size());
  for (const auto& p : json) points.push_back(point_from_json(p, ErrorCode::InvalidArgument));
  return points;
}

Json points_to_json(const std::vector<Point>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back({p.x, p.y});
  return out;
}

Json manifest_json(const Collection& c) {
  Json plots = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& ps = c.point_sets()[i];
    const auto& meta = c.meta()[i];
    Json plot = to_json(c.specs()[i]);
    plot["point_count"] = ps.points.size();
    plot["n_before_sampling"] = ps.n_before_sampling;
    plot["dropped_rows"] = meta.dropped_rows;
    plot["clipped"] = meta.clipped;
    plot["empty"] = meta.empty();
    plot["empty_reason"] = to_string(meta.empty_reason);
    plot["source_extent"] = to_json(ps.source_extent);
    plots.push_back(std::move(plot));
  }
  const auto& info = c.info();
  return {{"collection_id", info.id},
          {"dataset_id", info.dataset_id},
          {"table", info.table_name},
          {"plot_count", c.size()},
          {"preprocess", to_json(info.preprocess)},
          {"pyramid", to_json(info.pyramid)},
          {"resolutions", level_resolutions(info.pyramid)},
          {"collection_extent", to_json(c.collection_extent())},
          {"plots", std::move(plots)}};
}

}  // namespace scatter
