#include "scatter/api.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

namespace scatter::api {

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::InvalidArgument, message); }

std::size_t size_field(const Json& json, const char* key, std::size_t fallback) {
  if (!json.contains(key)) return fallback;
  const auto& v = json.at(key);
  if (!v.is_number_unsigned()) bad(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string string_field(const Json& json, const char* key) {
  if (!json.contains(key) || !json.at(key).is_string()) bad(std::string("'") + key + "' must be a string");
  return json.at(key).get<std::string>();
}

std::size_t parse_k(const Json& request, std::size_t fallback) {
  if (!request.contains("k")) return fallback;
  const auto& k = request.at("k");
  if (k.is_string() && k.get<std::string>() == "all") return kAllResults;
  if (!k.is_number_unsigned() || k.get<std::size_t>() < 1) bad("'k' must be a positive integer or \"all\"");
  return k.get<std::size_t>();
}

Json k_json(std::size_t k) { return k == kAllResults ? Json("all") : Json(k); }

// Extent covering every row that could appear in a category split of
// (x, y), clipped like a plot so outliers do not stretch the shared axes.
Extent shared_extent_for(const Table& table, const std::string& x, const std::string& y,
                         const PreprocessConfig& config) {
  const auto raw = materialize(table, make_spec(x, y));
  if (raw.empty()) bad("no rows with finite '" + x + "' and '" + y + "' values");
  try {
    return extent_of(clip_outliers(raw, config.clip_low, config.clip_high).points);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyAfterClip) throw;
    return extent_of(raw.points);
  }
}

Json preview_json(const PointSet& ps, const Limits& limits) {
  Json preview;
  preview["point_count"] = ps.points.size();
  preview["empty"] = ps.points.empty();
  preview["source_extent"] = to_json(ps.source_extent);
  preview["heatmap"] = to_json(bin(ps, limits.preview_resolution));
  std::vector<Point> shown;
  if (ps.points.size() <= limits.preview_points) {
    shown = ps.points;
  } else {
    std::mt19937_64 rng(0);
    std::sample(ps.points.begin(), ps.points.end(), std::back_inserter(shown), limits.preview_points, rng);
  }
  preview["points"] = points_to_json(shown);
  return preview;
}

}  // namespace

ServiceConfig service_config_from_json(const Json& json) {
  ServiceConfig config;
  if (json.is_null()) return config;
  if (!json.is_object()) bad("service config must be a JSON object");
  if (json.contains("host")) config.host = string_field(json, "host");
  if (json.contains("port")) {
    const auto port = size_field(json, "port", 0);
    if (port > 65535) bad("'port' must be in [0, 65535]");
    config.port = static_cast<int>(port);
  }
  if (json.contains("data_dir")) config.data_dir = string_field(json, "data_dir");
  if (json.contains("defaults")) {
    const auto& d = json.at("defaults");
    config.defaults.preprocess = preprocess_config_from_json(d.value("preprocess", Json()), config.defaults.preprocess);
    config.defaults.pyramid = pyramid_config_from_json(d.value("pyramid", Json()), config.defaults.pyramid);
    config.defaults.k = parse_k(d, config.defaults.k);
  }
  if (json.contains("limits")) {
    const auto& l = json.at("limits");
    auto& limits = config.limits;
    limits.max_specs = size_field(l, "max_specs", limits.max_specs);
    limits.max_category_values = size_field(l, "max_category_values", limits.max_category_values);
    limits.categorical_threshold = size_field(l, "categorical_threshold", limits.categorical_threshold);
    limits.max_body_bytes = size_field(l, "max_body_bytes", limits.max_body_bytes);
    limits.preview_resolution = size_field(l, "preview_resolution", limits.preview_resolution);
    limits.preview_points = size_field(l, "preview_points", limits.preview_points);
    if (limits.preview_resolution < 2 || !is_power_of_two(limits.preview_resolution)) {
      bad("'preview_resolution' must be a power of two >= 2");
    }
  }
  return config;
}

ServiceConfig load_service_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
  Json json;
  try {
    json = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return service_config_from_json(json);
}

ServiceConfig service_config_from_env() {
  const char* path = std::getenv(kConfigEnvVar);
  if (path == nullptr || *path == '\0') return {};
  return load_service_config(path);
}

std::string fingerprint(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
  return out;
}

Dataset make_dataset(std::string_view csv, const CsvFormat& format, std::string name, const Limits& limits) {
  std::string key = name;
  key.push_back('\0');
  key.push_back(format.delimiter);
  key.push_back(format.decimal_point);
  key.append(csv);
  auto table = std::make_shared<const Table>(load_table(csv, format, std::move(name)));
  ClassifyOptions options;
  options.categorical_threshold = limits.categorical_threshold;
  auto catalog = classify_attributes(*table, options);
  return {"ds-" + fingerprint(key), std::move(table), std::move(catalog)};
}

Json dataset_json(const Dataset& dataset) {
  return {{"dataset_id", dataset.id},
          {"name", dataset.table->name()},
          {"row_count", dataset.table->row_count()},
          {"column_count", dataset.table->columns().size()},
          {"catalog", to_json(dataset.catalog)}};
}

BuildPlan plan_collection(const Dataset& dataset, const Json& request, const ServiceConfig& config) {
  if (!request.is_object()) bad("collection request must be a JSON object");
  const auto& limits = config.limits;

  AttributeCatalog catalog = dataset.catalog;
  if (request.contains("overrides")) {
    const auto& o = request.at("overrides");
    if (!o.is_object()) bad("'overrides' must map column names to \"measure\" or \"category\"");
    ClassifyOptions options;
    options.categorical_threshold = limits.categorical_threshold;
    for (const auto& [name, kind] : o.items()) {
      const auto k = kind.is_string() ? kind.get<std::string>() : std::string();
      if (k == "measure") {
        options.overrides[name] = AttributeKind::Measure;
      } else if (k == "category") {
        options.overrides[name] = AttributeKind::Category;
      } else {
        bad("override for '" + name + "' must be \"measure\" or \"category\"");
      }
    }
    catalog = classify_attributes(*dataset.table, options);
  }

  BuildPlan plan;
  plan.preprocess = preprocess_config_from_json(request.value("preprocess", Json()), config.defaults.preprocess);
  plan.pyramid = pyramid_config_from_json(request.value("pyramid", Json()), config.defaults.pyramid);
  const bool want_shared = request.contains("preprocess") && request.at("preprocess").is_object() &&
                           request.at("preprocess").value("shared_extent", Json()).is_boolean() &&
                           request.at("preprocess").at("shared_extent").get<bool>();

  const auto mode = request.value("mode", std::string("pairwise"));
  if (mode == "pairwise") {
    if (request.contains("measures")) {
      const auto& m = request.at("measures");
      if (!m.is_array()) bad("'measures' must be an array of column names");
      plan.specs = enumerate_pairwise(catalog, m.get<std::vector<std::string>>());
    } else {
      plan.specs = enumerate_pairwise(catalog);
    }
    if (want_shared) bad("'shared_extent': true needs mode category-split; pass an explicit extent instead");
  } else if (mode == "category-split") {
    const auto x = string_field(request, "x");
    const auto y = string_field(request, "y");
    const auto cat = string_field(request, "cat");
    plan.specs = enumerate_by_category(x, y, cat, catalog, limits.max_category_values);
    if (want_shared) plan.preprocess.shared_extent = shared_extent_for(*dataset.table, x, y, plan.preprocess);
  } else {
    bad("unknown collection mode '" + mode + "' (expected pairwise or category-split)");
  }

  if (plan.specs.empty()) bad("the request yields no scatterplots (need at least two measures)");
  if (plan.specs.size() > limits.max_specs) {
    throw Error(ErrorCode::CapacityExceeded, "request yields " + std::to_string(plan.specs.size()) +
                                                 " plots; the limit is " + std::to_string(limits.max_specs));
  }

  Json identity = {{"dataset_id", dataset.id},
                   {"preprocess", to_json(plan.preprocess)},
                   {"pyramid", to_json(plan.pyramid)},
                   {"specs", Json::array()}};
  for (const auto& s : plan.specs) identity["specs"].push_back(s.id);
  plan.collection_id = "col-" + fingerprint(identity.dump());
  return plan;
}

Collection build_planned(const Dataset& dataset, const BuildPlan& plan, Execution execution) {
  return build_collection(*dataset.table, plan.specs, plan.preprocess, plan.pyramid,
                          {plan.collection_id, dataset.id, execution});
}

Json execute_query(const Collection& collection, const Json& request, const ServiceConfig& config) {
  if (!request.is_object()) bad("query must be a JSON object");
  const auto type = request.value("type", std::string());
  const auto k = parse_k(request, config.defaults.k);
  const bool with_preview = request.value("preview", true);

  Json response = {{"collection_id", collection.id()}, {"type", type}, {"k", k_json(k)}};
  RankedList ranked;
  if (type == "region") {
    const Json& polygon = request.contains("polygon") ? request.at("polygon") : request.value("region", Json());
    if (polygon.is_null()) throw Error(ErrorCode::InvalidRegion, "region query needs a 'polygon'");
    const auto region = region_from_json(polygon);
    const bool normalized = request.value("normalized", false);
    ranked = query_region(collection, region, k, normalized);
    response["normalized"] = normalized;
    response["direction"] = to_string(ScoreDirection::HigherIsBetter);
  } else if (type == "similar") {
    if (!request.contains("ref")) bad("similar query needs a 'ref' (plot id or points)");
    const auto& ref = request.at("ref");
    SimilarityQuery query;
    if (ref.is_string()) {
      query = SpecRef{ref.get<std::string>()};
    } else if (ref.is_array()) {
      query = RawPoints{points_from_json(ref)};
    } else if (ref.is_object() && ref.contains("points")) {
      query = RawPoints{points_from_json(ref.at("points"))};
    } else {
      bad("'ref' must be a plot id or an array of [x, y] points");
    }
    std::optional<WeightSchedule> weights;
    if (request.contains("weights") && !request.at("weights").is_null()) {
      weights = weights_from_json(request.at("weights"));
    }
    const auto levels = level_resolutions(collection.info().pyramid).size();
    const auto schedule = weights ? *weights : default_weights(levels);
    std::optional<double> threshold;
    if (request.contains("prune_threshold") && !request.at("prune_threshold").is_null()) {
      const auto& t = request.at("prune_threshold");
      if (!t.is_number()) bad("'prune_threshold' must be a number");
      threshold = t.get<double>();
    }
    ranked = threshold ? query_similar_pruned(collection, query, k, schedule, *threshold)
                       : query_similar(collection, query, k, schedule);
    response["direction"] = to_string(ScoreDirection::LowerIsBetter);
    response["weights"] = schedule.weights();
    response["prune_threshold"] = threshold ? Json(*threshold) : Json(nullptr);
  } else {
    bad("query 'type' must be \"region\" or \"similar\"");
  }

  response["pruning_active"] = ranked.pruning_active;
  response["candidates"] = ranked.candidates;
  response["pruned"] = ranked.pruned;
  Json results = Json::array();
  for (const auto& r : ranked.results) {
    const auto index = collection.require(r.spec_id);
    const auto& spec = collection.specs()[index];
    Json item = {{"rank", r.rank}, {"spec_id", r.spec_id}, {"score", r.score.value}};
    item["x_attr"] = spec.x_attr;
    item["y_attr"] = spec.y_attr;
    item["filter"] = to_json(spec)["filter"];
    if (with_preview) item["preview"] = preview_json(collection.point_sets()[index], config.limits);
    results.push_back(std::move(item));
  }
  response["results"] = std::move(results);
  return response;
}

Json plot_json(const Collection& collection, std::string_view spec_id) {
  const auto index = collection.require(spec_id);
  const auto& ps = collection.point_sets()[index];
  const auto& meta = collection.meta()[index];
  return {{"collection_id", collection.id()},
          {"spec", to_json(collection.specs()[index])},
          {"point_count", ps.points.size()},
          {"n_before_sampling", ps.n_before_sampling},
          {"dropped_rows", meta.dropped_rows},
          {"clipped", meta.clipped},
          {"empty", meta.empty()},
          {"empty_reason", to_string(meta.empty_reason)},
          {"source_extent", to_json(ps.source_extent)},
          {"scoring_kind", collection.info().pyramid.density ? "density" : "counts"},
          {"points", points_to_json(ps.points)},
          {"pyramid", to_json(collection.pyramids()[index])}};
}

std::string dump(const Json& json) { return json.dump(); }

ErrorCode error_code(const std::exception& e) noexcept {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->code();
  if (dynamic_cast<const nlohmann::json::exception*>(&e) != nullptr) return ErrorCode::InvalidArgument;
  return ErrorCode::Internal;
}

Json error_body(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return to_json(*err);
  return {{"error", {{"code", code_name(error_code(e))}, {"message", e.what()}}}};
}

}  // namespace scatter::api
