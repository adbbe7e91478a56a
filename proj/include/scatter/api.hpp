#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scatter/csv.hpp"
#include "scatter/ingest.hpp"
#include "scatter/json_codec.hpp"
#include "scatter/query_engine.hpp"

namespace scatter::api {

inline constexpr const char* kConfigEnvVar = "SCATTERQUERY_CONFIG";

struct Limits {
  std::size_t max_specs = 5000;
  std::size_t max_category_values = kDefaultMaxCategoryValues;
  std::size_t categorical_threshold = 20;
  std::size_t max_body_bytes = 256u << 20;
  std::size_t preview_resolution = 8;
  std::size_t preview_points = 500;
};

struct Defaults {
  PreprocessConfig preprocess;
  PyramidConfig pyramid;
  std::size_t k = 20;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;  // datasets are written here when set
  Defaults defaults;
  Limits limits;
};

/// Overlays the fields present in `json` onto the built-in defaults.
ServiceConfig service_config_from_json(const Json& json);
/// Reads a JSON config file; throws IoError / InvalidArgument.
ServiceConfig load_service_config(const std::string& path);
/// Config from the file named by SCATTERQUERY_CONFIG, or the defaults.
ServiceConfig service_config_from_env();

/// 64-bit FNV-1a rendered as 16 lowercase hex digits.
std::string fingerprint(std::string_view bytes);

struct Dataset {
  std::string id;
  std::shared_ptr<const Table> table;
  AttributeCatalog catalog;
};

/// Parses and classifies an uploaded CSV. The id is a content fingerprint.
Dataset make_dataset(std::string_view csv, const CsvFormat& format, std::string name, const Limits& limits);
Json dataset_json(const Dataset& dataset);

/// Everything needed to build one collection, resolved from a request body:
///   {"mode": "pairwise", "measures": [..]?}
///   {"mode": "category-split", "x": .., "y": .., "cat": ..}
/// plus optional "preprocess", "pyramid" and "overrides" objects.
struct BuildPlan {
  std::string collection_id;
  std::vector<ScatterplotSpec> specs;
  PreprocessConfig preprocess;
  PyramidConfig pyramid;
};

BuildPlan plan_collection(const Dataset& dataset, const Json& request, const ServiceConfig& config);
Collection build_planned(const Dataset& dataset, const BuildPlan& plan,
                         Execution execution = Execution::Parallel);

/// Runs a query body against a collection and renders the ranked response:
///   {"type": "region", "polygon": <polygon>, "k": N | "all", "normalized": bool}
///   {"type": "similar", "ref": <spec id> | [[x, y], ...], "k": .., "weights": [..],
///    "prune_threshold": number | null}
/// Either form accepts "preview": false to omit per-result previews.
Json execute_query(const Collection& collection, const Json& request, const ServiceConfig& config);

/// Full detail of one plot: points, extent and counts pyramid.
Json plot_json(const Collection& collection, std::string_view spec_id);

/// Canonical text form used for every response body.
std::string dump(const Json& json);

/// Wire code for any exception escaping the engine. JSON library errors are
/// reported as InvalidArgument, anything unknown as Internal.
ErrorCode error_code(const std::exception& e) noexcept;

/// {"error": {"code", "message", "detail"?}} for any exception.
Json error_body(const std::exception& e);

}  // namespace scatter::api
