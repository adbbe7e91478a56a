#include "scatter/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "scatter/api.hpp"
#include "scatter/collection_store.hpp"
#include "scatter/service.hpp"

namespace scatter::cli {

namespace {

constexpr int kUsageExit = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Inline JSON when the argument looks like JSON, otherwise a file path.
Json json_argument(const std::string& arg, const char* what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
  const auto text = inline_json ? arg : read_file(arg);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not valid JSON: " + e.what());
  }
}

api::ServiceConfig load_config(const std::string& path) {
  return path.empty() ? api::service_config_from_env() : api::load_service_config(path);
}

struct BuildArgs {
  std::string csv;
  std::string out;
  bool pairwise = false;
  std::string category;
  std::string measures;
  std::string name;
  std::string delimiter = ",";
  std::string decimal = ".";
  bool shared_extent = false;
  bool counts = false;
  std::optional<double> clip_low, clip_high;
  std::optional<std::size_t> sample_cap, min_res, max_res;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

struct QueryArgs {
  std::string dir;
  std::string region;
  std::string like;
  std::string points;
  std::string k;
  bool normalized = false;
  std::string weights;
  std::optional<double> prune_threshold;
  bool no_preview = false;
  bool json = false;
};

struct ServeArgs {
  std::optional<int> port;
  std::string host;
  std::string data_dir;
};

int do_build(const BuildArgs& a, const api::ServiceConfig& config, std::ostream& out) {
  if (a.pairwise == !a.category.empty()) {
    throw Error(ErrorCode::InvalidArgument, "choose exactly one of --pairwise or --category x,y,cat");
  }
  if (a.delimiter.size() != 1 || a.decimal.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "--delimiter and --decimal take a single character");
  }
  CsvFormat format;
  format.delimiter = a.delimiter[0];
  format.decimal_point = a.decimal[0];
  const auto name = a.name.empty() ? std::filesystem::path(a.csv).stem().string() : a.name;
  const auto dataset = api::make_dataset(read_file(a.csv), format, name, config.limits);

  Json request;
  if (a.pairwise) {
    request["mode"] = "pairwise";
    if (!a.measures.empty()) request["measures"] = split_list(a.measures);
  } else {
    const auto parts = split_list(a.category);
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "--category expects x,y,cat");
    request["mode"] = "category-split";
    request["x"] = parts[0];
    request["y"] = parts[1];
    request["cat"] = parts[2];
  }
  Json preprocess = Json::object();
  if (a.clip_low) preprocess["clip_low"] = *a.clip_low;
  if (a.clip_high) preprocess["clip_high"] = *a.clip_high;
  if (a.sample_cap) preprocess["sample_cap"] = *a.sample_cap;
  if (a.seed) preprocess["seed"] = *a.seed;
  if (a.shared_extent) preprocess["shared_extent"] = true;
  if (!preprocess.empty()) request["preprocess"] = preprocess;
  Json pyramid = Json::object();
  if (a.min_res) pyramid["min_resolution"] = *a.min_res;
  if (a.max_res) pyramid["max_resolution"] = *a.max_res;
  if (a.counts) pyramid["density"] = false;
  if (!pyramid.empty()) request["pyramid"] = pyramid;

  const auto plan = api::plan_collection(dataset, request, config);
  const auto collection = api::build_planned(dataset, plan);
  save_collection(collection, a.out);

  if (a.json) {
    out << api::dump({{"collection_id", collection.id()}, {"manifest", manifest_json(collection)}}) << '\n';
  } else {
    std::size_t empty = 0;
    for (const auto& m : collection.meta()) empty += m.empty() ? 1 : 0;
    out << "built " << collection.id() << ": " << collection.size() << " plots (" << empty << " empty) from "
        << dataset.table->row_count() << " rows -> " << a.out << '\n';
  }
  return 0;
}

int do_query(const QueryArgs& a, const api::ServiceConfig& config, std::ostream& out) {
  const int modes = !a.region.empty() + !a.like.empty() + !a.points.empty();
  if (modes != 1) throw Error(ErrorCode::InvalidArgument, "choose exactly one of --region, --like or --points");

  Json request;
  if (!a.region.empty()) {
    request["type"] = "region";
    request["polygon"] = json_argument(a.region, "--region");
    request["normalized"] = a.normalized;
  } else {
    request["type"] = "similar";
    request["ref"] = a.like.empty() ? json_argument(a.points, "--points") : Json(a.like);
    if (!a.weights.empty()) {
      Json w = Json::array();
      for (const auto& item : split_list(a.weights)) {
        try {
          w.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw Error(ErrorCode::InvalidWeights, "--weights expects comma-separated numbers");
        }
      }
      request["weights"] = w;
    }
    if (a.prune_threshold) request["prune_threshold"] = *a.prune_threshold;
  }
  if (!a.k.empty()) {
    if (a.k == "all") {
      request["k"] = "all";
    } else {
      std::size_t pos = 0;
      unsigned long long k = 0;
      try {
        k = std::stoull(a.k, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != a.k.size()) throw Error(ErrorCode::InvalidArgument, "--k expects a positive integer or 'all'");
      request["k"] = k;
    }
  }
  if (a.no_preview) request["preview"] = false;

  const auto collection = load_collection(a.dir);
  const auto response = api::execute_query(collection, request, config);
  if (a.json) {
    out << api::dump(response) << '\n';
    return 0;
  }
  out << "rank  score                 plot\n";
  for (const auto& r : response.at("results")) {
    out << std::left << std::setw(6) << r.at("rank").get<std::size_t>() << std::setw(22)
        << std::setprecision(10) << r.at("score").get<double>() << r.at("spec_id").get<std::string>() << '\n';
  }
  return 0;
}

int do_serve(const ServeArgs& a, api::ServiceConfig config, std::ostream& out) {
  if (a.port) config.port = *a.port;
  if (!a.host.empty()) config.host = a.host;
  if (!a.data_dir.empty()) config.data_dir = a.data_dir;
  api::Server server(config);
  const int port = server.bind(config.port);
  if (port < 0) {
    throw Error(ErrorCode::IoError, "cannot bind " + config.host + ":" + std::to_string(config.port));
  }
  out << "listening on http://" << config.host << ':' << port << std::endl;
  return server.listen() ? 0 : exit_code(ErrorCode::IoError);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scatterplot pattern search: build plot collections and rank them against queries"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "Service config JSON (defaults and limits)");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build a scatterplot collection from a CSV file");
  build_cmd->add_option("csv", build.csv, "Input CSV with a header row")->required();
  build_cmd->add_option("--out", build.out, "Output collection directory")->required();
  build_cmd->add_flag("--pairwise", build.pairwise, "Every unordered pair of measures");
  build_cmd->add_option("--category", build.category, "x,y,cat: one plot per value of cat");
  build_cmd->add_option("--measures", build.measures, "Comma-separated measures for --pairwise");
  build_cmd->add_option("--name", build.name, "Dataset name (defaults to the file stem)");
  build_cmd->add_option("--delimiter", build.delimiter, "Field delimiter");
  build_cmd->add_option("--decimal", build.decimal, "Decimal point character");
  build_cmd->add_option("--clip-low", build.clip_low, "Lower clip percentile");
  build_cmd->add_option("--clip-high", build.clip_high, "Upper clip percentile");
  build_cmd->add_option("--sample-cap", build.sample_cap, "Maximum points per plot");
  build_cmd->add_option("--seed", build.seed, "Sampling seed");
  build_cmd->add_option("--min-res", build.min_res, "Coarsest pyramid resolution");
  build_cmd->add_option("--max-res", build.max_res, "Finest pyramid resolution");
  build_cmd->add_flag("--counts", build.counts, "Score raw counts instead of densities");
  build_cmd->add_flag("--shared-extent", build.shared_extent, "Normalize a category split on common axes");
  build_cmd->add_flag("--json", build.json, "Print the manifest as JSON");

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Rank the plots of a built collection");
  query_cmd->add_option("dir", query.dir, "Collection directory")->required();
  query_cmd->add_option("--region", query.region, "Polygon (GeoJSON or [[x,y],..]) inline or as a file");
  query_cmd->add_option("--like", query.like, "Plot id to search for similar plots");
  query_cmd->add_option("--points", query.points, "Query points [[x,y],..] in data units, inline or a file");
  query_cmd->add_option("--k", query.k, "Number of results or 'all'");
  query_cmd->add_flag("--normalized", query.normalized, "Region score as fraction of plot points");
  query_cmd->add_option("--weights", query.weights, "Comma-separated per-level weights, coarse first");
  query_cmd->add_option("--prune-threshold", query.prune_threshold, "Skip plots whose coarse term exceeds this");
  query_cmd->add_flag("--no-preview", query.no_preview, "Omit per-result previews");
  query_cmd->add_flag("--json", query.json, "Print the response JSON");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--port", serve.port, "Port (0 picks a free port)");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--data-dir", serve.data_dir, "Directory for uploaded datasets and collections");

  std::vector<const char*> argv;
  argv.push_back("scatterquery");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    const auto config = load_config(config_path);
    if (*build_cmd) return do_build(build, config, out);
    if (*query_cmd) return do_query(query, config, out);
    return do_serve(serve, config, out);
  } catch (const std::exception& e) {
    const auto code = api::error_code(e);
    err << code_name(code) << ": " << e.what() << '\n';
    return exit_code(code);
  }
}

}  // namespace scatter::cli
