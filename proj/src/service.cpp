#include "scatter/service.hpp"

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "scatter/collection_store.hpp"

namespace scatter::api {

namespace fs = std::filesystem;

Registry::Registry(ServiceConfig config) : config_(std::move(config)) {}

std::shared_ptr<const Dataset> Registry::add_dataset(Dataset dataset) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = datasets_.try_emplace(dataset.id, nullptr);
  if (inserted) it->second = std::make_shared<const Dataset>(std::move(dataset));
  return it->second;
}

std::shared_ptr<const Dataset> Registry::dataset(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = datasets_.find(id);
  if (it == datasets_.end()) throw Error(ErrorCode::NotFound, "no dataset '" + id + "'");
  return it->second;
}

std::shared_ptr<const Collection> Registry::collection(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = collections_.find(id);
  if (it == collections_.end()) throw Error(ErrorCode::NotFound, "no collection '" + id + "'");
  return it->second;
}

std::mutex& Registry::build_lock(const std::string& dataset_id) {
  std::lock_guard guard(build_locks_mutex_);
  auto& slot = build_locks_[dataset_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

Registry::Built Registry::build_collection(const std::string& dataset_id, const Json& request) {
  const auto ds = dataset(dataset_id);
  const auto plan = plan_collection(*ds, request, config_);

  std::lock_guard serial(build_lock(dataset_id));
  {
    std::shared_lock lock(mutex_);
    if (const auto it = collections_.find(plan.collection_id); it != collections_.end()) {
      return {it->second, true};
    }
  }
  auto built = std::make_shared<const Collection>(build_planned(*ds, plan));
  publish(built);
  return {built, false};
}

void Registry::publish(std::shared_ptr<const Collection> collection) {
  std::unique_lock lock(mutex_);
  collections_.try_emplace(collection->id(), std::move(collection));
}

std::size_t Registry::dataset_count() const {
  std::shared_lock lock(mutex_);
  return datasets_.size();
}

std::size_t Registry::collection_count() const {
  std::shared_lock lock(mutex_);
  return collections_.size();
}

struct Server::Impl {
  httplib::Server http;
};

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(dump(body), "application/json");
}

void send_error(httplib::Response& res, const std::exception& e) {
  send_json(res, http_status(error_code(e)), error_body(e));
}

template <typename Handler>
auto guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const std::exception& e) {
      send_error(res, e);
    }
  };
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("request body is not valid JSON: ") + e.what());
  }
}

char single_char_param(const httplib::Request& req, const char* key, char fallback) {
  if (!req.has_param(key)) return fallback;
  const auto v = req.get_param_value(key);
  if (v == "\\t" || v == "tab") return '\t';
  if (v.size() != 1) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be one character");
  return v[0];
}

}  // namespace

Server::Server(ServiceConfig cfg) : registry_(std::move(cfg)), impl_(std::make_unique<Impl>()) {
  auto& http = impl_->http;
  http.set_payload_max_length(config().limits.max_body_bytes);
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Headers", "Content-Type"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}});
  });

  http.Post("/datasets", guarded([this](const httplib::Request& req, httplib::Response& res) {
    CsvFormat format;
    format.delimiter = single_char_param(req, "delimiter", ',');
    format.decimal_point = single_char_param(req, "decimal", '.');
    const auto name = req.has_param("name") ? req.get_param_value("name") : std::string("dataset");
    auto ds = registry_.add_dataset(make_dataset(req.body, format, name, config().limits));
    persist_dataset(*ds, req.body, format);
    send_json(res, 201, dataset_json(*ds));
  }));

  http.Get(R"(/datasets/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, dataset_json(*registry_.dataset(req.matches[1])));
  }));

  http.Post(R"(/datasets/([^/]+)/collections)",
            guarded([this](const httplib::Request& req, httplib::Response& res) {
              const auto built = registry_.build_collection(req.matches[1], parse_body(req));
              if (!built.reused) persist_collection(*built.collection);
              send_json(res, built.reused ? 200 : 201,
                        {{"collection_id", built.collection->id()}, {"manifest", manifest_json(*built.collection)}});
            }));

  http.Get(R"(/collections/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, manifest_json(*registry_.collection(req.matches[1])));
  }));

  http.Post(R"(/collections/([^/]+)/query)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto c = registry_.collection(req.matches[1]);
    send_json(res, 200, execute_query(*c, parse_body(req), config()));
  }));

  http.Get(R"(/collections/([^/]+)/plots/(.+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto c = registry_.collection(req.matches[1]);
    send_json(res, 200, plot_json(*c, req.matches[2].str()));
  }));

  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    ErrorCode code = ErrorCode::Internal;
    if (res.status == 404) code = ErrorCode::NotFound;
    else if (res.status == 413) code = ErrorCode::CapacityExceeded;
    else if (res.status < 500) code = ErrorCode::InvalidArgument;
    const Json body = {{"error", {{"code", code_name(code)}, {"message", httplib::status_message(res.status)}}}};
    res.set_content(dump(body), "application/json");
  });
  http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      send_error(res, e);
    } catch (...) {
      send_json(res, 500, {{"error", {{"code", "internal"}, {"message", "unknown failure"}}}});
    }
  });

  load_persisted();
}

Server::~Server() { stop(); }

int Server::bind(int port) {
  if (port == 0) return impl_->http.bind_to_any_port(config().host);
  return impl_->http.bind_to_port(config().host, port) ? port : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

bool Server::is_running() const { return impl_->http.is_running(); }

void Server::persist_dataset(const Dataset& dataset, std::string_view csv, const CsvFormat& format) {
  if (config().data_dir.empty()) return;
  const fs::path dir = fs::path(config().data_dir) / "datasets";
  fs::create_directories(dir);
  if (fs::exists(dir / (dataset.id + ".csv"))) return;
  std::ofstream(dir / (dataset.id + ".csv"), std::ios::binary).write(csv.data(), static_cast<std::streamsize>(csv.size()));
  const Json meta = {{"name", dataset.table->name()},
                     {"delimiter", std::string(1, format.delimiter)},
                     {"decimal", std::string(1, format.decimal_point)}};
  std::ofstream(dir / (dataset.id + ".json")) << meta.dump(2) << '\n';
}

void Server::persist_collection(const Collection& collection) {
  if (config().data_dir.empty()) return;
  save_collection(collection, fs::path(config().data_dir) / "collections" / collection.id());
}

void Server::load_persisted() {
  if (config().data_dir.empty()) return;
  const fs::path root(config().data_dir);
  if (fs::is_directory(root / "datasets")) {
    for (const auto& entry : fs::directory_iterator(root / "datasets")) {
      if (entry.path().extension() != ".json") continue;
      std::ifstream meta_in(entry.path());
      const auto meta = Json::parse(meta_in);
      CsvFormat format;
      format.delimiter = meta.at("delimiter").get<std::string>().at(0);
      format.decimal_point = meta.at("decimal").get<std::string>().at(0);
      std::ifstream csv_in(fs::path(entry.path()).replace_extension(".csv"), std::ios::binary);
      std::stringstream csv;
      csv << csv_in.rdbuf();
      registry_.add_dataset(make_dataset(csv.str(), format, meta.at("name").get<std::string>(), config().limits));
    }
  }
  if (fs::is_directory(root / "collections")) {
    for (const auto& entry : fs::directory_iterator(root / "collections")) {
      if (entry.is_directory()) registry_.publish(std::make_shared<const Collection>(load_collection(entry.path())));
    }
  }
}

}  // namespace scatter::api
