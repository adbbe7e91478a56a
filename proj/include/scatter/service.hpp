#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "scatter/api.hpp"

namespace scatter::api {

/// In-process store of datasets and built collections. Reads run
/// concurrently; builds for one dataset are serialized, and a collection
/// becomes visible only once its build has finished.
class Registry {
 public:
  explicit Registry(ServiceConfig config);

  const ServiceConfig& config() const noexcept { return config_; }

  /// Registers a parsed dataset, or returns the existing one with the same id.
  std::shared_ptr<const Dataset> add_dataset(Dataset dataset);
  std::shared_ptr<const Dataset> dataset(const std::string& id) const;  // NotFound

  struct Built {
    std::shared_ptr<const Collection> collection;
    bool reused = false;
  };
  /// Plans, builds and publishes a collection; an identical plan returns the
  /// collection already registered.
  Built build_collection(const std::string& dataset_id, const Json& request);
  std::shared_ptr<const Collection> collection(const std::string& id) const;  // NotFound

  /// Adds a collection built elsewhere (e.g. loaded from disk).
  void publish(std::shared_ptr<const Collection> collection);

  std::size_t dataset_count() const;
  std::size_t collection_count() const;

 private:
  std::mutex& build_lock(const std::string& dataset_id);

  ServiceConfig config_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::map<std::string, std::shared_ptr<const Collection>> collections_;
  std::mutex build_locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> build_locks_;
};

/// HTTP facade:
///   POST /datasets                         CSV body; ?name=&delimiter=&decimal=
///   GET  /datasets/{id}
///   POST /datasets/{id}/collections        build request (see plan_collection)
///   GET  /collections/{id}
///   POST /collections/{id}/query           query body (see execute_query)
///   GET  /collections/{id}/plots/{spec_id}
///   GET  /health
/// Failures answer with {"error": {...}} and the code's HTTP status.
class Server {
 public:
  explicit Server(ServiceConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds to config().host and the given port (0 picks a free one) and
  /// returns the bound port, or -1.
  int bind(int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();
  bool is_running() const;

  Registry& registry() noexcept { return registry_; }
  const ServiceConfig& config() const noexcept { return registry_.config(); }

 private:
  struct Impl;
  void load_persisted();
  void persist_dataset(const Dataset& dataset, std::string_view csv, const CsvFormat& format);
  void persist_collection(const Collection& collection);

  Registry registry_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scatter::api
