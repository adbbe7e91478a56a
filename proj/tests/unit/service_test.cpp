#include <gtest/gtest.h>

#include <httplib.h>

#include <cmath>
#include <filesystem>
#include <thread>

#include "fixtures.hpp"
#include "scatter/service.hpp"

using namespace scatter;
using namespace scatter::api;

namespace {

class RunningServer {
 public:
  explicit RunningServer(ServiceConfig cfg = {}) : server_(std::move(cfg)) {
    port_ = server_.bind(0);
    thread_ = std::thread([this] { server_.listen(); });
    while (!server_.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  ~RunningServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(60, 0);
    return c;
  }
  Server& server() { return server_; }

 private:
  Server server_;
  int port_ = -1;
  std::thread thread_;
};

Json body_of(const httplib::Result& r) { return Json::parse(r->body); }

}  // namespace

TEST(Http, FullFlow) {
  RunningServer s;
  auto cli = s.client();
  ASSERT_EQ(cli.Get("/health")->status, 200);

  auto up = cli.Post("/datasets?name=communities", fixtures::communities_csv(), "text/csv");
  ASSERT_EQ(up->status, 201) << up->body;
  const auto ds_id = body_of(up)["dataset_id"].get<std::string>();
  EXPECT_EQ(body_of(up)["catalog"]["measures"].size(), 20u);
  EXPECT_EQ(cli.Get("/datasets/" + ds_id)->status, 200);

  auto built = cli.Post("/datasets/" + ds_id + "/collections", R"({"mode":"pairwise"})", "application/json");
  ASSERT_EQ(built->status, 201) << built->body;
  const auto col = body_of(built)["collection_id"].get<std::string>();
  EXPECT_EQ(body_of(built)["manifest"]["plot_count"], 190);
  auto again = cli.Post("/datasets/" + ds_id + "/collections", R"({"mode":"pairwise"})", "application/json");
  EXPECT_EQ(again->status, 200);
  EXPECT_EQ(body_of(again)["collection_id"], col);

  auto q = cli.Post("/collections/" + col + "/query", R"({"type":"similar","ref":"m00|m01","k":5})",
                    "application/json");
  ASSERT_EQ(q->status, 200) << q->body;
  EXPECT_EQ(body_of(q)["results"].size(), 5u);

  auto region = cli.Post("/collections/" + col + "/query",
                         R"({"type":"region","polygon":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,0.2],[0,0.2],[0,0]]]}})",
                         "application/json");
  ASSERT_EQ(region->status, 200);
  EXPECT_EQ(body_of(region)["results"].size(), 20u);

  auto plot = cli.Get("/collections/" + col + "/plots/m00%7Cm01");
  ASSERT_EQ(plot->status, 200) << plot->body;
  EXPECT_EQ(body_of(plot)["spec"]["id"], "m00|m01");
  EXPECT_EQ(cli.Get("/collections/" + col)->status, 200);
}

TEST(Http, ErrorsUseStructuredBodies) {
  RunningServer s;
  auto cli = s.client();
  auto bad_csv = cli.Post("/datasets", "a,b\n1,2\n\"oops,3\n", "text/csv");
  EXPECT_EQ(bad_csv->status, 400);
  EXPECT_EQ(body_of(bad_csv)["error"]["code"], "parse-error");
  EXPECT_EQ(body_of(bad_csv)["error"]["detail"]["row"], 3);

  auto missing = cli.Get("/collections/col-0000");
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(body_of(missing)["error"]["code"], "not-found");

  auto nowhere = cli.Get("/no/such/route");
  EXPECT_EQ(nowhere->status, 404);
  EXPECT_EQ(body_of(nowhere)["error"]["code"], "not-found");

  auto up = cli.Post("/datasets?name=ncaa", fixtures::ncaa_csv(), "text/csv");
  const auto ds_id = body_of(up)["dataset_id"].get<std::string>();
  auto bad_json = cli.Post("/datasets/" + ds_id + "/collections", "{mode:", "application/json");
  EXPECT_EQ(bad_json->status, 400);
  EXPECT_EQ(body_of(bad_json)["error"]["code"], "invalid-argument");
  auto unknown = cli.Post("/datasets/" + ds_id + "/collections",
                          R"({"mode":"category-split","x":"x","y":"nope","cat":"shot_type"})", "application/json");
  EXPECT_EQ(unknown->status, 400);
  EXPECT_EQ(body_of(unknown)["error"]["code"], "unknown-attribute");
}

// The flows the canvas front end drives.
TEST(Http, CanvasContract) {
  RunningServer s;
  auto cli = s.client();
  std::string csv = "team,shot_type,x,y\n";
  for (int i = 0; i < 400; ++i) {
    csv += "t" + std::to_string(i % 200) + "," + (i % 3 ? "jump" : "dunk") + "," + std::to_string(i % 47) + "," +
           std::to_string((i * 7) % 31) + "\n";
  }
  const auto ds_id = body_of(cli.Post("/datasets?name=plays", csv, "text/csv"))["dataset_id"].get<std::string>();

  const std::string split = R"({"mode":"category-split","x":"x","y":"y","cat":"shot_type"})";
  auto built = cli.Post("/datasets/" + ds_id + "/collections", split, "application/json");
  ASSERT_EQ(built->status, 201) << built->body;
  EXPECT_EQ(body_of(built)["manifest"]["plot_count"], 2);
  EXPECT_TRUE(body_of(built)["manifest"]["collection_extent"].is_object());
  auto other = cli.Post("/datasets/" + ds_id + "/collections", R"({"mode":"pairwise"})", "application/json");
  ASSERT_EQ(other->status, 201);
  auto back = cli.Post("/datasets/" + ds_id + "/collections", split, "application/json");
  EXPECT_EQ(back->status, 200);
  EXPECT_EQ(body_of(back)["collection_id"], body_of(built)["collection_id"]);

  auto wide = cli.Post("/datasets/" + ds_id + "/collections",
                       R"({"mode":"category-split","x":"x","y":"y","cat":"team"})", "application/json");
  EXPECT_EQ(wide->status, 400);
  EXPECT_EQ(body_of(wide)["error"]["code"], "cardinality-exceeded");

  Json lasso = Json::array();
  for (int i = 0; i < 64; ++i) {
    const double a = 6.283185307179586 * i / 64;
    lasso.push_back({0.5 + 0.4 * std::cos(a), 0.5 + 0.4 * std::sin(a)});
  }
  const auto col = body_of(built)["collection_id"].get<std::string>();
  auto q = cli.Post("/collections/" + col + "/query", Json{{"type", "region"}, {"polygon", lasso}}.dump(),
                    "application/json");
  ASSERT_EQ(q->status, 200) << q->body;
  const auto results = body_of(q)["results"];
  ASSERT_EQ(results.size(), 2u);
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i]["rank"], i + 1);
    const auto& preview = results[i]["preview"];
    EXPECT_TRUE(preview["source_extent"].is_object());
    EXPECT_EQ(preview["heatmap"]["cells"].size(), 8u);
    EXPECT_EQ(preview["points"].size(), preview["point_count"]);
  }

  auto sim = cli.Post("/collections/" + col + "/query", R"({"type":"similar","ref":"x|y|shot_type=dunk"})",
                      "application/json");
  ASSERT_EQ(sim->status, 200);
  ASSERT_EQ(body_of(sim)["results"].size(), 1u);
  EXPECT_EQ(body_of(sim)["results"][0]["spec_id"], "x|y|shot_type=jump");

  auto pre = cli.Options("/collections/" + col + "/query");
  EXPECT_EQ(pre->status, 204);
  EXPECT_EQ(pre->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST(Http, BodyLimit) {
  ServiceConfig cfg;
  cfg.limits.max_body_bytes = 1000;
  RunningServer s(cfg);
  auto cli = s.client();
  auto r = cli.Post("/datasets", std::string(5000, 'a'), "text/csv");
  EXPECT_EQ(r->status, 413);
  EXPECT_EQ(body_of(r)["error"]["code"], "capacity-exceeded");
}

TEST(Http, DataDirPersistsAcrossRestarts) {
  const auto dir = std::filesystem::temp_directory_path() / "scatter_http_persist";
  std::filesystem::remove_all(dir);
  ServiceConfig cfg;
  cfg.data_dir = dir.string();
  std::string col;
  {
    RunningServer s(cfg);
    auto cli = s.client();
    const auto ds_id = body_of(cli.Post("/datasets?name=ncaa", fixtures::ncaa_csv(), "text/csv"))["dataset_id"];
    auto built = cli.Post("/datasets/" + ds_id.get<std::string>() + "/collections",
                          R"({"mode":"category-split","x":"x","y":"y","cat":"shot_type"})", "application/json");
    col = body_of(built)["collection_id"].get<std::string>();
  }
  RunningServer s(cfg);
  EXPECT_EQ(s.server().registry().dataset_count(), 1u);
  EXPECT_EQ(s.server().registry().collection_count(), 1u);
  auto q = s.client().Post("/collections/" + col + "/query", R"({"type":"similar","ref":"x|y|shot_type=dunk"})",
                           "application/json");
  EXPECT_EQ(q->status, 200);
  std::filesystem::remove_all(dir);
}

TEST(Registry, ConcurrentBuildsOfSamePlanShareOneCollection) {
  Registry reg({});
  const auto ds = reg.add_dataset(make_dataset(fixtures::communities_csv(10, 200), {}, "c", {}));
  std::vector<std::thread> threads;
  std::vector<Registry::Built> out(6);
  for (std::size_t i = 0; i < out.size(); ++i) {
    threads.emplace_back([&, i] { out[i] = reg.build_collection(ds->id, Json::object()); });
  }
  for (auto& t : threads) t.join();
  std::size_t fresh = 0;
  for (const auto& b : out) {
    fresh += b.reused ? 0 : 1;
    EXPECT_EQ(b.collection.get(), out[0].collection.get());
  }
  EXPECT_EQ(fresh, 1u);
  EXPECT_EQ(reg.collection_count(), 1u);
}
