#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "scatter/api.hpp"
#include "scatter/collection_store.hpp"

using namespace scatter;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("scatter_store_" + name);
  fs::remove_all(dir);
  return dir;
}

Collection sample_collection() {
  const auto ds = api::make_dataset(fixtures::ncaa_csv(), {}, "ncaa", {});
  api::ServiceConfig cfg;
  const auto plan = api::plan_collection(
      ds, Json::parse(R"({"mode":"category-split","x":"x","y":"distance","cat":"shot_type","pyramid":{"max_resolution":16}})"),
      cfg);
  return api::build_planned(ds, plan);
}

}  // namespace

TEST(CollectionStore, RoundTripPreservesEverythingQueriesSee) {
  const auto c = sample_collection();
  const auto dir = fresh_dir("roundtrip");
  save_collection(c, dir);
  const auto back = load_collection(dir);
  EXPECT_EQ(back.id(), c.id());
  EXPECT_EQ(back.specs(), c.specs());
  EXPECT_EQ(back.pyramids(), c.pyramids());
  EXPECT_EQ(back.scoring_pyramids(), c.scoring_pyramids());
  EXPECT_EQ(back.meta(), c.meta());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(back.point_sets()[i].points, c.point_sets()[i].points);
    EXPECT_EQ(back.point_sets()[i].source_extent, c.point_sets()[i].source_extent);
  }
  EXPECT_EQ(api::dump(manifest_json(back)), api::dump(manifest_json(c)));
  api::ServiceConfig cfg;
  const auto q = Json::parse(R"({"type":"similar","ref":"x|distance|shot_type=jump","k":"all"})");
  EXPECT_EQ(api::dump(api::execute_query(back, q, cfg)), api::dump(api::execute_query(c, q, cfg)));
  fs::remove_all(dir);
}

TEST(CollectionStore, MissingOrCorruptFilesAreIoErrors) {
  const auto c = sample_collection();
  const auto dir = fresh_dir("corrupt");
  const auto expect_io = [&] {
    try {
      load_collection(dir);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IoError);
    }
  };
  expect_io();
  save_collection(c, dir);
  {
    std::ofstream(dir / "points.bin", std::ios::binary | std::ios::trunc) << "SQPNTS01";
  }
  expect_io();
  save_collection(c, dir);
  {
    std::ofstream(dir / "manifest.json", std::ios::trunc) << "{not json";
  }
  expect_io();
  fs::remove_all(dir);
}
