#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "scatter/cli.hpp"
#include "scatter/error.hpp"
#include "scatter/json_codec.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = scatter::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("scatter_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "ncaa.csv") << fixtures::ncaa_csv();
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, BuildThenQuery) {
  auto b = run({"build", path("ncaa.csv"), "--category", "x,y,shot_type", "--out", path("col")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("5 plots"), std::string::npos);

  auto q = run({"query", path("col"), "--like", "x|y|shot_type=jump", "--k", "2"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_NE(q.out.find("rank"), std::string::npos);

  auto r = run({"query", path("col"), "--region", "[[0,0],[1,0],[1,0.5],[0,0.5]]", "--normalized", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = scatter::Json::parse(r.out);
  EXPECT_EQ(j["results"].size(), 5u);
  EXPECT_EQ(j["normalized"], true);
}

TEST_F(CliTest, JsonOutputIsByteIdenticalAcrossRuns) {
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(run({"build", path("ncaa.csv"), "--pairwise", "--out", path(out)}).code, 0);
  }
  const std::vector<std::string> q{"--like", "x|y", "--k", "all", "--json"};
  auto qa = q;
  qa.insert(qa.begin(), {"query", path("a")});
  auto qb = q;
  qb.insert(qb.begin(), {"query", path("b")});
  const auto a = run(qa);
  const auto b = run(qb);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  std::ofstream(path("bad.csv")) << "a,b\n1,2\n3\n";
  auto r = run({"build", path("bad.csv"), "--pairwise", "--out", path("x")});
  EXPECT_EQ(r.code, scatter::exit_code(scatter::ErrorCode::ParseError));
  EXPECT_NE(r.err.find("parse-error: row 3"), std::string::npos);

  r = run({"build", path("ncaa.csv"), "--category", "x,y,distance", "--out", path("x")});
  EXPECT_EQ(r.code, scatter::exit_code(scatter::ErrorCode::InvalidArgument));

  r = run({"build", path("missing.csv"), "--pairwise", "--out", path("x")});
  EXPECT_EQ(r.code, scatter::exit_code(scatter::ErrorCode::IoError));

  r = run({"query", path("nowhere"), "--like", "a|b"});
  EXPECT_EQ(r.code, scatter::exit_code(scatter::ErrorCode::IoError));

  ASSERT_EQ(run({"build", path("ncaa.csv"), "--pairwise", "--out", path("col")}).code, 0);
  r = run({"query", path("col"), "--region", "[[0,0],[1,1],[1,0],[0,1]]"});
  EXPECT_EQ(r.code, scatter::exit_code(scatter::ErrorCode::InvalidRegion));
  r = run({"query", path("col"), "--like", "x|y", "--weights", "0.1,0.9"});
  EXPECT_EQ(r.code, scatter::exit_code(scatter::ErrorCode::InvalidWeights));
  r = run({"query", path("col"), "--like", "x|y", "--k", "zero"});
  EXPECT_EQ(r.code, scatter::exit_code(scatter::ErrorCode::InvalidArgument));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"build", path("ncaa.csv")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
  std::ofstream(path("cfg.json")) << R"({"defaults": {"k": 2, "pyramid": {"max_resolution": 8}}})";
  ASSERT_EQ(run({"--config", path("cfg.json"), "build", path("ncaa.csv"), "--pairwise", "--out", path("c")}).code,
            0);
  const auto r = run({"--config", path("cfg.json"), "query", path("c"), "--like", "x|y", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = scatter::Json::parse(r.out);
  EXPECT_EQ(j["results"].size(), 2u);
  EXPECT_EQ(j["weights"].size(), 3u);
}
