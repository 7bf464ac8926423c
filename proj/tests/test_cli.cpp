#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "blbc/io.hpp"

namespace fs = std::filesystem;
using blbc::io::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("blbc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  Result run(const std::string& args) const {
    const std::string cmd = std::string(BLBC_CLI_PATH) + " " + args + " > " + path("stdout") + " 2> " + path("stderr");
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(path("stdout")), slurp(path("stderr"))};
  }

  void write_points(const std::string& name, const std::vector<std::pair<std::string, std::string>>& pts) const {
    Json arr = Json::array();
    for (const auto& [x, y] : pts) arr.push_back({{"x", x}, {"y", y}});
    write(name, Json{{"format_version", 1}, {"points", arr}}.dump());
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateSixPoints) {
  const auto r = run("generate --count 6 --out " + path("p.json") + " --trace " + path("t.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "");
  const auto doc = Json::parse(slurp(path("p.json")));
  const Json expected = Json::parse(R"([{"x":"0","y":"0"},{"x":"1","y":"0"},{"x":"0","y":"1"},
      {"x":"1/2","y":"0"},{"x":"0","y":"1/2"},{"x":"1/2","y":"1/2"}])");
  EXPECT_EQ(doc["points"], expected);
  EXPECT_EQ(doc["metadata"]["count"], 6);
  const auto trace = Json::parse(slurp(path("t.json")));
  ASSERT_EQ(trace["records"].size(), 3U);
  EXPECT_EQ(trace["records"][2]["i"], 2);
  EXPECT_EQ(trace["records"][2]["j"], 3);
  EXPECT_EQ(trace["records"][2]["t"], "1/2");
}

TEST_F(Cli, GenerateToStdoutMatchesFileAndIsDeterministic) {
  const auto a = run("generate --count 40");
  const auto b = run("generate --count 40");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  ASSERT_EQ(run("generate --count 40 --out " + path("p.json")).code, 0);
  EXPECT_EQ(slurp(path("p.json")), a.out);
  EXPECT_EQ(a.out.back(), '\n');
}

TEST_F(Cli, GenerateEdgeCounts) {
  const auto three = run("generate --count 3 --trace " + path("t.json"));
  ASSERT_EQ(three.code, 0);
  EXPECT_EQ(Json::parse(three.out)["points"].size(), 3U);
  EXPECT_TRUE(Json::parse(slurp(path("t.json")))["records"].empty());
  EXPECT_EQ(run("generate --count 2").code, 2);
  EXPECT_EQ(run("generate").code, 2);
  EXPECT_EQ(run("generate --count x").code, 2);
}

TEST_F(Cli, GenerateSeeds) {
  write_points("seed.json", {{"0", "0"}, {"3", "1/2"}, {"-1/3", "2"}});
  const auto ok = run("generate --count 10 --seed " + path("seed.json"));
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(Json::parse(ok.out)["points"][1]["y"], "1/2");

  write_points("line.json", {{"0", "0"}, {"1", "1"}, {"2", "2"}});
  const auto line = run("generate --count 10 --seed " + path("line.json"));
  EXPECT_EQ(line.code, 2);
  EXPECT_NE(line.err.find("points 1, 2, 3"), std::string::npos) << line.err;

  write_points("dup.json", {{"0", "0"}, {"1", "1"}, {"0", "0"}});
  const auto dup = run("generate --count 10 --seed " + path("dup.json"));
  EXPECT_EQ(dup.code, 2);
  EXPECT_NE(dup.err.find("points 1 and 3"), std::string::npos) << dup.err;

  write_points("two.json", {{"0", "0"}, {"1", "1"}});
  EXPECT_EQ(run("generate --count 10 --seed " + path("two.json")).code, 2);
  EXPECT_EQ(run("generate --count 10 --seed " + path("missing.json")).code, 3);
}

TEST_F(Cli, UnwritableOutputIsAnIoError) {
  EXPECT_EQ(run("generate --count 5 --out " + path("no/such/dir/p.json")).code, 3);
  EXPECT_EQ(run("generate --count 5 --trace " + path("no/such/dir/t.json")).code, 3);
}

TEST_F(Cli, VerifyGeneratedRun) {
  ASSERT_EQ(run("generate --count 50 --out " + path("p.json") + " --trace " + path("t.json")).code, 0);
  const auto r = run("verify " + path("p.json") + " --trace " + path("t.json"));
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto doc = Json::parse(r.out);
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_EQ(doc["checks"].size(), 6U);
  for (const auto& c : doc["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();

  const auto no_trace = run("verify " + path("p.json"));
  ASSERT_EQ(no_trace.code, 0);
  EXPECT_EQ(Json::parse(no_trace.out)["checks"].size(), 3U);
}

TEST_F(Cli, VerifyFindsFourCollinear) {
  write_points("line.json", {{"0", "0"}, {"1", "0"}, {"2", "0"}, {"3", "0"}});
  const auto r = run("verify " + path("line.json"));
  ASSERT_EQ(r.code, 1) << r.err;
  const auto doc = Json::parse(r.out);
  EXPECT_FALSE(doc["passed"].get<bool>());
  EXPECT_EQ(doc["checks"][0]["check"], "no4collinear");
  EXPECT_EQ(doc["checks"][0]["counterexample"]["indices"], Json({1, 2, 3, 4}));
}

TEST_F(Cli, VerifyCheckSelector) {
  write_points("grid.json", {{"0", "0"}, {"0", "1"}, {"0", "2"}, {"1", "0"}, {"1", "1"}, {"1", "2"}, {"2", "0"},
                             {"2", "1"}, {"2", "2"}});
  const auto r = run("verify " + path("grid.json") + " --checks no4collinear");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = Json::parse(r.out);
  ASSERT_EQ(doc["checks"].size(), 1U);
  EXPECT_EQ(doc["checks"][0]["check"], "no4collinear");

  const auto two = run("verify " + path("grid.json") + " --checks no4collinear,visible_pair_lemma");
  EXPECT_EQ(Json::parse(two.out)["checks"].size(), 2U);
  EXPECT_EQ(run("verify " + path("grid.json") + " --checks bogus").code, 2);
  EXPECT_EQ(run("verify " + path("grid.json") + " --checks unique_triple").code, 2);
}

TEST_F(Cli, VerifyRejectsMismatchedTrace) {
  ASSERT_EQ(run("generate --count 20 --out " + path("p.json")).code, 0);
  ASSERT_EQ(run("generate --count 12 --trace " + path("t.json")).code, 0);
  EXPECT_EQ(run("verify " + path("p.json") + " --trace " + path("t.json")).code, 2);
}

TEST_F(Cli, MalformedRationalsAreInputErrors) {
  for (const std::string bad : {"2/4", "1/-3", "1/0"}) {
    write_points("bad.json", {{"0", "0"}, {"1", "0"}, {bad, "1"}});
    const auto r = run("verify " + path("bad.json"));
    EXPECT_EQ(r.code, 2) << bad;
    EXPECT_NE(r.err.find("points[2].x"), std::string::npos) << r.err;
  }
  write("broken.json", "{\"format_version\": 1, \"points\": [");
  EXPECT_EQ(run("verify " + path("broken.json")).code, 2);
  write_points("dup.json", {{"0", "0"}, {"1", "0"}, {"0", "0"}});
  EXPECT_EQ(run("verify " + path("dup.json")).code, 2);
  EXPECT_EQ(run("verify " + path("absent.json")).code, 3);
}

TEST_F(Cli, Analyze) {
  write_points("grid.json", {{"0", "0"}, {"0", "1"}, {"0", "2"}, {"1", "0"}, {"1", "1"}, {"1", "2"}, {"2", "0"},
                             {"2", "1"}, {"2", "2"}});
  const auto grid = run("analyze " + path("grid.json") + " --k 4 --l 4");
  ASSERT_EQ(grid.code, 0) << grid.err;
  const auto g = Json::parse(grid.out);
  EXPECT_EQ(g["outcome"], "CliqueFound");
  EXPECT_EQ(g["max_collinear"], 3);
  EXPECT_EQ(g["clique_witness"].size(), 4U);

  write_points("tri.json", {{"0", "0"}, {"1", "0"}, {"0", "1"}});
  const auto tri = Json::parse(run("analyze " + path("tri.json") + " --k 3 --l 3").out);
  EXPECT_EQ(tri["outcome"], "CliqueFound");
  EXPECT_EQ(tri["clique_witness"], Json({1, 2, 3}));

  write_points("line.json", {{"0", "0"}, {"1", "0"}, {"2", "0"}});
  const auto line = run("analyze " + path("line.json") + " --k 3 --l 3");
  EXPECT_EQ(line.code, 0);
  EXPECT_EQ(Json::parse(line.out)["outcome"], "CollinearFound");

  EXPECT_EQ(run("analyze " + path("tri.json") + " --k 1 --l 3").code, 2);
  EXPECT_EQ(run("analyze " + path("tri.json") + " --k 3").code, 2);
}

TEST_F(Cli, Render) {
  ASSERT_EQ(run("generate --count 6 --out " + path("p.json")).code, 0);
  ASSERT_EQ(run("render " + path("p.json") + " --out " + path("c.svg") + " --edges collinear").code, 0);
  const auto svg = slurp(path("c.svg"));
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("<circle"), 6U);
  EXPECT_EQ(count("<line"), 3U);

  ASSERT_EQ(run("render " + path("p.json") + " --out " + path("n.svg")).code, 0);
  EXPECT_EQ(slurp(path("n.svg")).find("<line"), std::string::npos);
  ASSERT_EQ(run("render " + path("p.json") + " --out " + path("n2.svg") + " --edges none").code, 0);
  EXPECT_EQ(slurp(path("n.svg")), slurp(path("n2.svg")));

  write_points("one.json", {{"1/3", "-2"}});
  ASSERT_EQ(run("render " + path("one.json") + " --out " + path("one.svg")).code, 0);
  EXPECT_NE(slurp(path("one.svg")).find("<circle"), std::string::npos);

  write_points("empty.json", {});
  EXPECT_EQ(run("render " + path("empty.json") + " --out " + path("e.svg")).code, 2);
  EXPECT_EQ(run("render " + path("p.json") + " --out " + path("x.svg") + " --edges all").code, 2);
  EXPECT_EQ(run("render " + path("p.json") + " --out " + path("no/dir/x.svg")).code, 3);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, PipelineAcrossCounts) {
  for (int n = 3; n <= 120; n += (n < 20 ? 1 : 13)) {
    const std::string p = path("p" + std::to_string(n) + ".json");
    const std::string t = path("t" + std::to_string(n) + ".json");
    ASSERT_EQ(run("generate --count " + std::to_string(n) + " --out " + p + " --trace " + t).code, 0);
    const auto r = run("verify " + p + " --trace " + t);
    EXPECT_EQ(r.code, 0) << "n=" << n << " " << r.out;
  }
}
