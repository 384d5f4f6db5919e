#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corefree/cli.hpp"

using namespace corefree;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("corefree_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string read(const std::string& file) {
    std::ifstream in(file);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::filesystem::path dir_;
};

Json error_of(const Result& r) { return Json::parse(r.err); }

}  // namespace

TEST_F(Cli, FoldSummaries) {
  auto r = run({"fold", "--gens", "x1 x2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "vertices: 2\nedges: 2\nrank: 1\nindex: INFINITE\n");

  r = run({"fold", "--gens", "x1,x2^2,x2 x1 x2^-1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rank: 3\nindex: 2\n"), std::string::npos);

  r = run({"fold", "--gens", ""});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("vertices: 1\n"), std::string::npos);

  r = run({"--json", "fold", "--gens", "x1 x2"});
  EXPECT_EQ(Json::parse(r.out).at("vertices"), 2);
  r = run({"fold", "--dot", "--gens", "x1 x2"});
  EXPECT_NE(r.out.find("digraph"), std::string::npos);
}

TEST_F(Cli, CoreJson) {
  const auto r = run({"core", "--json", "--gens", "x1"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("subgroup_rank"), 1);
  EXPECT_EQ(j.at("index"), "INFINITE");
  EXPECT_EQ(j.at("loop_sets").dump(), "[[0],[]]");
}

TEST_F(Cli, FindBasisAndVerify) {
  const std::string cert = path("cert.json");
  auto r = run({"find-basis", "--gens", "x1", "--out", cert});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(read(cert));
  EXPECT_EQ(j.at("moves").dump(), "[[2,-2]]");
  EXPECT_EQ(j.at("m0"), 3);

  r = run({"verify", "--cert", cert});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);

  Json tampered = j;
  tampered["basis"][0] = Json::parse("[[1,1]]");
  const std::string bad = write("bad.json", tampered.dump());
  r = run({"--json", "verify", "--cert", bad});
  EXPECT_EQ(r.code, 1);
  const Json v = Json::parse(r.out);
  EXPECT_FALSE(v.at("conjugates").at("passed").get<bool>());
  EXPECT_TRUE(v.at("structural").at("passed").get<bool>());
  EXPECT_FALSE(v.at("passed").get<bool>());
}

TEST_F(Cli, FindBasisTrivialAndTrace) {
  auto r = run({"find-basis", "--gens", ""});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("moves").dump(), "[]");
  EXPECT_EQ(j.at("m0"), 1);

  r = run({"find-basis", "--trace", "--gens", "x1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("|L|"), std::string::npos);
}

TEST_F(Cli, ErrorsAndExitCodes) {
  auto r = run({"find-basis", "--gens", "x1, x2^2, x2 x1 x2^-1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(error_of(r).at("error"), "FiniteIndex");

  r = run({"--cap", "2", "find-basis", "--gens", "x1"});
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(error_of(r).at("error"), "WordBlowup");

  r = run({"fold", "--gens", "x1 x2^-"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r).at("error"), "ParseError");

  r = run({"fold", "--gens", "x3", "--rank", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r).at("error"), "IndexOutOfRange");

  r = run({"m0", "--gens", "x1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(error_of(r).at("error"), "UnboundedRun");

  const std::string cert = path("cert.json");
  ASSERT_EQ(run({"find-basis", "--gens", "x1", "--out", cert}).code, 0);
  r = run({"verify", "--cert", cert, "--g-bound", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r).at("error"), "UsageError");

  r = run({"fold"});
  EXPECT_EQ(r.code, 2);
  r = run({});
  EXPECT_EQ(r.code, 2);
  r = run({"fold", "--in", path("missing.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r).at("error"), "MalformedInput");

  r = run({"verify", "--cert", write("junk.json", "{not json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r).at("error"), "ParseError");
}

TEST_F(Cli, M0) {
  EXPECT_EQ(run({"m0", "--gens", "x1 x2^-2"}).out, "3\n");
  EXPECT_EQ(run({"--json", "m0", "--gens", "x1 x2"}).out, "{\"m0\":2}\n");
}

TEST_F(Cli, PipelineClosure) {
  const std::string graph = path("graph.json");
  const std::string cert = path("cert.json");
  ASSERT_EQ(run({"fold", "--gens", "x1 x2 x1^-1, x2^3 x1^2", "--out", graph}).code, 0);
  auto r = run({"find-basis", "--in", graph, "--out", cert});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"verify", "--cert", cert, "--samples", "200"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;

  // A certificate reads as its original generators; this H has an x2-cycle.
  r = run({"m0", "--in", cert});
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, Determinism) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--seed", "9", "random", "--rank", "3", "--count", "4", "--length", "7"},
           {"--seed", "5", "find-basis", "--gens", "x1 x2^2 x1, x2^3"},
           {"--json", "core", "--gens", "x1 x2 x1^-1, x2^2"}}) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
  EXPECT_NE(run({"--seed", "1", "random", "--length", "8"}).out,
            run({"--seed", "2", "random", "--length", "8"}).out);
}

TEST_F(Cli, RandomLengthOne) {
  const auto r = run({"--seed", "3", "random", "--count", "5", "--length", "1"});
  ASSERT_EQ(r.code, 0);
  for (const Json& w : Json::parse(r.out).at("generators")) {
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(std::abs(w[0][1].get<int>()), 1);
  }
}

TEST_F(Cli, QuasimorphismCommands) {
  const std::string cert = path("cert.json");
  ASSERT_EQ(run({"find-basis", "--gens", "x1", "--out", cert}).code, 0);
  const std::string factors = write("factors.json", R"([{"support":[[1,"1"]]},{"support":[]}])");
  const std::string rel = path("rel.json");

  auto r = run({"make-relative", "--cert", cert, "--factors", factors, "--embed", "--out", rel});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(read(rel)).at("factors")[0].dump(), R"({"support":[[3,"1"]]})");

  r = run({"make-relative", "--cert", cert, "--factors", factors});
  EXPECT_EQ(r.code, 3);

  r = run({"qm-eval", "--qm", rel, "--word", "x1", "--word", "x1 x2^2 x1 x2^2 x1 x2^2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0\n1\n");

  r = run({"qm-defect", "--qm", rel});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("defect: 2\n"), std::string::npos);

  const std::string single = write("f.json", R"({"support":[[1,"1"],[2,"2"]]})");
  r = run({"--json", "qm-defect", "--qm", single});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("defect"), "4");

  r = run({"check-vanishing", "--relative", rel, "--samples", "300", "--length", "20"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;

  Json corrupt = Json::parse(read(rel));
  corrupt["factors"][1] = Json::parse(R"({"support":[[2,"1"]]})");
  const std::string bad = write("bad.json", corrupt.dump());
  r = run({"check-vanishing", "--relative", bad});
  EXPECT_EQ(r.code, 3);

  const std::string split = write("split.json", R"({"rank":2,"factors":[{"support":[[1,"1"]]},{"support":[]}]})");
  r = run({"qm-eval", "--qm", split, "--word", "x1 x2 x1^2"});
  EXPECT_EQ(r.out, "1\n");
}

TEST_F(Cli, ExportFormats) {
  auto r = run({"export", "--dot", "--gens", ""});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("->"), std::string::npos);
  r = run({"export", "--gens", "x1 x2"});
  EXPECT_EQ(Json::parse(r.out).at("edges").size(), 2u);
  r = run({"--json", "--dot", "export", "--gens", "x1"});
  EXPECT_EQ(r.code, 2);
}
