#include "chainlab/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace chainlab {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "chainlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("chainlab_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(Cli, Stats) {
  const Result r = run_cli({"stats", "--k", "2", "--n", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("12607"), std::string::npos);
  EXPECT_EQ(r.out.rfind("n,k,chain_count,total_nodes,", 0), 0u);

  const Result many = run_cli({"stats", "--k", "3", "--n-max", "4", "--level-max", "2"});
  EXPECT_EQ(many.code, 0);
  EXPECT_NE(many.out.find("\n2,3,4,12,3/1,"), std::string::npos) << many.out;
  EXPECT_EQ(std::count(many.out.begin(), many.out.end(), '\n'), 5);

  const Result json = run_cli({"stats", "--n", "2", "--format", "json"});
  const Json j = Json::parse(json.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["expected_size"], "5/2");
  EXPECT_EQ(j[0]["level_mean"], "6/5");
}

TEST(Cli, Brauer) {
  EXPECT_NE(run_cli({"brauer", "--m", "16", "--star"}).out.find("l_star,4"), std::string::npos);
  EXPECT_NE(run_cli({"brauer", "--m", "15"}).out.find("l,5"), std::string::npos);
  const auto path = write_temp("brauer.json", R"({"k":2,"n":3,"targets":[[0],[1],[1]]})");
  EXPECT_NE(run_cli({"brauer", "--input", path}).out.find("brauer_chain,1 2 4 6"),
            std::string::npos);
  EXPECT_EQ(run_cli({"brauer"}).code, 1);
}

TEST(Cli, Compressible) {
  const Result r = run_cli({"compressible", "--max-m", "11"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n11,130\n"), std::string::npos);
  EXPECT_EQ(run_cli({"compressible", "--max-m", "40"}).code, 1);
}

TEST(Cli, Series) {
  const Result r = run_cli({"series", "--k", "2", "--level-max", "2", "--order", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,D_1,D_2,D_total\n0,0/1,0/1,0/1\n1,1/1,0/1,1/1\n2,2/1,1/2,5/2\n"
                   "3,3/1,3/2,14/3\n");
}

TEST(Cli, DecompressAndCompress) {
  const auto chain = write_temp("chain.json", R"({"k":2,"n":2,"targets":[[0],[1]]})");
  const Result csv = run_cli({"decompress", "--input", chain});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out, "level,count\n1,2\n2,1\n");

  const Result json = run_cli({"decompress", "--input", chain, "--format", "json"});
  const Json j = Json::parse(json.out);
  EXPECT_EQ(j["size"], 3);
  EXPECT_EQ(j["tree"].dump(), "[[null,null],[null,null]]");

  const auto tree = write_temp("tree.json", j["tree"].dump());
  const Result dag = run_cli({"compress", "--input", tree});
  EXPECT_EQ(dag.code, 0);
  EXPECT_EQ(Json::parse(dag.out)["nodes"].dump(), "[[],[0,0],[1,1]]");

  const auto dag_file = write_temp("dag.json", R"({"k":2,"nodes":[[],[0,0],[1,1]]})");
  EXPECT_EQ(run_cli({"decompress", "--input", dag_file}).out, csv.out);
}

TEST(Cli, ExitCodes) {
  const auto bad = write_temp("bad.json", R"({"k":2,"n":2,"targets":[[0],[5]]})");
  const Result invalid = run_cli({"decompress", "--input", bad});
  EXPECT_EQ(invalid.code, 1);
  EXPECT_NE(invalid.err.find("targets[1][0]"), std::string::npos) << invalid.err;

  const auto big = write_temp("big.json",
                              R"({"k":2,"n":30,"targets":[[0],[1],[2],[3],[4],[5],[6],[7],[8],)"
                              R"([9],[10],[11],[12],[13],[14],[15],[16],[17],[18],[19],[20],)"
                              R"([21],[22],[23],[24],[25],[26],[27],[28],[29]]})");
  EXPECT_EQ(run_cli({"decompress", "--input", big, "--budget", "1000"}).code, 3);
  EXPECT_EQ(run_cli({"stats", "--k", "1"}).code, 1);
  EXPECT_EQ(run_cli({"stats", "--format", "xml"}).code, 1);
  EXPECT_EQ(run_cli({"nonsense"}).code, 1);
  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 1);
  EXPECT_EQ(run_cli({"decompress", "--input", "/nonexistent/file.json"}).code, 1);
}

TEST(Cli, Sample) {
  const Result r = run_cli({"sample", "--k", "2", "--n", "50", "--count", "10000", "--seed", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("median_size,60459\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("note,"), std::string::npos);
}

TEST(Cli, VerifyAll) {
  const Result r = run_cli({"verify", "--suite", "all", "--max-n", "6"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, OutFile) {
  const auto path =
      (std::filesystem::temp_directory_path() / "chainlab_cli_test_out.csv").string();
  std::filesystem::remove(path);
  const Result r = run_cli({"compressible", "--max-m", "3", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "m,count\n1,1\n2,1\n3,1\n");
}

}  // namespace
}  // namespace chainlab
