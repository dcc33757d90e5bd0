#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

using nlohmann::json;

const std::string kData = POLYA_DATA_DIR;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "polya_zeros");
  std::ostringstream out, err;
  const int status = polya::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("polya_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

TEST(Cli, RootsOfZSquaredPlusOne) {
  const auto r = run({"roots", kData + "/z2_plus_1.json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["roots"].size(), 2u);
  EXPECT_NEAR(j["roots"][0]["z"][1].get<double>(), -1.0, 1e-14);
  EXPECT_EQ(j["roots"][1]["mult"], 1);
  EXPECT_TRUE(j["converged"].get<bool>());
}

TEST(Cli, SumsCsv) {
  const auto r = run({"sums", kData + "/z2_plus_1.json", "--kmax", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "k,re_s_k,im_s_k,s_tilde_k");
  EXPECT_EQ(row1.substr(0, 2), "1,");
  EXPECT_EQ(row2.substr(row2.rfind(',') + 1), "2");

  const auto c = run({"sums", kData + "/z2_plus_1.json", "--kmax", "2", "--source", "coeffs"});
  ASSERT_EQ(c.status, 0);
  EXPECT_NE(c.out.find("2,-2,0,\n"), std::string::npos) << c.out;
}

TEST(Cli, JensenAndAppell) {
  const auto j = run({"jensen", kData + "/exp_series.json", "-n", "3"});
  ASSERT_EQ(j.status, 0) << j.err;
  EXPECT_EQ(json::parse(j.out)["coeffs"][2][0].get<double>(), 3.0);

  const auto a = run({"appell", kData + "/exp_series.json", "-n", "2", "--scale-by-n"});
  ASSERT_EQ(a.status, 0) << a.err;
  const auto c = json::parse(a.out)["coeffs"];
  ASSERT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c[0][0].get<double>(), 0.25);
  EXPECT_DOUBLE_EQ(c[2][0].get<double>(), 1.0);
}

TEST(Cli, ClassifyExpAsLP) {
  const auto r = run({"classify", kData + "/exp_series.json", "--class", "lp", "--nmax", "20"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "consistent");
  EXPECT_EQ(j["counts"].size(), 21u);
}

TEST(Cli, ClassifyWritesCountsCsv) {
  const auto dir = temp_dir();
  const auto out = (dir / "verdict.json").string();
  const auto r = run({"classify", kData + "/exp_times_1pz2.json", "--class", "lp*", "--nmax", "25", "-o", out});
  ASSERT_EQ(r.status, 0) << r.err;
  std::ifstream csv(out + ".csv");
  std::string header, line, last;
  std::getline(csv, header);
  EXPECT_EQ(header, "n,N_n");
  while (std::getline(csv, line)) last = line;
  EXPECT_EQ(last, "25,2");
  std::ifstream js(out);
  EXPECT_EQ(json::parse(js)["stabilized_value"], 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, MonomialFailsTheFirstTheorem) {
  const auto r = run({"converge", "--gen", "monomial", "--theorem", "T1.1"});
  EXPECT_EQ(r.status, 2);
  const auto j = json::parse(r.err);
  EXPECT_EQ(j["error"], "HypothesisViolated");
  EXPECT_EQ(j["hypothesis"], "nonzero limit coefficient");
  EXPECT_FALSE(j["report"]["conclusion_checked"].get<bool>());
}

TEST(Cli, ConvergeReportAndPlot) {
  const auto dir = temp_dir();
  const auto svg = (dir / "decay.svg").string();
  const auto r = run({"converge", "--gen", "jensen-of-exp", "--theorem", "T1.1", "--plot", svg});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["conclusion_holds"].get<bool>());
  EXPECT_EQ(j["window"], json({16, 32, 64, 128}));
  std::ifstream in(svg);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("<svg", 0), 0u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ConvergeFromFiles) {
  const auto dir = temp_dir();
  // f_n = 1 + z/n for n = 1..4.
  for (int n = 1; n <= 4; ++n)
    write_file(dir / ("f" + std::to_string(n) + ".json"),
               "{\"coeffs\": [[1, 0], [" + std::to_string(1.0 / n) + ", 0]]}");
  const auto r = run({"converge", "--files", (dir / "f*.json").string(), "--kmax", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["window"], json({1, 2, 3, 4}));
  EXPECT_EQ(j["strong"].size(), 6u);  // 3 pairs x 2 radii
  std::filesystem::remove_all(dir);
}

TEST(Cli, Cover) {
  const auto p = run({"cover", "--points", "0,1"});
  ASSERT_EQ(p.status, 0) << p.err;
  EXPECT_EQ(json::parse(p.out)["q"], 4);

  const auto c = run({"cover", "--N", "1", "--trials", "500", "--seed", "3"});
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_EQ(json::parse(c.out)["coverage"], 1.0);
}

TEST(Cli, GrowthConstant) {
  const auto r = run({"cp", "--radial", "61", "--angular", "144"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_GT(j["c_p"].get<double>(), 0.0);
  EXPECT_LT(j["relative_change"].get<double>(), 0.2);
}

TEST(Cli, ErrorsMapToExitCodes) {
  const auto dir = temp_dir();
  write_file(dir / "bad.json", "{\"coeffs\": [[1, 0], [2]]}");
  const auto bad = run({"roots", (dir / "bad.json").string()});
  EXPECT_EQ(bad.status, 2);
  const auto e = json::parse(bad.err);
  EXPECT_EQ(e["error"], "ParseError");
  EXPECT_EQ(e["where"], "/coeffs/1");

  EXPECT_EQ(run({"converge", "--gen", "no-such-generator"}).status, 2);
  EXPECT_EQ(run({"roots"}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"roots", kData + "/missing.json"}).status, 2);
  write_file(dir / "const.json", "{\"coeffs\": [[3, 0]]}");
  EXPECT_EQ(json::parse(run({"roots", (dir / "const.json").string()}).err)["error"], "DegreeZero");
  std::filesystem::remove_all(dir);
}

TEST(Cli, SeededRunsAreIdentical) {
  const std::vector<std::string> args{"converge", "--gen", "H-random", "--seed", "11", "--theorem", "T1.1"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto c = run({"converge", "--gen", "H-random", "--seed", "12", "--theorem", "T1.1"});
  EXPECT_NE(a.out, c.out);
}

}  // namespace
