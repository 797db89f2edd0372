#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "l1p/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = l1p::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const Run& r) {
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string sample(const std::string& name) { return std::string(L1P_SAMPLES_DIR) + "/" + name; }

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_wall_time(const std::string& s) {
  auto j = json::parse(s);
  j.erase("wall_time");
  return j.dump();
}

}  // namespace

TEST(Cli, IntervalConstantMeanZero) {
  const auto j = report(run({"interval", "--weight", "const:1", "--mode", "meanzero"}));
  EXPECT_EQ(j["schema"], "l1p-report/1");
  EXPECT_EQ(j["command"], "interval");
  EXPECT_NEAR(j["results"]["constant"]["value"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["results"]["argmax_x"]["value"].get<double>(), 0.5, 1e-8);
  EXPECT_EQ(j["results"]["constant"]["uncertainty"].get<double>(), 0.0);
  EXPECT_TRUE(j.contains("seed"));
  EXPECT_TRUE(j.contains("wall_time"));
}

TEST(Cli, IntervalOracleAndCsv) {
  const auto csv = temp("l1p_interval.csv");
  const auto j = report(run({"interval", "--weight", "exp:1", "--mode", "dirichlet", "--oracle", "512,50,3", "--csv", csv}));
  EXPECT_NEAR(j["results"]["oracle"]["max_ratio"]["value"].get<double>(), std::exp(1.0) - 1, 0.01);
  EXPECT_LT(std::abs(j["results"]["oracle_relative_gap"].get<double>()), 0.01);
  const auto text = read_file(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "x,objective,is_in_A");
  std::filesystem::remove(csv);
}

TEST(Cli, IntervalWeightFile) {
  const auto j = report(run({"interval", "--weight", "file:" + sample("ramp_weight.txt")}));
  EXPECT_GT(j["results"]["constant"]["value"].get<double>(), 0.0);
}

TEST(Cli, GeometrySimplexFourteen) {
  const auto j = report(run({"geometry", "simplex:14", "--samples", "200000", "--seed", "7"}));
  const auto& r = j["results"];
  EXPECT_NEAR(r["simplex_second_moment_bound"]["value"].get<double>(), 0.17078, 1e-5);
  EXPECT_GT(r["mean_dist_to_centroid"]["uncertainty"].get<double>(), 0.0);
  EXPECT_EQ(j["inputs"]["method"], "hit_and_run");
  EXPECT_EQ(j["seed"], 7);
}

TEST(Cli, GeometryFromFile) {
  const auto j = report(run({"geometry", sample("triangle.json"), "--samples", "2000"}));
  EXPECT_NEAR(j["results"]["volume"]["value"].get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(j["results"]["centroid"][0].get<double>(), 1.0 / 3, 1e-15);
}

TEST(Cli, MalformedBodyFileExitsTwoWithoutReport) {
  const auto r = run({"geometry", sample("malformed.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({"geometry", "no_such_file.json"}).code, 2);
  EXPECT_EQ(run({"geometry", "ball:2:-1"}).code, 2);
}

TEST(Cli, UnknownSubcommandPrintsUsage) {
  const auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, BadFlagValuesExitTwo) {
  EXPECT_EQ(run({"geometry", "simplex:3", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"geometry", "simplex:3", "--samples", "10"}).code, 2);
  EXPECT_EQ(run({"bounds", "simplex:3", "--p", "0.5"}).code, 2);
  EXPECT_EQ(run({"interval", "--weight", "exp:1", "--eps", "2"}).code, 2);
  EXPECT_EQ(run({"interval", "--weight", "const:1", "--mode", "neumann"}).code, 2);
  EXPECT_EQ(run({"cuts", "simplex:2"}).code, 2);
  EXPECT_EQ(run({"cuts", "simplex:2", "--cut", "1,0"}).code, 2);
}

TEST(Cli, CutsEvaluateAndSearch) {
  const auto csv = temp("l1p_cuts.csv");
  const auto j = report(run({"cuts", sample("thin_rectangle.json"), "--cut", "1,0,0.5", "--search", "--csv", csv}));
  EXPECT_NEAR(j["results"]["cut"]["quotient"]["value"].get<double>(), 0.0025, 1e-15);
  EXPECT_TRUE(j["results"]["cut"]["rewrite_identity"].get<bool>());
  EXPECT_NEAR(j["results"]["search"]["quotient"]["value"].get<double>(), 0.0025, 1e-12);
  const auto text = read_file(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "angle,offset,quotient");
  std::filesystem::remove(csv);
}

TEST(Cli, CsvToUnwritablePathExitsTwo) {
  const auto r = run({"verify", "sharpness", "--eps", "0.1", "--grid", "256", "--csv", "/nonexistent/dir/out.csv"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, BoundsJsonAndText) {
  const auto j = report(run({"bounds", "ball:2:1", "--p", "1,2,inf", "--samples", "5000"}));
  ASSERT_EQ(j["results"]["rows"].size(), 3u);
  EXPECT_EQ(j["results"]["rows"][2]["p"], "inf");
  EXPECT_FALSE(j["results"]["rows"][0]["cianchi_bracket"].is_null());
  const auto t = run({"bounds", "ball:2:1", "--format", "text", "--samples", "5000"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("acosta_duran"), std::string::npos);
}

TEST(Cli, VerifySharpnessSweep) {
  const auto csv = temp("l1p_sweep.csv");
  const auto j = report(run({"verify", "sharpness", "--eps", "0.2,0.1,0.05,0.01", "--grid", "2048", "--csv", csv}));
  const auto& rows = j["results"]["rows"];
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_GE(rows[3]["ratio"]["value"].get<double>(), 0.47);
  const auto text = read_file(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "eps,width,ratio");
  std::filesystem::remove(csv);
}

TEST(Cli, DeterministicReports) {
  const std::vector<std::vector<std::string>> cmds{
      {"geometry", "simplex:8", "--samples", "5000", "--seed", "3"},
      {"cuts", "simplex:3", "--search", "--samples", "5000", "--directions", "32", "--offsets", "20", "--seed", "4"},
      {"bounds", sample("octahedron.json"), "--samples", "3000", "--seed", "5", "--p", "1.5,inf"},
      {"interval", "--weight", "gauss:0.5", "--oracle", "256,20,1"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(without_wall_time(a.out), without_wall_time(b.out));
  }
}

TEST(Cli, ReportRoundTrips) {
  const auto r = run({"cuts", "ball:3:1", "--cut", "0,0,1,0.2", "--samples", "3000"});
  const auto j = report(r);
  EXPECT_EQ(json::parse(j.dump()), j);
  EXPECT_EQ(j.dump(2) + "\n", r.out);
}

TEST(Cli, EnvironmentOverridesDefaultSamples) {
  ::setenv(l1p::cli::kSamplesEnv, "1234", 1);
  const auto j = report(run({"geometry", "ball:2:1"}));
  ::unsetenv(l1p::cli::kSamplesEnv);
  EXPECT_EQ(j["inputs"]["samples"], 1234);
  const auto k = report(run({"geometry", "ball:2:1", "--samples", "2000"}));
  EXPECT_EQ(k["inputs"]["samples"], 2000);
}
