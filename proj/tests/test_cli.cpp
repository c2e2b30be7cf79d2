// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "clbound/cli.hpp"
#include "clbound/parallel.hpp"

namespace clbound::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "clbound");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string field;
    while (std::getline(h, field, ',')) header.push_back(field);
  }
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    std::string field;
    std::map<std::string, std::string> row;
    for (const auto& name : header) {
      std::getline(r, field, ',');
      row[name] = field;
    }
    rows.push_back(row);
  }
  return rows;
}

TEST(ParseTheta, Forms) {
  EXPECT_DOUBLE_EQ(parse_theta("pi/6"), kPi / 6);
  EXPECT_DOUBLE_EQ(parse_theta("2pi/3"), 2 * kPi / 3);
  EXPECT_DOUBLE_EQ(parse_theta("2*pi/3"), 2 * kPi / 3);
  EXPECT_DOUBLE_EQ(parse_theta("PI"), kPi);
  EXPECT_DOUBLE_EQ(parse_theta("0.5pi"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_theta("1.25"), 1.25);
  EXPECT_THROW(parse_theta("pi/0"), UsageError);
  EXPECT_THROW(parse_theta("abc"), UsageError);
  EXPECT_THROW(parse_theta("1.2x"), UsageError);
}

TEST(ThetaLabel, Fractions) {
  EXPECT_EQ(theta_label(kPi / 6), "pi/6");
  EXPECT_EQ(theta_label(3 * kPi / 4), "3pi/4");
  EXPECT_EQ(theta_label(kPi / 2), "pi/2");
  EXPECT_EQ(theta_label(1.0), "1");
}

TEST(FormatNumber, Digits) {
  EXPECT_EQ(format_number(0.409432123, false), "0.40943");
  EXPECT_EQ(format_number(15.457123, false), "15.457");
  EXPECT_EQ(format_number(std::nan(""), false), "nan");
  EXPECT_EQ(format_number(0.1, true), "0.10000000000000001");
}

TEST(Run, BoundsJson) {
  const Result r = invoke({"bounds", "--alpha", "1", "--theta", "pi/2", "--N", "8", "--degree", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"alpha", "theta", "h", "subdivisions", "lambda_hB", "lambda_lb_thm31",
                          "lambda_lb_cor31", "c_fm_used", "cl_upper", "cl_lower", "fit_degree",
                          "warnings", "argmax_row", "near_max_rows"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["subdivisions"], 8);
  EXPECT_EQ(j["fit_degree"], 5);
  EXPECT_LE(j["cl_lower"].get<double>(), j["cl_upper"].get<double>());
  EXPECT_FALSE(j.contains("minimizer"));
}

TEST(Run, BoundsIncludesMinimizerOnRequest) {
  const Result r = invoke({"bounds", "--N", "2", "--no-lower", "--include-minimizer"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["minimizer"].size(), 12u);
  EXPECT_TRUE(j["cl_lower"].is_null());
}

TEST(Run, UsageErrors) {
  EXPECT_EQ(invoke({"bounds", "--N", "0"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "--theta", "foo"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "--theta", "pi"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "--alpha", "-1"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bounds", "--N", "4,8"}).code, 2);
  const Result r = invoke({"bounds", "--N", "0"});
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(Run, ComputationalFailure) {
  const Result r = invoke({"bounds", "--N", "4", "--degree", "6", "--lower-method", "fit"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("insufficient"), std::string::npos) << r.err;
}

TEST(Run, Help) {
  const Result r = invoke({"bounds", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--theta"), std::string::npos);
}

TEST(Run, Deterministic) {
  const std::vector<std::string> args = {"table2", "--N", "6", "--degree", "4", "--format", "csv"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(invoke(threaded).out, a.out);
}

TEST(Run, OutputFileAndMeshDump) {
  const auto dir = std::filesystem::temp_directory_path() / "clbound_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "report.json").string();
  const std::string prefix = (dir / "mesh").string();
  const Result r = invoke({"bounds", "--N", "3", "--no-lower", "--output", out, "--dump-mesh", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream report(out);
  EXPECT_NO_THROW(nlohmann::json::parse(report));
  EXPECT_TRUE(std::filesystem::exists(prefix + "_vertices.csv"));
  EXPECT_TRUE(std::filesystem::exists(prefix + "_elements.csv"));
  std::filesystem::remove_all(dir);
}

TEST(LambdaTableCommand, OrderingAndShape) {
  const Result r = invoke({"table1", "--N", "8,12", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 14u);
  EXPECT_EQ(rows.front().at("theta"), "pi/6");
  EXPECT_EQ(rows.back().at("theta"), "5pi/6");
  for (const auto& row : rows) {
    const double lambda = std::stod(row.at("lambda_hB"));
    const double thm = std::stod(row.at("thm31"));
    const double cor = std::stod(row.at("cor31"));
    EXPECT_LE(thm, cor);
    EXPECT_LE(cor, lambda);
  }
}

TEST(BoundTableCommand, Columns) {
  const Result r = invoke({"table2", "--N", "6", "--degree", "4", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "theta,N,d,cl_lower,lambda_hB,cl_upper");
  for (const auto& row : parse_csv(r.out)) {
    EXPECT_LE(std::stod(row.at("cl_lower")), std::stod(row.at("cl_upper")));
  }
}

TEST(Contour, SymmetryAndConsistency) {
  const Result r = invoke({"contour", "--N", "6", "--nx", "5", "--ny", "3", "--x-min", "-0.5",
                           "--x-max", "1.5", "--y-max", "1.5", "--format", "csv",
                           "--full-precision"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 15u);
  std::map<std::pair<double, double>, double> value;
  for (const auto& row : rows) {
    value[{std::stod(row.at("x")), std::stod(row.at("y"))}] = std::stod(row.at("cl_upper"));
  }
  for (const auto& [p, v] : value) {
    const auto mirror = value.find({1.0 - p.first, p.second});
    ASSERT_NE(mirror, value.end());
    EXPECT_NEAR(v, mirror->second, 1e-3 * v);
  }
  const Result b = invoke({"bounds", "--theta", "pi/2", "--N", "6", "--no-lower", "--format", "csv",
                           "--full-precision"});
  const double at_right = std::stod(parse_csv(b.out).front().at("cl_upper"));
  EXPECT_NEAR(value.at({0.0, 1.0}), at_right, 1e-12);
}

TEST(Contour, GrowsAsApexFlattens) {
  const Result r = invoke({"contour", "--N", "4", "--nx", "1", "--x-min", "0.5", "--x-max", "0.5",
                           "--ny", "8", "--y-max", "0.8", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(std::stod(rows[i].at("cl_upper")), std::stod(rows[i - 1].at("cl_upper")));
  }
  EXPECT_GT(std::stod(rows.front().at("cl_upper")), 2 * std::stod(rows.back().at("cl_upper")));
}

TEST(Sweep, MatchesBounds) {
  const Result s = invoke({"sweep", "--theta", "pi/3", "--N", "8", "--degree", "6", "--format",
                           "csv", "--full-precision"});
  const Result b = invoke({"bounds", "--theta", "pi/3", "--N", "8", "--degree", "6", "--format",
                           "csv", "--full-precision"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto srow = parse_csv(s.out).front();
  const auto brow = parse_csv(b.out).front();
  EXPECT_EQ(srow.at("cl_upper"), brow.at("cl_upper"));
  EXPECT_EQ(srow.at("cl_lower"), brow.at("cl_lower"));
}

TEST(Sweep, GapNarrowsAndUpperBoundDecreases) {
  const Result r = invoke({"sweep", "--theta", "pi/2", "--N", "32,64", "--degree", "9",
                           "--format", "csv", "--full-precision"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  const double gap32 = std::stod(rows[0].at("cl_upper")) - std::stod(rows[0].at("cl_lower"));
  const double gap64 = std::stod(rows[1].at("cl_upper")) - std::stod(rows[1].at("cl_lower"));
  EXPECT_LT(gap64, gap32);

  const Result eq = invoke({"sweep", "--theta", "pi/3", "--N", "32,64", "--no-lower",
                            "--format", "csv"});
  const auto eq_rows = parse_csv(eq.out);
  EXPECT_NEAR(std::stod(eq_rows[0].at("cl_upper")), 0.25485, 2e-5);
  EXPECT_NEAR(std::stod(eq_rows[1].at("cl_upper")), 0.25438, 2e-5);
}

TEST(Threads, EnvironmentOverride) {
  ::setenv("CLBOUND_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), 3);
  ::unsetenv("CLBOUND_THREADS");
  EXPECT_GE(default_thread_count(), 1);
}

}  // namespace
}  // namespace clbound::cli
