// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "clbound/bounds.hpp"
#include "clbound/pipeline.hpp"

namespace clbound::cli {

enum class Format { kJson, kCsv };

/// Raised for invalid command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when help was requested; carries the rendered text. Exit code 0.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ContourGrid {
  double x_min = -0.5;
  double x_max = 1.5;
  double y_max = 1.5;
  int nx = 21;  // x samples, endpoints included
  int ny = 15;  // y = y_max * k / ny for k = 1..ny
};

struct RunConfig {
  std::string command;
  double alpha = 1.0;
  double theta = 1.5707963267948966;
  double h = 1.0;
  std::vector<int> subdivisions;  // empty: command default
  std::optional<int> degree;      // empty: keyed by theta
  bool lower_bound = true;
  int samples = 200;
  Format format = Format::kJson;
  std::string output;  // empty: standard output
  int threads = 1;
  bool full_precision = false;
  bool include_minimizer = false;
  std::string dump_mesh;  // file prefix for the mesh CSV dump
  DiagonalMethod method = DiagonalMethod::kSelectedInverse;
  LowerBoundMethod lower_method = LowerBoundMethod::kBest;
  ContourGrid grid;
};

/// Accepts radians or multiples of pi: "pi", "pi/6", "2pi/3", "2*pi/3".
double parse_theta(std::string_view text);

/// "kpi/m" for theta = k*pi/m with m <= 12, otherwise the formatted number.
std::string theta_label(double theta, bool full_precision = false);

/// 5 significant digits, or 17 with full precision.
std::string format_number(double value, bool full_precision);

nlohmann::ordered_json to_json(const BoundReport& report, bool full_precision,
                       bool include_minimizer = false);

PipelineOptions pipeline_options(const RunConfig& config, int subdivisions, double theta);

void cmd_bounds(const RunConfig& config, std::ostream& out);
void cmd_table1(const RunConfig& config, std::ostream& out);
void cmd_table2(const RunConfig& config, std::ostream& out);
void cmd_contour(const RunConfig& config, std::ostream& out);
void cmd_sweep(const RunConfig& config, std::ostream& out);

/// Parses arguments (argv[0] is the program name) and fills a validated config.
RunConfig parse_args(const std::vector<std::string>& args);

/// Full front end. Returns 0 on success, 2 on usage errors and 1 on
/// computational failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clbound::cli
