// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include "clbound/cli.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "clbound/error.hpp"
#include "clbound/geometry.hpp"
#include "clbound/mesh.hpp"
#include "clbound/parallel.hpp"

namespace clbound::cli {

namespace {

constexpr double kPi = std::numbers::pi;

const std::array<double, 7> kTableThetas = {kPi / 6, kPi / 4, kPi / 3, kPi / 2,
                                            2 * kPi / 3, 3 * kPi / 4, 5 * kPi / 6};

double round_significant(double value, bool full_precision) {
  if (full_precision || !std::isfinite(value)) return value;
  return std::strtod(format_number(value, false).c_str(), nullptr);
}

nlohmann::ordered_json number_or_null(const std::optional<double>& v, bool full_precision) {
  if (!v) return nullptr;
  return round_significant(*v, full_precision);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

std::vector<int> subdivisions_or(const RunConfig& config, std::vector<int> fallback) {
  return config.subdivisions.empty() ? fallback : config.subdivisions;
}

/// One bound computation per (theta, N) pair, spread over the worker pool.
std::vector<BoundReport> run_table(const RunConfig& config, const std::vector<double>& thetas,
                                   const std::vector<int>& subdivisions, bool lower) {
  struct Task {
    double theta;
    int n;
  };
  std::vector<Task> tasks;
  for (int n : subdivisions) {
    for (double t : thetas) tasks.push_back({t, n});
  }
  std::vector<BoundReport> reports(tasks.size());
  parallel_for(tasks.size(), config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      RunConfig local = config;
      local.lower_bound = lower;
      PipelineOptions opts = pipeline_options(local, tasks[k].n, tasks[k].theta);
      opts.threads = 1;
      reports[k] = compute_bounds(config.alpha, tasks[k].theta, config.h, opts);
    }
  });
  return reports;
}

std::string optional_number(const std::optional<double>& v, bool full_precision) {
  return v ? format_number(*v, full_precision) : std::string("nan");
}

}  // namespace

double parse_theta(std::string_view text) {
  static const std::regex kPiForm(R"(^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)",
                                  std::regex::icase);
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kPiForm)) {
    const double num = m[1].length() ? std::stod(m[1].str()) : 1.0;
    const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (den == 0.0) throw UsageError("theta: division by zero in '" + s + "'");
    return num * kPi / den;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("theta: cannot parse '" + s + "'");
  }
  if (s.find_first_not_of(" \t", used) != std::string::npos) {
    throw UsageError("theta: cannot parse '" + s + "'");
  }
  return value;
}

std::string theta_label(double theta, bool full_precision) {
  for (int den = 1; den <= 12; ++den) {
    const double k = theta * den / kPi;
    const double rounded = std::round(k);
    if (rounded >= 1 && std::abs(k - rounded) < 1e-12 * std::max(1.0, k)) {
      const int num = static_cast<int>(rounded);
      if (std::gcd(num, den) != 1) continue;
      std::string label = (num == 1 ? std::string() : std::to_string(num)) + "pi";
      if (den != 1) label += "/" + std::to_string(den);
      return label;
    }
  }
  return format_number(theta, full_precision);
}

std::string format_number(double value, bool full_precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), full_precision ? "%.17g" : "%.5g", value);
  return buf.data();
}

nlohmann::ordered_json to_json(const BoundReport& r, bool full_precision, bool include_minimizer) {
  auto num = [&](double v) { return round_significant(v, full_precision); };
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha;
  j["theta"] = r.theta;
  j["h"] = r.h;
  j["subdivisions"] = r.subdivisions;
  j["lambda_hB"] = num(r.lambda_hB);
  j["lambda_lb_thm31"] = num(r.lambda_lb_thm31);
  j["lambda_lb_cor31"] = num(r.lambda_lb_cor31);
  j["c_fm_used"] = num(r.c_fm_used);
  j["cl_upper"] = num(r.cl_upper);
  j["cl_lower"] = number_or_null(r.cl_lower, full_precision);
  j["cl_lower_fit"] = number_or_null(r.cl_lower_fit, full_precision);
  j["cl_lower_extremal"] = number_or_null(r.cl_lower_extremal, full_precision);
  j["fit_degree"] = r.fit_degree ? nlohmann::ordered_json(*r.fit_degree) : nlohmann::ordered_json(nullptr);
  j["cl_upper_raw"] = num(r.cl_upper_raw);
  j["degenerate_lower"] = num(r.degenerate_lower);
  j["argmax_row"] = r.argmax_row;
  j["near_max_rows"] = r.near_max_rows;
  j["warnings"] = r.warnings;
  if (include_minimizer) {
    std::vector<double> x(r.minimizer.data(), r.minimizer.data() + r.minimizer.size());
    j["minimizer"] = x;
  }
  return j;
}

PipelineOptions pipeline_options(const RunConfig& config, int subdivisions, double theta) {
  PipelineOptions opts;
  opts.subdivisions = subdivisions;
  if (config.lower_bound) opts.fit_degree = config.degree.value_or(default_fit_degree(theta));
  opts.samples_per_side = config.samples;
  opts.threads = config.threads;
  opts.method = config.method;
  opts.lower_method = config.lower_method;
  return opts;
}

void cmd_bounds(const RunConfig& config, std::ostream& out) {
  const int n = subdivisions_or(config, {32}).front();
  if (!config.dump_mesh.empty()) {
    const Mesh mesh = uniform_mesh(make_triangle(config.alpha, config.theta, config.h), n);
    std::ofstream vertices(config.dump_mesh + "_vertices.csv");
    std::ofstream elements(config.dump_mesh + "_elements.csv");
    if (!vertices || !elements) {
      throw UsageError("cannot write mesh files with prefix '" + config.dump_mesh + "'");
    }
    write_mesh_csv(mesh, vertices, elements);
  }
  const BoundReport r = compute_bounds(config.alpha, config.theta, config.h,
                                       pipeline_options(config, n, config.theta));
  const bool full = config.full_precision;
  if (config.format == Format::kJson) {
    out << to_json(r, full, config.include_minimizer).dump(2) << '\n';
    return;
  }
  write_csv_row(out, {"alpha", "theta", "h", "N", "lambda_hB", "lambda_lb_thm31",
                      "lambda_lb_cor31", "c_fm_used", "cl_upper", "cl_lower", "fit_degree",
                      "cl_upper_raw", "degenerate_lower", "argmax_row"});
  write_csv_row(out, {format_number(r.alpha, full), format_number(r.theta, full),
                      format_number(r.h, full), std::to_string(r.subdivisions),
                      format_number(r.lambda_hB, full), format_number(r.lambda_lb_thm31, full),
                      format_number(r.lambda_lb_cor31, full), format_number(r.c_fm_used, full),
                      format_number(r.cl_upper, full), optional_number(r.cl_lower, full),
                      r.fit_degree ? std::to_string(*r.fit_degree) : std::string("nan"),
                      format_number(r.cl_upper_raw, full),
                      format_number(r.degenerate_lower, full), std::to_string(r.argmax_row)});
}

void cmd_table1(const RunConfig& config, std::ostream& out) {
  const std::vector<double> thetas(kTableThetas.begin(), kTableThetas.end());
  const auto reports = run_table(config, thetas, subdivisions_or(config, {32, 64}), false);
  const bool full = config.full_precision;
  if (config.format == Format::kJson) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      rows.push_back({{"theta", theta_label(r.theta)},
                      {"N", r.subdivisions},
                      {"lambda_hB", round_significant(r.lambda_hB, full)},
                      {"thm31", round_significant(r.lambda_lb_thm31, full)},
                      {"cor31", round_significant(r.lambda_lb_cor31, full)}});
    }
    out << rows.dump(2) << '\n';
    return;
  }
  write_csv_row(out, {"theta", "N", "lambda_hB", "thm31", "cor31"});
  for (const auto& r : reports) {
    write_csv_row(out, {theta_label(r.theta, full), std::to_string(r.subdivisions),
                        format_number(r.lambda_hB, full), format_number(r.lambda_lb_thm31, full),
                        format_number(r.lambda_lb_cor31, full)});
  }
}

void cmd_table2(const RunConfig& config, std::ostream& out) {
  const std::vector<double> thetas(kTableThetas.begin(), kTableThetas.end());
  const auto reports = run_table(config, thetas, subdivisions_or(config, {32, 64}), true);
  const bool full = config.full_precision;
  if (config.format == Format::kJson) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      rows.push_back({{"theta", theta_label(r.theta)},
                      {"N", r.subdivisions},
                      {"d", *r.fit_degree},
                      {"cl_lower", number_or_null(r.cl_lower, full)},
                      {"lambda_hB", round_significant(r.lambda_hB, full)},
                      {"cl_upper", round_significant(r.cl_upper, full)}});
    }
    out << rows.dump(2) << '\n';
    return;
  }
  write_csv_row(out, {"theta", "N", "d", "cl_lower", "lambda_hB", "cl_upper"});
  for (const auto& r : reports) {
    write_csv_row(out, {theta_label(r.theta, full), std::to_string(r.subdivisions),
                        std::to_string(*r.fit_degree), optional_number(r.cl_lower, full),
                        format_number(r.lambda_hB, full), format_number(r.cl_upper, full)});
  }
}

void cmd_contour(const RunConfig& config, std::ostream& out) {
  const int n = subdivisions_or(config, {16}).front();
  const ContourGrid& g = config.grid;
  struct Point {
    double x, y;
    double value = std::numeric_limits<double>::quiet_NaN();
  };
  std::vector<Point> points;
  for (int k = 1; k <= g.ny; ++k) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.nx == 1 ? g.x_min : g.x_min + (g.x_max - g.x_min) * i / (g.nx - 1);
      points.push_back({x, g.y_max * k / g.ny});
    }
  }
  parallel_for(points.size(), config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Point& p = points[k];
      const double alpha = std::hypot(p.x, p.y);
      const double theta = std::atan2(p.y, p.x);
      if (!(p.y > 0.0) || !(alpha > 1e-12)) continue;
      PipelineOptions opts;
      opts.subdivisions = n;
      opts.method = config.method;
      try {
        p.value = compute_bounds(alpha, theta, config.h, opts).cl_upper;
      } catch (const Error&) {
        // degenerate point, keeps the sentinel
      }
    }
  });
  const bool full = config.full_precision;
  if (config.format == Format::kJson) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& p : points) {
      rows.push_back({{"x", round_significant(p.x, full)},
                      {"y", round_significant(p.y, full)},
                      {"cl_upper", std::isnan(p.value) ? nlohmann::ordered_json(nullptr)
                                                       : nlohmann::ordered_json(round_significant(p.value, full))}});
    }
    out << rows.dump(2) << '\n';
    return;
  }
  write_csv_row(out, {"x", "y", "cl_upper"});
  for (const auto& p : points) {
    write_csv_row(out, {format_number(p.x, full), format_number(p.y, full),
                        format_number(p.value, full)});
  }
}

void cmd_sweep(const RunConfig& config, std::ostream& out) {
  const auto reports = run_table(config, {config.theta},
                                 subdivisions_or(config, {4, 8, 16, 32, 64}), config.lower_bound);
  const bool full = config.full_precision;
  if (config.format == Format::kJson) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      rows.push_back({{"N", r.subdivisions},
                      {"cl_lower", number_or_null(r.cl_lower, full)},
                      {"cl_upper", round_significant(r.cl_upper, full)}});
    }
    out << rows.dump(2) << '\n';
    return;
  }
  write_csv_row(out, {"N", "cl_lower", "cl_upper"});
  for (const auto& r : reports) {
    write_csv_row(out, {std::to_string(r.subdivisions), optional_number(r.cl_lower, full),
                        format_number(r.cl_upper, full)});
  }
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig config;
  config.threads = default_thread_count();

  CLI::App app{"Two-sided bounds for the max-norm Lagrange interpolation error constant", "clbound"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");

  std::string theta_text;
  std::string format_text = "json";
  std::string method_text = "selected-inverse";
  std::string lower_text = "best";
  std::optional<int> threads;

  auto common = [&](CLI::App* sub, bool shape, bool lower) {
    sub->add_option("--h", config.h, "Length of the edge p1p2")
        ->check(CLI::PositiveNumber);
    if (shape) {
      sub->add_option("--alpha", config.alpha, "Ratio |p1p3| / |p1p2|")
          ->check(CLI::PositiveNumber);
      sub->add_option("--theta", theta_text, "Angle at p1: radians or 'pi/6', '2pi/3', ...");
    }
    sub->add_option("--N", config.subdivisions, "Subdivisions per side")
        ->check(CLI::PositiveNumber)
        ->delimiter(',');
    if (lower) {
      sub->add_option("--degree", config.degree, "Certificate polynomial degree")
          ->check(CLI::Range(2, 30));
      sub->add_flag("!--no-lower", config.lower_bound, "Skip the polynomial lower bound");
      sub->add_option("--samples", config.samples, "Sup-norm lattice points per side")
          ->check(CLI::Range(2, 100000));
      sub->add_option("--lower-method", lower_text, "best | fit | extremal")
          ->check(CLI::IsMember({"best", "fit", "extremal"}));
    }
    sub->add_option("--format", format_text, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", config.output, "Output file (default: standard output)");
    sub->add_option("--threads", threads, "Worker threads (env CLBOUND_THREADS)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--full-precision", config.full_precision, "17 significant digits");
    sub->add_option("--method", method_text, "selected-inverse | row-solves")
        ->check(CLI::IsMember({"selected-inverse", "row-solves"}));
  };

  auto* bounds = app.add_subcommand("bounds", "Bounds for one triangle");
  common(bounds, true, true);
  bounds->add_option("--dump-mesh", config.dump_mesh, "Write <prefix>_vertices.csv and <prefix>_elements.csv");
  bounds->add_flag("--include-minimizer", config.include_minimizer,
                   "Add the minimizer coefficients to the JSON report");

  auto* table1 = app.add_subcommand("table1", "lambda bounds for the seven reference shapes");
  common(table1, false, false);
  auto* table2 = app.add_subcommand("table2", "C^L bounds for the seven reference shapes");
  common(table2, false, true);

  auto* contour = app.add_subcommand("contour", "C^L upper bound over positions of p3");
  common(contour, false, false);
  contour->add_option("--x-min", config.grid.x_min);
  contour->add_option("--x-max", config.grid.x_max);
  contour->add_option("--y-max", config.grid.y_max)->check(CLI::PositiveNumber);
  contour->add_option("--nx", config.grid.nx)->check(CLI::PositiveNumber);
  contour->add_option("--ny", config.grid.ny)->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Bounds for one shape over several N");
  common(sweep, true, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help, ignored;
    app.exit(e, help, ignored);
    throw HelpRequested(help.str());
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream help, ignored;
    app.exit(e, help, ignored);
    throw HelpRequested(help.str());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!theta_text.empty()) config.theta = parse_theta(theta_text);
  if (!(config.theta > 0.0 && config.theta < kPi)) throw UsageError("theta must lie in (0, pi)");
  if (threads) config.threads = *threads;
  config.format = format_text == "csv" ? Format::kCsv : Format::kJson;
  config.method = method_text == "row-solves" ? DiagonalMethod::kRowSolves
                                              : DiagonalMethod::kSelectedInverse;
  config.lower_method = lower_text == "fit"        ? LowerBoundMethod::kFit
                        : lower_text == "extremal" ? LowerBoundMethod::kExtremal
                                                   : LowerBoundMethod::kBest;
  if (config.command == "bounds" && config.subdivisions.size() > 1) {
    throw UsageError("bounds takes a single --N");
  }
  if (config.command == "contour" && config.grid.x_max < config.grid.x_min) {
    throw UsageError("--x-max must not be below --x-min");
  }
  return config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "clbound: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.output.empty()) {
    file.open(config.output);
    if (!file) {
      err << "clbound: cannot open '" << config.output << "' for writing\n";
      return 2;
    }
    sink = &file;
  }

  try {
    if (config.command == "bounds") cmd_bounds(config, *sink);
    else if (config.command == "table1") cmd_table1(config, *sink);
    else if (config.command == "table2") cmd_table2(config, *sink);
    else if (config.command == "contour") cmd_contour(config, *sink);
    else cmd_sweep(config, *sink);
  } catch (const UsageError& e) {
    err << "clbound: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "clbound: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidParameter ? 2 : 1;
  } catch (const std::exception& e) {
    err << "clbound: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace clbound::cli
