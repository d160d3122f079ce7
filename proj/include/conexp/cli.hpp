#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conexp/conexp.hpp"
#include "conexp/io.hpp"
#include "conexp/simulate.hpp"

namespace conexp::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kInputError = 2, kUnsupportedDimension = 3, kSizeLimit = 4 };

/// Parsed command line shared by all subcommands.
struct RunConfig {
  std::string input;
  std::string other_input;
  std::string cone;
  std::string output;
  std::vector<double> alphas;
  std::size_t directions = 0;
  double tolerance = kGeometricTolerance;
  unsigned threads = 1;

  std::string column;
  std::string direction;
  std::vector<std::string> points;
  bool compare = false;
  std::string method = "primal";
  std::size_t atoms = 0;
  std::string probabilities;

  GumbelSimulation simulation;
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& cell : io::detail::split(text, ',')) {
    double v = 0.0;
    if (!io::detail::parse_double(cell, v)) throw InputError(std::string("malformed ") + what + " '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError(std::string("empty ") + what);
  return out;
}

inline Vector parse_point(const std::string& text, std::size_t dim) {
  const auto values = parse_list(text, "point");
  if (values.size() != dim) {
    throw InputError("point '" + text + "' has " + std::to_string(values.size()) + " coordinates, expected " +
                     std::to_string(dim));
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline void require_alphas(const RunConfig& cfg) {
  if (cfg.alphas.empty()) throw InputError("at least one --alpha is required");
  for (double a : cfg.alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("--alpha values must lie in (0,1)");
  }
}

inline WeightedSample load_sample(const std::string& path) {
  if (path.empty()) throw InputError("--input is required");
  return io::to_sample(io::read_csv_file(path));
}

inline ConeSpec load_cone(const RunConfig& cfg, std::size_t dim) {
  if (cfg.cone.empty()) return ConeSpec::nonnegative_orthant(dim);
  auto cone = io::read_cone_file(cfg.cone);
  if (cone.dimension() != dim) throw InputError("cone dimension does not match the data");
  return cone;
}

inline json point_rank_json(const Vector& z, const RankResult& r) {
  json j;
  j["point"] = io::vector_json(z);
  j["downward_rank"] = io::number(r.downward);
  j["upward_rank"] = io::number(r.upward);
  json per = json::array();
  for (const auto& g : r.per_generator) {
    per.push_back({{"generator", g.generator}, {"downward", io::number(g.downward)}, {"upward", io::number(g.upward)}});
  }
  j["per_generator"] = per;
  return j;
}

inline json order_json(const OrderResult& r) {
  json j;
  j["holds"] = r.holds;
  if (r.witness) {
    j["witness"] = {{"alpha", io::number(r.witness->alpha)}, {"generator", r.witness->generator}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace detail

inline json cmd_expectile(const RunConfig& cfg) {
  detail::require_alphas(cfg);
  if (cfg.input.empty()) throw InputError("--input is required");
  const auto data = io::read_csv_file(cfg.input);
  const auto sample = io::to_sample(data);
  json out;
  out["command"] = "expectile";
  ScalarSample target = ScalarSample::uniform({0.0});
  if (!cfg.direction.empty()) {
    const Vector w = detail::parse_point(cfg.direction, sample.dimension());
    target = sample.project(w);
    out["direction"] = io::vector_json(w);
  } else {
    const std::string column = cfg.column.empty() ? data.columns.front() : cfg.column;
    std::size_t idx = data.columns.size();
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
      if (data.columns[c] == column) idx = c;
    }
    if (idx == data.columns.size()) throw InputError("column '" + column + "' not found");
    target = sample.project(Vector::Unit(static_cast<Eigen::Index>(sample.dimension()), static_cast<Eigen::Index>(idx)));
    out["column"] = column;
  }
  json results = json::array();
  for (double a : cfg.alphas) results.push_back({{"alpha", io::number(a)}, {"expectile", io::number(expectile(target, a))}});
  out["results"] = results;
  return out;
}

inline json cmd_cone_expectile(const RunConfig& cfg) {
  detail::require_alphas(cfg);
  const auto sample = detail::load_sample(cfg.input);
  const auto cone = detail::load_cone(cfg, sample.dimension());
  if (cfg.method != "primal" && cfg.method != "dual") throw InputError("--method must be 'primal' or 'dual'");
  json sets = json::array();
  for (double a : cfg.alphas) {
    if (cfg.method == "dual") {
      if (a > 0.5) throw ParameterError("the dual construction needs --alpha in (0, 1/2]");
      sets.push_back(io::set_json(dual_cone_expectile(sample, cone, a, SetKind::downward, cfg.threads), cfg.tolerance));
      sets.push_back(io::set_json(dual_cone_expectile(sample, cone, a, SetKind::upward, cfg.threads), cfg.tolerance));
    } else {
      sets.push_back(io::set_json(downward_expectile(sample, cone, a, cfg.threads), cfg.tolerance));
      sets.push_back(io::set_json(upward_expectile(sample, cone, 1.0 - a, cfg.threads), cfg.tolerance));
    }
  }
  return {{"command", "cone-expectile"}, {"method", cfg.method}, {"sets", sets}};
}

inline json cmd_risk(const RunConfig& cfg) {
  detail::require_alphas(cfg);
  const auto sample = detail::load_sample(cfg.input);
  const auto cone = detail::load_cone(cfg, sample.dimension());
  json sets = json::array();
  for (double a : cfg.alphas) sets.push_back(io::set_json(risk_measure(sample, cone, a, cfg.tolerance, cfg.threads), cfg.tolerance));
  return {{"command", "risk"}, {"sets", sets}};
}

inline json region_json(const WeightedSample& sample, double alpha, const RunConfig& cfg) {
  const auto region = region_vertices(sample, alpha, cfg.threads, cfg.tolerance);
  json j;
  j["alpha"] = io::number(alpha);
  j["beta"] = io::number(expectile_beta(alpha));
  j["region_vertices"] = io::vectors_json(region.vertices);
  if (sample.dimension() == 2) j["polygon"] = io::vectors_json(region.polygon);
  return j;
}

inline json cmd_region(const RunConfig& cfg) {
  detail::require_alphas(cfg);
  const auto sample = detail::load_sample(cfg.input);
  if (sample.dimension() > 3) throw UnsupportedDimensionError("regions are offered for d <= 3");
  json results = json::array();
  for (double a : cfg.alphas) {
    if (a > 0.5) throw ParameterError("region levels must lie in (0, 1/2]");
    json j = region_json(sample, a, cfg);
    if (cfg.directions > 0) {
      if (sample.dimension() != 2) throw UnsupportedDimensionError("--directions requires two-dimensional data");
      const auto region = region_vertices(sample, a, cfg.threads, cfg.tolerance);
      const auto outer = region_primal_polygon_2d(sample, a, cfg.directions, cfg.tolerance);
      j["primal"] = {{"directions", cfg.directions},
                     {"polygon", io::vectors_json(outer.polygon)},
                     {"hausdorff", io::number(hausdorff_2d(outer.polygon, region.polygon))}};
    }
    results.push_back(j);
  }
  return {{"command", "region"}, {"results", results}};
}

inline json cmd_scenarios(const RunConfig& cfg) {
  detail::require_alphas(cfg);
  std::optional<WeightedSample> sample;
  std::vector<double> p;
  if (!cfg.input.empty()) {
    sample = detail::load_sample(cfg.input);
    p = sample->probabilities();
  } else if (!cfg.probabilities.empty()) {
    p = detail::parse_list(cfg.probabilities, "probability list");
  } else if (cfg.atoms > 0) {
    p.assign(cfg.atoms, 1.0 / static_cast<double>(cfg.atoms));
  } else {
    throw InputError("scenarios needs --input, --probabilities or --atoms");
  }
  json results = json::array();
  for (double a : cfg.alphas) {
    if (a > 0.5) throw ParameterError("scenario levels must lie in (0, 1/2]");
    const auto poly = scenario_vertices(p, a, cfg.threads, cfg.tolerance);
    json j;
    j["alpha"] = io::number(a);
    j["beta"] = io::number(poly.beta);
    json verts = json::array();
    for (const auto& q : poly.vertices) verts.push_back(io::numbers_json(q));
    j["scenario_vertices"] = verts;
    if (sample && sample->dimension() <= 3) {
      const auto region = extreme_points(mapped_scenarios(*sample, poly), cfg.tolerance);
      j["region_vertices"] = io::vectors_json(region.vertices);
      if (sample->dimension() == 2) j["polygon"] = io::vectors_json(region.polygon);
    }
    results.push_back(j);
  }
  return {{"command", "scenarios"}, {"results", results}};
}

inline json cmd_rank(const RunConfig& cfg) {
  const auto sample = detail::load_sample(cfg.input);
  const auto cone = detail::load_cone(cfg, sample.dimension());
  if (cfg.points.empty()) throw InputError("rank needs at least one --point");
  std::vector<Vector> points;
  for (const auto& text : cfg.points) points.push_back(detail::parse_point(text, sample.dimension()));
  json results = json::array();
  for (const auto& z : points) results.push_back(detail::point_rank_json(z, expectile_rank(z, sample, cone)));
  json out{{"command", "rank"}, {"results", results}};
  if (cfg.compare) {
    if (points.size() != 2) throw InputError("--compare needs exactly two --point values");
    const auto inf = infer_cone_order(points[0], points[1], sample, cone);
    const auto& r = inf.report;
    out["comparison"] = {{"y", io::vector_json(points[0])},
                         {"z", io::vector_json(points[1])},
                         {"y_below_z_downward", r.y_below_z_downward},
                         {"z_below_y_downward", r.z_below_y_downward},
                         {"y_below_z_upward", r.y_below_z_upward},
                         {"z_below_y_upward", r.z_below_y_upward},
                         {"lower_indifferent", r.lower_indifferent},
                         {"upper_indifferent", r.upper_indifferent},
                         {"jointly_indifferent", r.jointly_indifferent},
                         {"hypothesis_met", inf.hypothesis_met},
                         {"verdict", to_string(inf.verdict)}};
  }
  return out;
}

inline json cmd_order(const RunConfig& cfg) {
  const auto x = detail::load_sample(cfg.input);
  if (cfg.other_input.empty()) throw InputError("order needs --other");
  const auto y = detail::load_sample(cfg.other_input);
  const auto cone = detail::load_cone(cfg, x.dimension());
  std::vector<double> grid = cfg.alphas.empty() ? default_alpha_grid() : cfg.alphas;
  const auto lower = lower_expectile_order(x, y, cone, grid, cfg.tolerance);
  const auto upper = upper_expectile_order(x, y, cone, grid, cfg.tolerance);
  return {{"command", "order"},
          {"grid", io::numbers_json(grid)},
          {"lower", detail::order_json(lower)},
          {"upper", detail::order_json(upper)}};
}

inline std::string cmd_simulate(const RunConfig& cfg) {
  const auto rows = simulate_gumbel(cfg.simulation);
  std::string out = "x1,x2\n";
  char buf[64];
  for (const auto& [a, b] : rows) {
    std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", a, b);
    out += buf;
  }
  return out;
}

/// Entry point shared by the executable and the tests. Writes the report to
/// --output when given, otherwise to `out`; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cone expectiles, expectile regions, risk measures and expectile ranks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "CSV data file (header; coordinate columns; optional weight)");
    sub->add_option("--cone", cfg.cone, "cone JSON file (default: nonnegative orthant)");
    sub->add_option("--alpha", cfg.alphas, "level(s); repeatable");
    sub->add_option("--tolerance", cfg.tolerance, "geometric tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
  };

  auto* expectile_cmd = app.add_subcommand("expectile", "univariate expectiles of a column or projection");
  add_common(expectile_cmd);
  expectile_cmd->add_option("--column", cfg.column, "target column (default: first)");
  expectile_cmd->add_option("--direction", cfg.direction, "projection direction, comma separated");

  auto* cone_cmd = app.add_subcommand("cone-expectile", "downward and upward cone expectiles");
  add_common(cone_cmd);
  cone_cmd->add_option("--method", cfg.method, "primal (scalar expectiles) or dual (scenario polytope)");

  auto* region_cmd = app.add_subcommand("region", "expectile region from the scenario polytope");
  add_common(region_cmd);
  region_cmd->add_option("--directions", cfg.directions, "also build the primal outer polygon")
      ->check(CLI::Range(std::size_t{8}, std::size_t{1000000}));

  auto* risk_cmd = app.add_subcommand("risk", "expectile risk measure");
  add_common(risk_cmd);

  auto* rank_cmd = app.add_subcommand("rank", "downward and upward expectile ranks of points");
  add_common(rank_cmd);
  rank_cmd->add_option("--point", cfg.points, "query point, comma separated; repeatable");
  rank_cmd->add_flag("--compare", cfg.compare, "compare the two given points");

  auto* order_cmd = app.add_subcommand("order", "lower and upper expectile orders on a level grid");
  add_common(order_cmd);
  order_cmd->add_option("--other", cfg.other_input, "CSV of the second sample");

  auto* scen_cmd = app.add_subcommand("scenarios", "vertices of the scenario polytope");
  add_common(scen_cmd);
  scen_cmd->add_option("--atoms", cfg.atoms, "number of equally weighted atoms");
  scen_cmd->add_option("--probabilities", cfg.probabilities, "base probabilities, comma separated");

  auto* sim_cmd = app.add_subcommand("simulate", "bivariate Gumbel-copula sample (normal and gamma marginals)");
  sim_cmd->add_option("--output", cfg.output, "CSV destination (default: stdout)");
  sim_cmd->add_option("--seed", cfg.simulation.seed, "random seed");
  sim_cmd->add_option("--n", cfg.simulation.n, "sample size");
  sim_cmd->add_option("--theta", cfg.simulation.theta, "Gumbel copula parameter (>= 1)");
  sim_cmd->add_option("--normal-mean", cfg.simulation.normal_mean);
  sim_cmd->add_option("--normal-sd", cfg.simulation.normal_sd);
  sim_cmd->add_option("--gamma-shape", cfg.simulation.gamma_shape);
  sim_cmd->add_option("--gamma-rate", cfg.simulation.gamma_rate);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    std::string text;
    if (sim_cmd->parsed()) {
      text = cmd_simulate(cfg);
    } else {
      json report;
      if (expectile_cmd->parsed()) report = cmd_expectile(cfg);
      if (cone_cmd->parsed()) report = cmd_cone_expectile(cfg);
      if (region_cmd->parsed()) report = cmd_region(cfg);
      if (risk_cmd->parsed()) report = cmd_risk(cfg);
      if (rank_cmd->parsed()) report = cmd_rank(cfg);
      if (order_cmd->parsed()) report = cmd_order(cfg);
      if (scen_cmd->parsed()) report = cmd_scenarios(cfg);
      text = report.dump(2) + "\n";
    }
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw InputError("cannot write output file '" + cfg.output + "'");
      file << text;
    }
  } catch (const UnsupportedDimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupportedDimension;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return kSizeLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace conexp::cli
