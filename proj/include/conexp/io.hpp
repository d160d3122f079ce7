#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conexp/cone_expectile.hpp"
#include "conexp/errors.hpp"
#include "conexp/geometry.hpp"
#include "conexp/sample.hpp"

namespace conexp::io {

using nlohmann::json;

/// A CSV table: coordinate columns plus optional weights.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<double> weights;  // empty when there is no `weight` column
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

inline bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  char* end = nullptr;
  value = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && std::isfinite(value);
}

}  // namespace detail

/// Header row, comma separated; every column except `weight` is a coordinate.
inline Dataset read_csv(std::istream& in) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) {
      header = detail::split(line, ',');
      break;
    }
  }
  if (header.empty()) throw InputError("CSV input has no header row");
  std::ptrdiff_t weight_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "weight") {
      if (weight_col >= 0) throw InputError("CSV header has more than one weight column");
      weight_col = static_cast<std::ptrdiff_t>(c);
    } else {
      if (header[c].empty()) throw InputError("CSV header has an empty column name");
      data.columns.push_back(header[c]);
    }
  }
  if (data.columns.empty()) throw InputError("CSV input has no coordinate columns");

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split(line, ',');
    if (cells.size() != header.size()) {
      throw InputError("CSV row " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " cells, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!detail::parse_double(cells[c], v)) {
        throw InputError("CSV row " + std::to_string(line_no) + ", column '" + header[c] + "': non-numeric cell '" +
                         cells[c] + "'");
      }
      if (static_cast<std::ptrdiff_t>(c) == weight_col) {
        data.weights.push_back(v);
      } else {
        row.push_back(v);
      }
    }
    data.rows.push_back(std::move(row));
  }
  if (data.rows.empty()) throw InputError("CSV input has no data rows");
  return data;
}

inline Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return read_csv(in);
}

inline WeightedSample to_sample(const Dataset& data) {
  std::vector<Vector> points;
  for (const auto& row : data.rows) points.push_back(Eigen::Map<const Vector>(row.data(), static_cast<Eigen::Index>(row.size())));
  if (data.weights.empty()) return WeightedSample::uniform(std::move(points));
  return WeightedSample::from_weights(std::move(points), data.weights);
}

namespace detail {

inline std::vector<Vector> vectors_from(const json& j, const char* key) {
  std::vector<Vector> out;
  if (!j.is_array()) throw InputError(std::string("cone file: '") + key + "' must be an array of vectors");
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError(std::string("cone file: '") + key + "' must be an array of vectors");
    Vector v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_number()) throw InputError(std::string("cone file: non-numeric entry in '") + key + "'");
      v(static_cast<Eigen::Index>(i)) = row[i].get<double>();
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// {"dimension": d, "generators_C": [[...]], "generators_C_plus": [[...]]}
inline ConeSpec parse_cone(const json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j["dimension"].is_number_integer()) {
    throw InputError("cone file: missing integer 'dimension'");
  }
  const auto d = j["dimension"].get<long long>();
  if (d < 1) throw InputError("cone file: 'dimension' must be positive");
  const bool has_c = j.contains("generators_C");
  const bool has_dual = j.contains("generators_C_plus");
  if (!has_c && !has_dual) throw InputError("cone file: need 'generators_C' or 'generators_C_plus'");
  std::vector<Vector> gens = has_c ? detail::vectors_from(j["generators_C"], "generators_C") : std::vector<Vector>{};
  std::vector<Vector> duals =
      has_dual ? detail::vectors_from(j["generators_C_plus"], "generators_C_plus") : std::vector<Vector>{};
  return ConeSpec::from_generators(static_cast<std::size_t>(d), std::move(gens), std::move(duals));
}

inline ConeSpec read_cone_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open cone file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("cone file is not valid JSON: ") + e.what());
  }
  return parse_cone(j);
}

/// A double rounded to 15 significant digits; -0 becomes 0.
inline double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline json number(double v) { return round15(v); }

inline json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

inline json vectors_json(const std::vector<Vector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

inline json numbers_json(const std::vector<double>& vs) {
  json a = json::array();
  for (double v : vs) a.push_back(number(v));
  return a;
}

inline const char* sense_symbol(Sense s) { return s == Sense::less_equal ? "<=" : ">="; }

/// Output schema of a cone expectile or risk measure set; vertices and rays
/// are attached for d = 2 when the normal fan allows it.
inline json set_json(const ConeExpectileSet& set, double tol = kGeometricTolerance) {
  json j;
  j["direction"] = to_string(set.kind);
  j["alpha"] = number(set.alpha);
  j["normals"] = vectors_json(set.halfspaces.normals());
  j["offsets"] = numbers_json(set.halfspaces.offsets());
  j["sense"] = sense_symbol(set.halfspaces.sense());
  j["outer_approximation"] = set.outer_approximation;
  if (set.halfspaces.dimension() == 2) {
    try {
      const auto poly = vertices_2d(set.halfspaces, tol);
      j["vertices"] = vectors_json(poly.vertices);
      j["rays"] = vectors_json(poly.rays);
      if (poly.empty) j["empty"] = true;
    } catch (const UnsupportedConeError&) {
      // normals wider than a halfplane: no wedge representation
    }
  }
  return j;
}

/// Inverse of set_json for the halfspace part.
inline HalfspaceSet halfspaces_from_json(const json& j) {
  auto normals = detail::vectors_from(j.at("normals"), "normals");
  std::vector<double> offsets = j.at("offsets").get<std::vector<double>>();
  const std::string sense = j.at("sense").get<std::string>();
  if (sense != "<=" && sense != ">=") throw InputError("unknown sense '" + sense + "'");
  return HalfspaceSet(std::move(normals), std::move(offsets), sense == "<=" ? Sense::less_equal : Sense::greater_equal);
}

}  // namespace conexp::io
