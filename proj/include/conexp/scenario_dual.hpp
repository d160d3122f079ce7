#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "conexp/cone_expectile.hpp"
#include "conexp/core.hpp"
#include "conexp/errors.hpp"
#include "conexp/geometry.hpp"
#include "conexp/sample.hpp"

namespace conexp {

/// Largest atom count accepted by the subset enumeration.
inline constexpr std::size_t kMaxScenarioAtoms = 20;

/// Largest atom count for exact regions in three dimensions.
inline constexpr std::size_t kMaxRegionAtoms3d = 12;

/// The scenario set W(a) on N atoms: probability vectors q whose density
/// ratios q_i/p_i differ by at most the factor beta = (1-a)/a.
struct ScenarioPolytope {
  std::vector<double> base;
  double alpha = 0.5;
  double beta = 1.0;
  std::vector<std::vector<double>> vertices;
};

/// max_i(q_i/p_i) <= beta * min_i(q_i/p_i) + tol, q > 0 and sum(q) = 1.
inline bool is_scenario(const std::vector<double>& q, const std::vector<double>& p, double beta, double tol = 1e-10) {
  if (q.size() != p.size()) return false;
  double total = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] > 0.0)) return false;
    total += q[i];
    lo = std::min(lo, q[i] / p[i]);
    hi = std::max(hi, q[i] / p[i]);
  }
  return std::abs(total - 1.0) <= tol && hi <= beta * lo + tol;
}

namespace detail {

inline void check_probabilities(const std::vector<double>& p) {
  if (p.empty()) throw InputError("scenario base measure is empty");
  double total = 0.0;
  for (double v : p) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("scenario base probabilities must be strictly positive");
    total += v;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) throw InputError("scenario base probabilities do not sum to 1");
}

/// Rank of the active ratio constraints plus the simplex equation at the
/// candidate generated by `subset`. A spanning tree of the active pairs
/// (i in S, j not in S) is tried first; it certifies full rank on its own.
inline bool has_full_active_rank(std::uint64_t subset, const std::vector<double>& p, double beta) {
  const std::size_t n = p.size();
  std::vector<std::size_t> inside;
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < n; ++i) ((subset >> i) & 1U ? inside : outside).push_back(i);
  auto ratio_row = [&](std::size_t i, std::size_t j) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n));
    row(static_cast<Eigen::Index>(i)) = 1.0 / p[i];
    row(static_cast<Eigen::Index>(j)) = -beta / p[j];
    return row;
  };
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix tree(nn, nn);
  Eigen::Index r = 0;
  for (std::size_t j : outside) tree.row(r++) = ratio_row(inside.front(), j);
  for (std::size_t k = 1; k < inside.size(); ++k) tree.row(r++) = ratio_row(inside[k], outside.front());
  tree.row(r) = Eigen::RowVectorXd::Ones(nn);
  Eigen::FullPivLU<Matrix> lu(tree);
  lu.setThreshold(1e-12);
  if (lu.rank() == nn) return true;

  Matrix all(static_cast<Eigen::Index>(inside.size() * outside.size() + 1), nn);
  r = 0;
  for (std::size_t i : inside) {
    for (std::size_t j : outside) all.row(r++) = ratio_row(i, j);
  }
  all.row(r) = Eigen::RowVectorXd::Ones(nn);
  Eigen::FullPivLU<Matrix> full(all);
  full.setThreshold(1e-12);
  return full.rank() == nn;
}

}  // namespace detail

/// Vertices of W(a) from the two-ratio subset family.
///
/// For every nonempty proper subset S the candidate has ratio beta*c on S and
/// c elsewhere; it is kept when its active constraints have full rank and it
/// is feasible. Output order follows the subset bitmask; duplicates are dropped.
inline ScenarioPolytope scenario_vertices(const std::vector<double>& p, double alpha, unsigned threads = 1,
                                          double tol = kGeometricTolerance) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw ParameterError("scenario level must lie in (0, 1/2], got " + std::to_string(alpha));
  }
  detail::check_probabilities(p);
  const std::size_t n = p.size();
  if (n > kMaxScenarioAtoms) {
    throw SizeError("scenario enumeration is limited to " + std::to_string(kMaxScenarioAtoms) + " atoms, got " +
                    std::to_string(n));
  }
  ScenarioPolytope poly;
  poly.base = p;
  poly.alpha = alpha;
  poly.beta = (1.0 - alpha) / alpha;
  if (n == 1 || poly.beta <= 1.0 + tol) {
    poly.vertices.push_back(p);
    return poly;
  }

  const std::uint64_t count = (std::uint64_t{1} << n) - 2;
  std::vector<std::vector<double>> candidates(count);
  std::vector<char> keep(count, 0);
  parallel_for(count, threads, [&](std::size_t idx) {
    const std::uint64_t subset = idx + 1;
    double heavy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((subset >> i) & 1U) heavy += p[i];
    }
    const double c = 1.0 / (poly.beta * heavy + (1.0 - heavy));
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] * c * (((subset >> i) & 1U) ? poly.beta : 1.0);
    if (is_scenario(q, p, poly.beta) && detail::has_full_active_rank(subset, p, poly.beta)) {
      candidates[idx] = std::move(q);
      keep[idx] = 1;
    }
  });

  // dedupe on the ratio vectors, keeping first occurrence in subset order
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < count; ++i) {
    if (keep[i]) order.push_back(i);
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    if (candidates[a] != candidates[b]) return candidates[a] < candidates[b];
    return a < b;
  });
  std::vector<char> duplicate(count, 0);
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    const auto& prev = candidates[sorted[k - 1]];
    const auto& cur = candidates[sorted[k]];
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(prev[i] - cur[i]) / p[i]);
    if (diff <= tol) duplicate[std::max(sorted[k - 1], sorted[k])] = 1;
  }
  for (std::size_t idx : order) {
    if (!duplicate[idx]) poly.vertices.push_back(std::move(candidates[idx]));
  }
  return poly;
}

/// E^Q[X] for every scenario vertex Q.
inline std::vector<Vector> mapped_scenarios(const WeightedSample& x, const ScenarioPolytope& poly) {
  std::vector<Vector> out;
  out.reserve(poly.vertices.size());
  for (const auto& q : poly.vertices) {
    Vector m = Vector::Zero(static_cast<Eigen::Index>(x.dimension()));
    for (std::size_t i = 0; i < q.size(); ++i) m += q[i] * x.points()[i];
    out.push_back(m);
  }
  return out;
}

/// The expectile region ED^a(X) = W_a(X), as the hull of the mapped scenario
/// vertices. Offered for d <= 3.
inline RegionPolytope region_vertices(const WeightedSample& x, double alpha, unsigned threads = 1,
                                      double tol = kGeometricTolerance) {
  if (x.dimension() > 3) throw UnsupportedDimensionError("exact expectile regions are offered for d <= 3");
  if (x.dimension() == 3 && x.size() > kMaxRegionAtoms3d) {
    throw SizeError("three-dimensional regions are limited to " + std::to_string(kMaxRegionAtoms3d) + " atoms");
  }
  const auto poly = scenario_vertices(x.probabilities(), alpha, threads, tol);
  return extreme_points(mapped_scenarios(x, poly), tol);
}

/// Outer approximation of ED^a(X) from n equally spaced unit directions:
/// {z | u_k^T z <= e_{1-a}(u_k^T X)}.
inline HalfspaceSet region_primal_2d(const WeightedSample& x, double alpha, std::size_t n_directions) {
  if (x.dimension() != 2) throw UnsupportedDimensionError("region_primal_2d requires dimension 2");
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw ParameterError("region level must lie in (0, 1/2], got " + std::to_string(alpha));
  }
  if (n_directions < 3) throw ParameterError("region_primal_2d needs at least 3 directions");
  std::vector<Vector> normals;
  std::vector<double> offsets;
  for (std::size_t k = 0; k < n_directions; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_directions);
    Vector u = detail::polar(angle);
    offsets.push_back(expectile(x.project(u), 1.0 - alpha));
    normals.push_back(std::move(u));
  }
  return HalfspaceSet(std::move(normals), std::move(offsets), Sense::less_equal);
}

/// Polygon of the primal outer approximation, clipped to a box around the data
/// large enough to contain it.
inline RegionPolytope region_primal_polygon_2d(const WeightedSample& x, double alpha, std::size_t n_directions,
                                               double tol = kGeometricTolerance) {
  const auto hs = region_primal_2d(x, alpha, n_directions);
  Vector lo = x.points().front();
  Vector hi = x.points().front();
  for (const auto& p : x.points()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vector center = 0.5 * (lo + hi);
  const double half = 10.0 * ((hi - lo).norm() + 1.0);
  return bounded_polygon_2d(hs, center, half, tol);
}

/// Cone expectile through the scenario polytope: per dual generator, the min
/// (downward) or max (upward, level 1-a) of w^T E^Q[X] over the vertices of W(a).
inline ConeExpectileSet dual_cone_expectile(const WeightedSample& x, const ConeSpec& cone, double alpha,
                                            SetKind kind = SetKind::downward, unsigned threads = 1) {
  if (x.dimension() != cone.dimension()) throw InputError("sample and cone differ in dimension");
  if (kind == SetKind::risk) throw ParameterError("dual_cone_expectile builds downward or upward sets");
  const auto poly = scenario_vertices(x.probabilities(), alpha, threads);
  const auto mapped = mapped_scenarios(x, poly);
  const auto& dual = cone.generators_cplus();
  std::vector<double> offsets(dual.size());
  parallel_for(dual.size(), threads, [&](std::size_t m) {
    double best = dual[m].dot(mapped.front());
    for (const auto& v : mapped) {
      const double s = dual[m].dot(v);
      best = kind == SetKind::downward ? std::min(best, s) : std::max(best, s);
    }
    offsets[m] = best;
  });
  if (kind == SetKind::downward) {
    return {SetKind::downward, alpha, HalfspaceSet(dual, std::move(offsets), Sense::less_equal), false};
  }
  return {SetKind::upward, 1.0 - alpha, HalfspaceSet(dual, std::move(offsets), Sense::greater_equal), false};
}

}  // namespace conexp
