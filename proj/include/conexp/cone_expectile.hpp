#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conexp/core.hpp"
#include "conexp/errors.hpp"
#include "conexp/geometry.hpp"
#include "conexp/sample.hpp"
#include "conexp/scalar_expectile.hpp"

namespace conexp {

enum class SetKind { downward, upward, risk };

inline const char* to_string(SetKind kind) {
  switch (kind) {
    case SetKind::downward:
      return "downward";
    case SetKind::upward:
      return "upward";
    case SetKind::risk:
      return "risk";
  }
  return "unknown";
}

/// A cone expectile (or risk measure value) in H-representation keyed by the
/// dual generators of the cone.
///
/// `alpha` is the level actually used for the offsets: a for E^a_{-C},
/// the level 1-a for E^{1-a}_C. `outer_approximation` is set when the finite
/// generator intersection is not known to be exact (downward level above 1/2,
/// upward level below 1/2).
struct ConeExpectileSet {
  SetKind kind = SetKind::downward;
  double alpha = 0.5;
  HalfspaceSet halfspaces;
  bool outer_approximation = false;
};

namespace detail {

inline void check_cone(const WeightedSample& x, const ConeSpec& cone) {
  if (x.dimension() != cone.dimension()) throw InputError("sample and cone differ in dimension");
  if (cone.generators_cplus().empty()) throw ParameterError("cone has no dual generators");
}

inline std::vector<double> directional_expectiles(const WeightedSample& x, const ConeSpec& cone, double level,
                                                  unsigned threads) {
  const auto& dual = cone.generators_cplus();
  std::vector<double> offsets(dual.size());
  parallel_for(dual.size(), threads, [&](std::size_t m) { offsets[m] = expectile(x.project(dual[m]), level); });
  return offsets;
}

}  // namespace detail

/// E^a_{-C}(X) = {z | w_m^T z <= e_a(w_m^T X) for every dual generator w_m}.
inline ConeExpectileSet downward_expectile(const WeightedSample& x, const ConeSpec& cone, double alpha,
                                           unsigned threads = 1) {
  detail::require_open_unit(alpha, "downward expectile level");
  detail::check_cone(x, cone);
  return {SetKind::downward, alpha,
          HalfspaceSet(cone.generators_cplus(), detail::directional_expectiles(x, cone, alpha, threads),
                       Sense::less_equal),
          alpha > 0.5};
}

/// E^{level}_C(X) = {z | w_m^T z >= e_level(w_m^T X)}; `level` plays the role 1-a.
inline ConeExpectileSet upward_expectile(const WeightedSample& x, const ConeSpec& cone, double level,
                                         unsigned threads = 1) {
  detail::require_open_unit(level, "upward expectile level");
  detail::check_cone(x, cone);
  return {SetKind::upward, level,
          HalfspaceSet(cone.generators_cplus(), detail::directional_expectiles(x, cone, level, threads),
                       Sense::greater_equal),
          level < 0.5};
}

/// Pointwise negation -S of a halfspace set: normals kept, offsets and sense flipped.
inline HalfspaceSet negate(const HalfspaceSet& hs) {
  std::vector<double> offsets;
  for (double c : hs.offsets()) offsets.push_back(-c);
  return HalfspaceSet(hs.normals(), std::move(offsets),
                      hs.sense() == Sense::less_equal ? Sense::greater_equal : Sense::less_equal);
}

/// The expectile risk measure R_a(X) = -E^a_{-C}(X), for cones containing R^d_+.
inline ConeExpectileSet risk_measure(const WeightedSample& x, const ConeSpec& cone, double alpha,
                                     double tol = kGeometricTolerance, unsigned threads = 1) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw ParameterError("risk measure level must lie in (0, 1/2], got " + std::to_string(alpha));
  }
  detail::check_cone(x, cone);
  if (!cone.contains_orthant(tol)) throw ModelError("risk measure requires a cone containing R^d_+");
  const auto down = downward_expectile(x, cone, alpha, threads);
  return {SetKind::risk, alpha, negate(down.halfspaces), false};
}

/// 99 levels 0.01, 0.02, ..., 0.99.
inline std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

struct OrderWitness {
  double alpha = 0.0;
  std::size_t generator = 0;
};

/// Certification of a stochastic order on a finite level grid.
struct OrderResult {
  bool holds = true;
  std::optional<OrderWitness> witness;
  std::vector<double> grid;
};

namespace detail {

template <typename LevelOf>
OrderResult compare_offsets(const WeightedSample& x, const WeightedSample& y, const ConeSpec& cone,
                            const std::vector<double>& grid, LevelOf level_of, double tol) {
  if (x.dimension() != y.dimension()) throw InputError("samples differ in dimension");
  check_cone(x, cone);
  OrderResult result;
  result.grid = grid;
  const auto& dual = cone.generators_cplus();
  std::vector<ScalarSample> px;
  std::vector<ScalarSample> py;
  for (const auto& w : dual) {
    px.push_back(x.project(w));
    py.push_back(y.project(w));
  }
  for (double a : grid) {
    require_open_unit(a, "order grid level");
    const double level = level_of(a);
    for (std::size_t m = 0; m < dual.size(); ++m) {
      if (expectile(px[m], level) > expectile(py[m], level) + tol) {
        result.holds = false;
        result.witness = OrderWitness{a, m};
        return result;
      }
    }
  }
  return result;
}

}  // namespace detail

/// X <=_le Y on the grid: E^a_{-C}(X) is contained in E^a_{-C}(Y) at every grid level.
inline OrderResult lower_expectile_order(const WeightedSample& x, const WeightedSample& y, const ConeSpec& cone,
                                         const std::vector<double>& grid = default_alpha_grid(),
                                         double tol = kGeometricTolerance) {
  return detail::compare_offsets(x, y, cone, grid, [](double a) { return a; }, tol);
}

/// X <=_ue Y on the grid: E^{1-a}_C(X) contains E^{1-a}_C(Y) at every grid level.
inline OrderResult upper_expectile_order(const WeightedSample& x, const WeightedSample& y, const ConeSpec& cone,
                                         const std::vector<double>& grid = default_alpha_grid(),
                                         double tol = kGeometricTolerance) {
  return detail::compare_offsets(x, y, cone, grid, [](double a) { return 1.0 - a; }, tol);
}

}  // namespace conexp
