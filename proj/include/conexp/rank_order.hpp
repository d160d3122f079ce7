#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "conexp/cone_expectile.hpp"
#include "conexp/core.hpp"
#include "conexp/errors.hpp"
#include "conexp/geometry.hpp"
#include "conexp/sample.hpp"
#include "conexp/scalar_expectile.hpp"

namespace conexp {

/// Tolerance used for rank comparisons and indifference.
inline constexpr double kRankTolerance = 1e-9;

struct DirectionalLevel {
  std::size_t generator = 0;
  double downward = 0.0;
  double upward = 0.0;
};

/// Downward rank D_{-C}(z; X) = max over generators of the directional levels,
/// upward rank D_C(z; X) = min over generators.
struct RankResult {
  double downward = 0.0;
  double upward = 0.0;
  std::vector<DirectionalLevel> per_generator;
};

namespace detail {

/// inf{a | t <= e_a(s)} with inf(empty) = 1.
inline double downward_level(const ScalarSample& s, double t) {
  if (s.degenerate()) return t <= s.min() ? 0.0 : 1.0;
  return inverse_expectile(s, t);
}

/// sup{b | t >= e_b(s)} with sup(empty) = 0.
inline double upward_level(const ScalarSample& s, double t) {
  if (s.degenerate()) return t >= s.max() ? 1.0 : 0.0;
  return inverse_expectile(s, t);
}

}  // namespace detail

inline RankResult expectile_rank(const Vector& z, const WeightedSample& x, const ConeSpec& cone) {
  if (static_cast<std::size_t>(z.size()) != x.dimension() || x.dimension() != cone.dimension()) {
    throw InputError("rank: dimension mismatch");
  }
  RankResult out;
  out.downward = 0.0;
  out.upward = 1.0;
  const auto& dual = cone.generators_cplus();
  for (std::size_t m = 0; m < dual.size(); ++m) {
    const ScalarSample s = x.project(dual[m]);
    const double t = dual[m].dot(z);
    DirectionalLevel level{m, detail::downward_level(s, t), detail::upward_level(s, t)};
    out.downward = std::max(out.downward, level.downward);
    out.upward = std::min(out.upward, level.upward);
    out.per_generator.push_back(level);
  }
  return out;
}

inline double downward_rank(const Vector& z, const WeightedSample& x, const ConeSpec& cone) {
  return expectile_rank(z, x, cone).downward;
}

inline double upward_rank(const Vector& z, const WeightedSample& x, const ConeSpec& cone) {
  return expectile_rank(z, x, cone).upward;
}

/// Rank-induced relations between two points and the indifference flags.
struct ComparisonReport {
  RankResult y;
  RankResult z;
  bool y_below_z_downward = false;  // y <=_{X,-C} z
  bool z_below_y_downward = false;
  bool y_below_z_upward = false;  // y <=_{X,+C} z
  bool z_below_y_upward = false;
  bool lower_indifferent = false;
  bool upper_indifferent = false;
  bool jointly_indifferent = false;
};

inline ComparisonReport compare(const Vector& y, const Vector& z, const WeightedSample& x, const ConeSpec& cone,
                                double tol = kRankTolerance) {
  ComparisonReport r;
  r.y = expectile_rank(y, x, cone);
  r.z = expectile_rank(z, x, cone);
  r.y_below_z_downward = r.y.downward <= r.z.downward + tol;
  r.z_below_y_downward = r.z.downward <= r.y.downward + tol;
  r.y_below_z_upward = r.y.upward <= r.z.upward + tol;
  r.z_below_y_upward = r.z.upward <= r.y.upward + tol;
  r.lower_indifferent = r.y_below_z_downward && r.z_below_y_downward;
  r.upper_indifferent = r.y_below_z_upward && r.z_below_y_upward;
  r.jointly_indifferent = r.lower_indifferent && r.upper_indifferent;
  return r;
}

enum class Verdict { less_equal, not_less_equal, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::less_equal:
      return "y<=z";
    case Verdict::not_less_equal:
      return "not(y<=z)";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct OrderInference {
  Verdict verdict = Verdict::inconclusive;
  bool hypothesis_met = false;
  ComparisonReport report;
};

/// Decide y <=_C z from the ranks alone.
///
/// Under D_{-C}(y; X) <= D_C(z; X) with D_C(z; X) strictly inside (0,1),
/// y <=_C z holds exactly when y is below z in both rank relations.
/// Otherwise nothing can be concluded.
inline OrderInference infer_cone_order(const Vector& y, const Vector& z, const WeightedSample& x,
                                       const ConeSpec& cone, double tol = kRankTolerance) {
  OrderInference out;
  out.report = compare(y, z, x, cone, tol);
  const double level = out.report.z.upward;
  out.hypothesis_met = out.report.y.downward <= level && level > 0.0 && level < 1.0;
  if (!out.hypothesis_met) {
    out.verdict = Verdict::inconclusive;
  } else if (out.report.y_below_z_downward && out.report.y_below_z_upward) {
    out.verdict = Verdict::less_equal;
  } else {
    out.verdict = Verdict::not_less_equal;
  }
  return out;
}

/// Outcome of checking the rank characterisation of the lower expectile order
/// on a probe set.
struct RankOrderCheck {
  bool consistent = true;
  bool order_holds = true;
  bool ranks_dominate = true;
  std::optional<Vector> witness;  // first probe with D_{-C}(z;X) < D_{-C}(z;Y)
};

/// Compares X <=_le Y (set inclusion on the level grid) with pointwise
/// domination D_{-C}(z; X) >= D_{-C}(z; Y) on the probe points.
inline RankOrderCheck stochastic_order_rank_check(const WeightedSample& x, const WeightedSample& y,
                                                  const ConeSpec& cone, const std::vector<Vector>& probes,
                                                  const std::vector<double>& grid = default_alpha_grid(),
                                                  double tol = kRankTolerance) {
  RankOrderCheck out;
  out.order_holds = lower_expectile_order(x, y, cone, grid).holds;
  for (const auto& z : probes) {
    if (downward_rank(z, x, cone) < downward_rank(z, y, cone) - tol) {
      out.ranks_dominate = false;
      out.witness = z;
      break;
    }
  }
  out.consistent = out.order_holds == out.ranks_dominate;
  return out;
}

}  // namespace conexp
