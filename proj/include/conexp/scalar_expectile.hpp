#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conexp/errors.hpp"

namespace conexp {

/// Finite univariate distribution: outcomes with strictly positive weights.
///
/// On construction the atoms are sorted and exactly tied outcomes are merged
/// into one breakpoint; all queries then run against the merged table.
class ScalarSample {
 public:
  ScalarSample(std::vector<double> values, std::vector<double> probabilities)
      : values_(std::move(values)), probabilities_(std::move(probabilities)) {
    if (values_.empty()) throw InputError("scalar sample is empty");
    if (values_.size() != probabilities_.size()) {
      throw InputError("scalar sample: " + std::to_string(values_.size()) + " values but " +
                       std::to_string(probabilities_.size()) + " probabilities");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) throw InputError("scalar sample: non-finite value");
      if (!(probabilities_[i] > 0.0) || !std::isfinite(probabilities_[i])) {
        throw InputError("scalar sample: probabilities must be strictly positive");
      }
      total += probabilities_[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw InputError("scalar sample: probabilities sum to " + std::to_string(total));
    }
    build_breakpoints();
  }

  /// Equally weighted atoms.
  static ScalarSample uniform(std::vector<double> values) {
    const std::size_t n = values.size();
    if (n == 0) throw InputError("scalar sample is empty");
    return ScalarSample(std::move(values), std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<const double> probabilities() const { return probabilities_; }

  /// Distinct outcomes in ascending order with their aggregated weights.
  std::span<const double> breakpoints() const { return points_; }
  std::span<const double> breakpoint_weights() const { return weights_; }

  double min() const { return points_.front(); }
  double max() const { return points_.back(); }
  bool degenerate() const { return points_.size() == 1; }

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) m += probabilities_[i] * values_[i];
    return m;
  }

  /// E[(X - t)_+] and E[(t - X)_+].
  std::pair<double, double> partial_moments(double t) const {
    double upper = 0.0;
    double lower = 0.0;
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const double diff = points_[k] - t;
      if (diff > 0.0) {
        upper += weights_[k] * diff;
      } else {
        lower -= weights_[k] * diff;
      }
    }
    return {upper, lower};
  }

 private:
  void build_breakpoints() {
    std::vector<std::size_t> order(values_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
    for (std::size_t idx : order) {
      if (!points_.empty() && points_.back() == values_[idx]) {
        weights_.back() += probabilities_[idx];
      } else {
        points_.push_back(values_[idx]);
        weights_.push_back(probabilities_[idx]);
      }
    }
  }

  std::vector<double> values_;
  std::vector<double> probabilities_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Ratio bound of the scenario set: max{a/(1-a), (1-a)/a}.
inline double expectile_beta(double alpha) {
  return std::max(alpha / (1.0 - alpha), (1.0 - alpha) / alpha);
}

namespace detail {

inline void require_open_unit(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError(std::string(what) + " must lie in (0,1), got " + std::to_string(alpha));
  }
}

}  // namespace detail

/// The alpha-expectile: the root t of a*E[(X-t)_+] = (1-a)*E[(t-X)_+].
///
/// Between consecutive breakpoints the condition is linear in t, so the root
/// is located by binary search on the breakpoint residuals and then solved in
/// closed form on the bracketing interval.
inline double expectile(const ScalarSample& sample, double alpha) {
  detail::require_open_unit(alpha, "expectile level");
  const auto x = sample.breakpoints();
  const auto w = sample.breakpoint_weights();
  const std::size_t k = x.size();
  if (k == 1) return x[0];

  // prefix sums over breakpoints [0, i)
  std::vector<double> mass(k + 1, 0.0);
  std::vector<double> first_moment(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    mass[i + 1] = mass[i] + w[i];
    first_moment[i + 1] = first_moment[i] + w[i] * x[i];
  }
  const double total_mass = mass[k];
  const double total_moment = first_moment[k];

  // residual at breakpoint i; atoms above i form the upper part
  auto residual = [&](std::size_t i) {
    const double upper = (total_moment - first_moment[i + 1]) - x[i] * (total_mass - mass[i + 1]);
    const double lower = x[i] * mass[i] - first_moment[i];
    return alpha * upper - (1.0 - alpha) * lower;
  };

  // residual(0) > 0 > residual(k-1); find first i with residual(i) <= 0
  std::size_t lo = 1;
  std::size_t hi = k - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (residual(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::size_t i = lo;  // root in [x[i-1], x[i]]
  const double lower_mass = mass[i];
  const double lower_moment = first_moment[i];
  const double upper_mass = total_mass - lower_mass;
  const double upper_moment = total_moment - lower_moment;
  const double t = (alpha * upper_moment + (1.0 - alpha) * lower_moment) /
                   (alpha * upper_mass + (1.0 - alpha) * lower_mass);
  return std::clamp(t, x[i - 1], x[i]);
}

/// The level a at which the expectile curve passes through t.
///
/// Returns 0 for t at or below the minimum and 1 for t at or above the
/// maximum; inside the range a = E[(t-X)_+] / (E[(X-t)_+] + E[(t-X)_+]).
inline double inverse_expectile(const ScalarSample& sample, double t) {
  if (t <= sample.min()) return 0.0;
  if (t >= sample.max()) return 1.0;
  const auto [upper, lower] = sample.partial_moments(t);
  return std::clamp(lower / (upper + lower), 0.0, 1.0);
}

enum class Extremum { min, max };

/// Expectile through its dual representation over the scenario polytope.
///
/// Scans the candidate scenarios in which the k smallest (min) or k largest
/// (max) outcomes carry density ratio beta and the remaining ones ratio 1.
/// With sense min this is e_a; with sense max it is e_{1-a}.
inline double dual_expectile_oracle(const ScalarSample& sample, double alpha, Extremum sense) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw ParameterError("dual expectile level must lie in (0, 1/2], got " + std::to_string(alpha));
  }
  const auto values = sample.values();
  const auto probs = sample.probabilities();
  const std::size_t n = values.size();
  if (n == 1) return values[0];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  if (sense == Extremum::max) std::reverse(order.begin(), order.end());

  const double beta = (1.0 - alpha) / alpha;
  double total_moment = 0.0;
  for (std::size_t i = 0; i < n; ++i) total_moment += probs[i] * values[i];

  double heavy_mass = 0.0;
  double heavy_moment = 0.0;
  double best = 0.0;
  bool first = true;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t idx = order[k - 1];
    heavy_mass += probs[idx];
    heavy_moment += probs[idx] * values[idx];
    const double mean =
        (beta * heavy_moment + (total_moment - heavy_moment)) / (beta * heavy_mass + (1.0 - heavy_mass));
    if (first) {
      best = mean;
      first = false;
    } else if (sense == Extremum::min) {
      best = std::min(best, mean);
    } else {
      best = std::max(best, mean);
    }
  }
  return best;
}

}  // namespace conexp
