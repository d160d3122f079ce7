#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>

#include "conexp/errors.hpp"

namespace conexp {

/// Bivariate Gumbel copula with normal and gamma marginals.
struct GumbelSimulation {
  std::size_t n = 500;
  std::uint64_t seed = 1;
  double theta = 2.0;
  double normal_mean = 7.0;
  double normal_sd = 2.0;
  double gamma_shape = 4.0;
  double gamma_rate = 3.0;
};

namespace detail {

/// Uniform on the open interval (0,1) from the top 53 bits.
inline double open_uniform(std::mt19937_64& rng) {
  for (;;) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

/// dC(u,v)/du for the Gumbel copula.
inline double gumbel_conditional(double u, double v, double theta) {
  const double x = -std::log(u);
  const double y = -std::log(v);
  const double s = std::pow(x, theta) + std::pow(y, theta);
  const double c = std::exp(-std::pow(s, 1.0 / theta));
  return c * std::pow(s, 1.0 / theta - 1.0) * std::pow(x, theta - 1.0) / u;
}

}  // namespace detail

/// Draws (u, v) by conditional inversion: u uniform, then v solving
/// dC/du(u, v) = p for a second uniform p (bisection; the map is increasing in v).
inline std::pair<double, double> gumbel_copula_draw(std::mt19937_64& rng, double theta) {
  const double u = detail::open_uniform(rng);
  const double p = detail::open_uniform(rng);
  if (theta == 1.0) return {u, p};
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0 || detail::gumbel_conditional(u, mid, theta) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {u, 0.5 * (lo + hi)};
}

/// Rows (normal, gamma) with Gumbel dependence; deterministic given the seed.
inline std::vector<std::pair<double, double>> simulate_gumbel(const GumbelSimulation& cfg) {
  if (!(cfg.theta >= 1.0) || !std::isfinite(cfg.theta)) {
    throw ParameterError("Gumbel copula parameter must be >= 1");
  }
  if (!(cfg.normal_sd > 0.0) || !(cfg.gamma_shape > 0.0) || !(cfg.gamma_rate > 0.0)) {
    throw ParameterError("marginal scale and shape parameters must be positive");
  }
  const boost::math::normal_distribution<double> normal(cfg.normal_mean, cfg.normal_sd);
  const boost::math::gamma_distribution<double> gamma(cfg.gamma_shape, 1.0 / cfg.gamma_rate);
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<double, double>> rows;
  rows.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const auto [u, v] = gumbel_copula_draw(rng, cfg.theta);
    rows.emplace_back(boost::math::quantile(normal, u), boost::math::quantile(gamma, v));
  }
  return rows;
}

/// Kendall's tau-a, O(n^2).
inline double kendall_tau(const std::vector<std::pair<double, double>>& rows) {
  const std::size_t n = rows.size();
  if (n < 2) return 0.0;
  long long score = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = (rows[i].first - rows[j].first) * (rows[i].second - rows[j].second);
      score += (a > 0.0) - (a < 0.0);
    }
  }
  return static_cast<double>(score) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace conexp
