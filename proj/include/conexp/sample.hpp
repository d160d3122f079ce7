#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "conexp/core.hpp"
#include "conexp/errors.hpp"
#include "conexp/scalar_expectile.hpp"

namespace conexp {

/// Finite empirical distribution on R^d: atoms x_i with probabilities p_i.
class WeightedSample {
 public:
  WeightedSample(std::vector<Vector> points, std::vector<double> probabilities)
      : points_(std::move(points)), probabilities_(std::move(probabilities)) {
    if (points_.empty()) throw InputError("sample is empty");
    if (points_.size() != probabilities_.size()) throw InputError("sample: points/probabilities length mismatch");
    const auto d = points_.front().size();
    if (d == 0) throw InputError("sample: points must have dimension >= 1");
    double total = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].size() != d) throw InputError("sample: points of mixed dimension");
      if (!points_[i].allFinite()) throw InputError("sample: non-finite coordinate");
      if (!(probabilities_[i] > 0.0) || !std::isfinite(probabilities_[i])) {
        throw InputError("sample: probabilities must be strictly positive");
      }
      total += probabilities_[i];
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw InputError("sample: probabilities sum to " + std::to_string(total));
    }
  }

  static WeightedSample uniform(std::vector<Vector> points) {
    const std::size_t n = points.size();
    if (n == 0) throw InputError("sample is empty");
    return WeightedSample(std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  /// Normalizes arbitrary positive weights to probabilities.
  static WeightedSample from_weights(std::vector<Vector> points, std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w)) throw InputError("sample: weights must be strictly positive");
      total += w;
    }
    for (double& w : weights) w /= total;
    // absorb the rounding residue so the total is 1 to machine precision
    double residue = 1.0;
    for (double w : weights) residue -= w;
    if (!weights.empty()) weights.back() += residue;
    return WeightedSample(std::move(points), std::move(weights));
  }

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return static_cast<std::size_t>(points_.front().size()); }
  const std::vector<Vector>& points() const { return points_; }
  const std::vector<double>& probabilities() const { return probabilities_; }

  Vector mean() const {
    Vector m = Vector::Zero(points_.front().size());
    for (std::size_t i = 0; i < points_.size(); ++i) m += probabilities_[i] * points_[i];
    return m;
  }

  /// The univariate sample w^T X.
  ScalarSample project(const Vector& w) const {
    if (static_cast<std::size_t>(w.size()) != dimension()) throw InputError("projection direction of wrong dimension");
    std::vector<double> values;
    values.reserve(points_.size());
    for (const auto& x : points_) values.push_back(w.dot(x));
    return ScalarSample(std::move(values), probabilities_);
  }

  /// A X + b atomwise.
  WeightedSample affine(const Matrix& a, const Vector& b) const {
    std::vector<Vector> mapped;
    mapped.reserve(points_.size());
    for (const auto& x : points_) mapped.push_back(a * x + b);
    return WeightedSample(std::move(mapped), probabilities_);
  }

  WeightedSample translated(const Vector& b) const {
    std::vector<Vector> mapped;
    for (const auto& x : points_) mapped.push_back(x + b);
    return WeightedSample(std::move(mapped), probabilities_);
  }

  WeightedSample scaled(double s) const {
    std::vector<Vector> mapped;
    for (const auto& x : points_) mapped.push_back(s * x);
    return WeightedSample(std::move(mapped), probabilities_);
  }

  WeightedSample negated() const { return scaled(-1.0); }

 private:
  std::vector<Vector> points_;
  std::vector<double> probabilities_;
};

/// Atomwise sum of two samples on the same atom space.
inline WeightedSample atomwise_sum(const WeightedSample& x, const WeightedSample& y) {
  if (x.size() != y.size() || x.dimension() != y.dimension()) throw InputError("atomwise_sum: samples differ in shape");
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x.probabilities()[i] - y.probabilities()[i]) > kProbabilityTolerance) {
      throw InputError("atomwise_sum: samples are not on a shared atom space");
    }
    pts.push_back(x.points()[i] + y.points()[i]);
  }
  return WeightedSample(std::move(pts), x.probabilities());
}

}  // namespace conexp
