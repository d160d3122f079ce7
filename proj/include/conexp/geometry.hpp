#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conexp/core.hpp"
#include "conexp/errors.hpp"

namespace conexp {

namespace detail {

inline Vector unit(const Vector& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError(std::string(what) + ": zero or non-finite vector");
  return v / n;
}

inline Vector polar(double angle) {
  Vector v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

inline Vector rotate_quarter(const Vector& v, bool counterclockwise) {
  Vector r(2);
  if (counterclockwise) {
    r << -v(1), v(0);
  } else {
    r << v(1), -v(0);
  }
  return r;
}

inline double angle_of(const Vector& v) { return std::atan2(v(1), v(0)); }

inline double cross(const Vector& a, const Vector& b) { return a(0) * b(1) - a(1) * b(0); }

/// Directions sorted by angle with near-duplicates merged, starting right
/// after the largest angular gap. Returns the indices into `dirs` and the
/// angular width of the arc they span.
struct AngularFan {
  std::vector<std::size_t> order;
  double width = 0.0;
};

inline AngularFan angular_fan(const std::vector<Vector>& dirs, double tol) {
  std::vector<std::pair<double, std::size_t>> angles;
  angles.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) angles.emplace_back(angle_of(dirs[i]), i);
  std::sort(angles.begin(), angles.end());
  AngularFan fan;
  if (angles.empty()) return fan;

  // merge near-duplicates, including across the -pi/pi seam
  std::vector<std::pair<double, std::size_t>> merged;
  for (const auto& a : angles) {
    if (!merged.empty() && a.first - merged.back().first <= tol) continue;
    merged.push_back(a);
  }
  if (merged.size() > 1 && merged.front().first + 2.0 * std::numbers::pi - merged.back().first <= tol) {
    merged.pop_back();
  }
  const std::size_t k = merged.size();
  if (k == 1) {
    fan.order = {merged[0].second};
    return fan;
  }
  std::size_t gap_end = 0;
  double largest = -1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double next = i + 1 < k ? merged[i + 1].first : merged[0].first + 2.0 * std::numbers::pi;
    const double gap = next - merged[i].first;
    if (gap > largest + tol) {
      largest = gap;
      gap_end = (i + 1) % k;
    }
  }
  fan.width = 2.0 * std::numbers::pi - largest;
  for (std::size_t i = 0; i < k; ++i) fan.order.push_back(merged[(gap_end + i) % k].second);
  return fan;
}

}  // namespace detail

/// Generators of the dual of a cone in R^1.
///
/// C = R_+ gives {+1}, C = R_- gives {-1}, C = {0} (no generators) gives both.
inline std::vector<Vector> dual_cone_1d(const std::vector<Vector>& generators) {
  bool up = false;
  bool down = false;
  for (const auto& g : generators) {
    if (g.size() != 1) throw InputError("dual_cone_1d: generator of wrong dimension");
    if (g(0) > 0.0) up = true;
    if (g(0) < 0.0) down = true;
    if (g(0) == 0.0) throw InputError("dual_cone_1d: zero generator");
  }
  if (up && down) throw UnsupportedConeError("cone is the whole line; its dual is {0}");
  std::vector<Vector> dual;
  if (!down) dual.push_back(Vector::Constant(1, 1.0));
  if (!up) dual.push_back(Vector::Constant(1, -1.0));
  return dual;
}

/// Extreme generators of the dual of a planar cone.
///
/// A pointed cone yields the two inward quarter-turns of its extreme rays.
/// A single ray yields the two boundary normals of its dual halfplane
/// followed by the ray itself as interior witness. A line yields its
/// orthogonal line and a halfplane its inner normal.
inline std::vector<Vector> dual_cone_2d(const std::vector<Vector>& generators,
                                        double tol = kGeometricTolerance) {
  if (generators.empty()) throw InputError("dual_cone_2d: no generators");
  std::vector<Vector> dirs;
  dirs.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != 2) throw InputError("dual_cone_2d: generator of wrong dimension");
    dirs.push_back(detail::unit(g, "dual_cone_2d generator"));
  }
  const auto fan = detail::angular_fan(dirs, tol);
  const Vector& lo = dirs[fan.order.front()];
  const Vector& hi = dirs[fan.order.back()];
  if (fan.order.size() == 1) {
    return {detail::rotate_quarter(lo, true), detail::rotate_quarter(lo, false), lo};
  }
  if (fan.width > std::numbers::pi + tol) {
    throw UnsupportedConeError("cone spans more than a halfplane; its dual is {0}");
  }
  if (fan.width >= std::numbers::pi - tol) {
    if (fan.order.size() == 2) {
      return {detail::rotate_quarter(lo, true), detail::rotate_quarter(lo, false)};
    }
    return {detail::rotate_quarter(lo, true)};
  }
  return {detail::rotate_quarter(hi, false), detail::rotate_quarter(lo, true)};
}

/// Polyhedral convex cone given by finite generator lists for C and its dual.
///
/// Generators are stored at unit length. For d <= 2 a missing dual list is
/// computed; for d >= 3 it must be supplied. An empty primal list with no
/// dual means C = {0}.
class ConeSpec {
 public:
  static ConeSpec from_generators(std::size_t dimension, std::vector<Vector> generators_c,
                                  std::vector<Vector> generators_cplus,
                                  double consistency_tol = 1e-10) {
    if (dimension == 0) throw InputError("cone dimension must be at least 1");
    ConeSpec cone;
    cone.dimension_ = dimension;
    for (auto& g : generators_c) {
      if (static_cast<std::size_t>(g.size()) != dimension) throw InputError("cone generator of wrong dimension");
      cone.generators_c_.push_back(detail::unit(g, "cone generator"));
    }
    for (auto& w : generators_cplus) {
      if (static_cast<std::size_t>(w.size()) != dimension) {
        throw InputError("dual cone generator of wrong dimension");
      }
      cone.generators_cplus_.push_back(detail::unit(w, "dual cone generator"));
    }
    if (cone.generators_cplus_.empty()) {
      if (cone.generators_c_.empty()) {
        for (std::size_t j = 0; j < dimension; ++j) {
          cone.generators_cplus_.push_back(Vector::Unit(static_cast<Eigen::Index>(dimension), j));
          cone.generators_cplus_.push_back(-Vector::Unit(static_cast<Eigen::Index>(dimension), j));
        }
      } else if (dimension == 1) {
        cone.generators_cplus_ = dual_cone_1d(cone.generators_c_);
      } else if (dimension == 2) {
        cone.generators_cplus_ = dual_cone_2d(cone.generators_c_);
      } else {
        throw InputError("generators of the dual cone are required for dimension >= 3");
      }
    }
    for (const auto& g : cone.generators_c_) {
      for (const auto& w : cone.generators_cplus_) {
        if (w.dot(g) < -consistency_tol) {
          throw InputError("inconsistent cone: a dual generator is negative on a primal generator");
        }
      }
    }
    return cone;
  }

  /// R^d_+, which is self-dual.
  static ConeSpec nonnegative_orthant(std::size_t dimension) {
    std::vector<Vector> basis;
    for (std::size_t j = 0; j < dimension; ++j) {
      basis.push_back(Vector::Unit(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(j)));
    }
    return from_generators(dimension, basis, basis);
  }

  std::size_t dimension() const { return dimension_; }
  const std::vector<Vector>& generators_c() const { return generators_c_; }
  const std::vector<Vector>& generators_cplus() const { return generators_cplus_; }

  /// z in C, decided through the dual generators (bipolar theorem).
  bool contains(const Vector& z, double tol = kGeometricTolerance) const {
    if (static_cast<std::size_t>(z.size()) != dimension_) throw InputError("point of wrong dimension");
    for (const auto& w : generators_cplus_) {
      if (w.dot(z) < -tol) return false;
    }
    return true;
  }

  /// y <=_C z, i.e. z - y in C.
  bool less_equal(const Vector& y, const Vector& z, double tol = kGeometricTolerance) const {
    return contains(z - y, tol);
  }

  bool contains_orthant(double tol = kGeometricTolerance) const {
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (!contains(Vector::Unit(static_cast<Eigen::Index>(dimension_), static_cast<Eigen::Index>(j)), tol)) {
        return false;
      }
    }
    return true;
  }

 private:
  ConeSpec() = default;

  std::size_t dimension_ = 0;
  std::vector<Vector> generators_c_;
  std::vector<Vector> generators_cplus_;
};

/// Image of a cone under an invertible linear map: AC with (AC)^+ = A^{-T} C^+.
inline ConeSpec transform_cone(const Matrix& a, const ConeSpec& cone) {
  const auto d = static_cast<Eigen::Index>(cone.dimension());
  if (a.rows() != d || a.cols() != d) throw InputError("transform_cone: matrix dimension mismatch");
  if (std::abs(a.determinant()) <= 1e-12) throw InputError("transform_cone: matrix is singular");
  const Matrix dual_map = a.transpose().inverse();
  std::vector<Vector> gens;
  std::vector<Vector> duals;
  for (const auto& g : cone.generators_c()) gens.push_back(a * g);
  for (const auto& w : cone.generators_cplus()) duals.push_back(dual_map * w);
  return ConeSpec::from_generators(cone.dimension(), std::move(gens), std::move(duals), 1e-9);
}

enum class Sense { less_equal, greater_equal };

/// Finite intersection {z | w_m^T z <= c_m} or {z | w_m^T z >= c_m}.
class HalfspaceSet {
 public:
  HalfspaceSet(std::vector<Vector> normals, std::vector<double> offsets, Sense sense)
      : normals_(std::move(normals)), offsets_(std::move(offsets)), sense_(sense) {
    if (normals_.empty()) throw InputError("halfspace set needs at least one normal");
    if (normals_.size() != offsets_.size()) throw InputError("halfspace set: normals/offsets length mismatch");
    const auto d = normals_.front().size();
    for (const auto& w : normals_) {
      if (w.size() != d) throw InputError("halfspace set: normals of mixed dimension");
    }
  }

  std::size_t dimension() const { return static_cast<std::size_t>(normals_.front().size()); }
  std::size_t size() const { return normals_.size(); }
  const std::vector<Vector>& normals() const { return normals_; }
  const std::vector<double>& offsets() const { return offsets_; }
  Sense sense() const { return sense_; }

  /// Signed violation of inequality m at z (positive means violated).
  double violation(std::size_t m, const Vector& z) const {
    const double lhs = normals_[m].dot(z);
    return sense_ == Sense::less_equal ? lhs - offsets_[m] : offsets_[m] - lhs;
  }

  /// The same set written with <= inequalities.
  HalfspaceSet as_less_equal() const {
    if (sense_ == Sense::less_equal) return *this;
    std::vector<Vector> normals;
    std::vector<double> offsets;
    for (std::size_t m = 0; m < size(); ++m) {
      normals.push_back(-normals_[m]);
      offsets.push_back(-offsets_[m]);
    }
    return HalfspaceSet(std::move(normals), std::move(offsets), Sense::less_equal);
  }

 private:
  std::vector<Vector> normals_;
  std::vector<double> offsets_;
  Sense sense_;
};

inline bool contains(const HalfspaceSet& hs, const Vector& z, double tol = kGeometricTolerance) {
  if (static_cast<std::size_t>(z.size()) != hs.dimension()) throw InputError("contains: dimension mismatch");
  if (tol < 0.0) throw ParameterError("contains: negative tolerance");
  for (std::size_t m = 0; m < hs.size(); ++m) {
    if (hs.violation(m, z) > tol) return false;
  }
  return true;
}

/// V-representation of an unbounded planar polyhedron: boundary vertices in
/// chain order plus extreme recession rays.
struct Polyhedron2d {
  std::vector<Vector> vertices;
  std::vector<Vector> rays;
  Vector boundary_point;
  bool empty = false;
};

/// Vertices and recession rays of a planar halfspace intersection whose
/// normals span an arc of at most pi.
inline Polyhedron2d vertices_2d(const HalfspaceSet& hs, double tol = kGeometricTolerance) {
  if (hs.dimension() != 2) throw UnsupportedDimensionError("vertices_2d requires dimension 2");
  const HalfspaceSet le = hs.as_less_equal();
  std::vector<Vector> normals;
  std::vector<double> offsets;
  for (std::size_t m = 0; m < le.size(); ++m) {
    const double n = le.normals()[m].norm();
    if (!(n > 0.0)) throw InputError("vertices_2d: zero normal");
    normals.push_back(le.normals()[m] / n);
    offsets.push_back(le.offsets()[m] / n);
  }

  const auto fan = detail::angular_fan(normals, tol);
  if (fan.width > std::numbers::pi + tol) {
    throw UnsupportedConeError("vertices_2d: normals span more than a halfplane");
  }
  // representative per merged direction keeps the tightest offset
  struct Line {
    Vector normal;
    double offset;
  };
  std::vector<Line> chain;
  for (std::size_t idx : fan.order) {
    Line line{normals[idx], offsets[idx]};
    for (std::size_t m = 0; m < normals.size(); ++m) {
      if (std::abs(detail::cross(normals[m], line.normal)) <= tol && normals[m].dot(line.normal) > 0.0) {
        line.offset = std::min(line.offset, offsets[m]);
      }
    }
    chain.push_back(line);
  }

  Polyhedron2d out;
  auto meet = [](const Line& a, const Line& b) {
    Eigen::Matrix2d m;
    m << a.normal(0), a.normal(1), b.normal(0), b.normal(1);
    Eigen::Vector2d rhs(a.offset, b.offset);
    Vector p = m.partialPivLu().solve(rhs);
    return p;
  };

  if (chain.size() == 1) {
    out.rays = {detail::rotate_quarter(chain[0].normal, true), detail::rotate_quarter(chain[0].normal, false)};
    out.boundary_point = chain[0].normal * chain[0].offset;
    return out;
  }
  const bool antipodal = fan.width >= std::numbers::pi - tol;
  if (antipodal && chain.front().offset + chain.back().offset < -tol) {
    out.empty = true;
    return out;
  }
  if (antipodal && chain.size() == 2) {
    out.rays = {detail::rotate_quarter(chain[0].normal, true), detail::rotate_quarter(chain[0].normal, false)};
    out.boundary_point = chain[0].normal * chain[0].offset;
    return out;
  }

  std::vector<Line> active;
  for (const auto& line : chain) {
    while (active.size() >= 2) {
      const Vector p = meet(active[active.size() - 2], active.back());
      if (line.normal.dot(p) > line.offset + tol * std::max(1.0, std::abs(line.offset))) {
        active.pop_back();
      } else {
        break;
      }
    }
    active.push_back(line);
  }
  for (std::size_t i = 0; i + 1 < active.size(); ++i) out.vertices.push_back(meet(active[i], active[i + 1]));

  const Vector first_ray = detail::rotate_quarter(active.front().normal, false);
  const Vector last_ray = detail::rotate_quarter(active.back().normal, true);
  out.rays.push_back(first_ray);
  if ((last_ray - first_ray).norm() > tol) out.rays.push_back(last_ray);
  out.boundary_point = out.vertices.empty() ? Vector(active.front().normal * active.front().offset)
                                            : out.vertices.front();
  return out;
}

/// A polytope in V-representation; for d = 2 `polygon` lists the vertices
/// counterclockwise.
struct RegionPolytope {
  std::size_t dimension = 0;
  std::vector<Vector> vertices;
  std::vector<Vector> polygon;
};

/// Extreme points of a planar point set in counterclockwise order (monotone
/// chain). Collinear boundary points are dropped.
inline RegionPolytope convex_hull_2d(std::vector<Vector> points, double tol = kGeometricTolerance) {
  if (points.empty()) throw InputError("convex_hull_2d: no points");
  for (const auto& p : points) {
    if (p.size() != 2) throw InputError("convex_hull_2d: points must be planar");
  }
  std::sort(points.begin(), points.end(), [](const Vector& a, const Vector& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double merge_tol = tol * std::max(1.0, scale);
  std::vector<Vector> unique;
  for (const auto& p : points) {
    if (unique.empty() || (p - unique.back()).cwiseAbs().maxCoeff() > merge_tol) unique.push_back(p);
  }

  RegionPolytope hull;
  hull.dimension = 2;
  if (unique.size() <= 2) {
    hull.vertices = unique;
    hull.polygon = unique;
    return hull;
  }
  // turn test on the sine of the angle, scale-free
  auto left_turn = [&](const Vector& o, const Vector& a, const Vector& b) {
    const Vector u = a - o;
    const Vector v = b - o;
    return detail::cross(u, v) > tol * u.norm() * v.norm();
  };
  std::vector<Vector> chain(2 * unique.size());
  std::size_t k = 0;
  for (const auto& p : unique) {
    while (k >= 2 && !left_turn(chain[k - 2], chain[k - 1], p)) --k;
    chain[k++] = p;
  }
  for (std::size_t i = unique.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !left_turn(chain[k - 2], chain[k - 1], unique[i])) --k;
    chain[k++] = unique[i];
  }
  chain.resize(k - 1);
  if (chain.size() < 2) chain = {unique.front(), unique.back()};
  hull.vertices = chain;
  hull.polygon = chain;
  return hull;
}

namespace detail {

/// Phase-one simplex: is v a convex combination of pts (excluding `skip`)?
inline bool in_convex_hull(const std::vector<Vector>& pts, std::size_t skip, const Vector& v, double tol) {
  const auto d = v.size();
  std::vector<std::size_t> cols;
  double scale = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == skip) continue;
    cols.push_back(j);
    scale = std::max(scale, (pts[j] - v).cwiseAbs().maxCoeff());
  }
  if (cols.empty()) return false;
  if (scale == 0.0) return true;
  const Eigen::Index m = d + 1;
  const auto n = static_cast<Eigen::Index>(cols.size());
  // columns: n weights, m artificials, rhs
  Matrix tab = Matrix::Zero(m + 1, n + m + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    tab.block(0, j, d, 1) = (pts[cols[static_cast<std::size_t>(j)]] - v) / scale;
    tab(d, j) = 1.0;
  }
  for (Eigen::Index r = 0; r < m; ++r) tab(r, n + r) = 1.0;
  tab(d, n + m) = 1.0;
  // make every rhs nonnegative (only the last is nonzero, already positive)
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n + r;
  // cost row: minimise sum of artificials, expressed in nonbasic terms
  for (Eigen::Index j = 0; j < n + m + 1; ++j) {
    double s = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) s += tab(r, j);
    tab(m, j) = (j >= n && j < n + m) ? 0.0 : -s;
  }
  const double eps = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (tab(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab(r, enter) > eps) {
        const double ratio = tab(r, n + m) / tab(r, enter);
        if (leave < 0 || ratio < best - eps ||
            (std::abs(ratio - best) <= eps && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;
    tab.row(leave) /= tab(leave, enter);
    for (Eigen::Index r = 0; r <= m; ++r) {
      if (r != leave && tab(r, enter) != 0.0) tab.row(r) -= tab(r, enter) * tab.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  return -tab(m, n + m) <= tol;
}

}  // namespace detail

/// Extreme points of a finite point set in any dimension.
///
/// d = 1 and d = 2 use direct methods; otherwise each point is tested for
/// membership in the hull of the others with a small phase-one simplex.
inline RegionPolytope extreme_points(const std::vector<Vector>& points, double tol = kGeometricTolerance) {
  if (points.empty()) throw InputError("extreme_points: no points");
  const auto d = points.front().size();
  if (d == 2) return convex_hull_2d(points, tol);
  RegionPolytope out;
  out.dimension = static_cast<std::size_t>(d);
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Vector& a, const Vector& b) { return a(0) < b(0); });
    out.vertices.push_back(*lo);
    if ((*hi - *lo).cwiseAbs().maxCoeff() > tol) out.vertices.push_back(*hi);
    return out;
  }
  std::vector<Vector> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  std::vector<Vector> unique;
  for (const auto& p : sorted) {
    bool dup = false;
    for (auto it = unique.rbegin(); it != unique.rend() && (p(0) - (*it)(0)) <= tol; ++it) {
      if ((p - *it).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(p);
  }
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (!detail::in_convex_hull(unique, i, unique[i], 1e-10)) out.vertices.push_back(unique[i]);
  }
  return out;
}

/// Clip a convex counterclockwise polygon by {z | w^T z <= c}.
inline std::vector<Vector> clip_polygon(const std::vector<Vector>& polygon, const Vector& w, double c) {
  std::vector<Vector> out;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& a = polygon[i];
    const Vector& b = polygon[(i + 1) % n];
    const double fa = w.dot(a) - c;
    const double fb = w.dot(b) - c;
    if (fa <= 0.0) out.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      const double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

/// The halfspace intersection clipped to the square center +- half_width,
/// as a counterclockwise polygon.
inline RegionPolytope bounded_polygon_2d(const HalfspaceSet& hs, const Vector& center, double half_width,
                                         double tol = kGeometricTolerance) {
  if (hs.dimension() != 2) throw UnsupportedDimensionError("bounded_polygon_2d requires dimension 2");
  const HalfspaceSet le = hs.as_less_equal();
  std::vector<Vector> poly;
  const double corners[4][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  for (const auto& c : corners) {
    Vector p(2);
    p << center(0) + c[0] * half_width, center(1) + c[1] * half_width;
    poly.push_back(p);
  }
  for (std::size_t m = 0; m < le.size() && !poly.empty(); ++m) {
    poly = clip_polygon(poly, le.normals()[m], le.offsets()[m]);
  }
  if (poly.empty()) {
    RegionPolytope none;
    none.dimension = 2;
    return none;
  }
  return convex_hull_2d(poly, tol);
}

inline double distance_to_segment(const Vector& p, const Vector& a, const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

/// Euclidean distance from p to a convex polygon (zero inside).
inline double distance_to_convex_polygon(const Vector& p, const std::vector<Vector>& polygon) {
  if (polygon.empty()) throw InputError("distance_to_convex_polygon: empty polygon");
  if (polygon.size() == 1) return (p - polygon[0]).norm();
  const std::size_t n = polygon.size();
  bool inside = n >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& a = polygon[i];
    const Vector& b = polygon[(i + 1) % n];
    if (n >= 3 && detail::cross(b - a, p - a) < 0.0) inside = false;
    best = std::min(best, distance_to_segment(p, a, b));
  }
  return inside ? 0.0 : best;
}

/// Hausdorff distance between two convex polygons (attained at vertices).
inline double hausdorff_2d(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  double h = 0.0;
  for (const auto& v : a) h = std::max(h, distance_to_convex_polygon(v, b));
  for (const auto& v : b) h = std::max(h, distance_to_convex_polygon(v, a));
  return h;
}

}  // namespace conexp
