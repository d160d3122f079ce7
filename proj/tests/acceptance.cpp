// Acceptance checks AC1-AC8; one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conexp/cli.hpp"
#include "oracles.hpp"

using namespace conexp;
namespace tst = conexp::testing;

namespace {

const std::string kData = CONEXP_DATA_DIR;
const std::string kGolden = CONEXP_GOLDEN_DIR;

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

WeightedSample worked() { return WeightedSample::uniform({v2(5, 2), v2(4, -1), v2(3, 1)}); }

/// Collects failures with a short reason for the first one.
struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (failures == 0) first = what;
      ++failures;
    }
  }
  void near(double a, double b, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %.17g vs %.17g", what.c_str(), a, b);
    expect(std::abs(a - b) <= tol, buf);
  }
};

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome finish(const Tally& t, double seconds, double limit) {
  char buf[256];
  if (t.failures > 0) {
    std::snprintf(buf, sizeof buf, "%ld/%ld checks failed; first: %s", t.failures, t.checks, t.first.c_str());
    return {false, buf};
  }
  if (limit > 0.0 && seconds >= limit) {
    std::snprintf(buf, sizeof buf, "runtime %.3fs exceeds %.0fs", seconds, limit);
    return {false, buf};
  }
  std::snprintf(buf, sizeof buf, "%ld checks, %.3fs", t.checks, seconds);
  return {true, buf};
}

// AC1
Outcome worked_example() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  const auto x = worked();
  const auto cone = ConeSpec::nonnegative_orthant(2);
  const std::vector<double> down = {3.6, 0.0};
  const std::vector<double> up = {4.4, 1.2};
  const auto primal_down = downward_expectile(x, cone, 0.25).halfspaces.offsets();
  const auto primal_up = upward_expectile(x, cone, 0.75).halfspaces.offsets();
  const auto dual_down = dual_cone_expectile(x, cone, 0.25).halfspaces.offsets();
  const auto dual_up = dual_cone_expectile(x, cone, 0.25, SetKind::upward).halfspaces.offsets();
  for (std::size_t m = 0; m < 2; ++m) {
    const auto s = x.project(cone.generators_cplus()[m]);
    const double oracle_down = dual_expectile_oracle(s, 0.25, Extremum::min);
    const double oracle_up = dual_expectile_oracle(s, 0.25, Extremum::max);
    for (double v : {primal_down[m], dual_down[m], oracle_down}) t.near(v, down[m], 1e-10, "downward offset");
    for (double v : {primal_up[m], dual_up[m], oracle_up}) t.near(v, up[m], 1e-10, "upward offset");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(t, secs, 1.0);
}

// AC2
Outcome scenario_polytope() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  const auto poly = scenario_vertices({1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.25);
  const std::vector<std::vector<double>> expected = {
      {0.6, 0.2, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.2, 0.6},
      {3.0 / 7, 3.0 / 7, 1.0 / 7}, {3.0 / 7, 1.0 / 7, 3.0 / 7}, {1.0 / 7, 3.0 / 7, 3.0 / 7}};
  t.expect(poly.vertices.size() == 6, "N=3 vertex count");
  t.expect(tst::same_vertex_sets(poly.vertices, expected, 1e-10), "N=3 vertex values");
  std::mt19937_64 rng(1001);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double alpha : {0.05, 0.25, 0.4}) {
      for (int variant = 0; variant < 3; ++variant) {
        const auto p = variant == 0 ? std::vector<double>(n, 1.0 / static_cast<double>(n))
                                    : tst::random_probabilities(rng, n);
        const auto fast = scenario_vertices(p, alpha).vertices;
        const auto slow = tst::brute_force_scenario_vertices(p, alpha);
        t.expect(tst::same_vertex_sets(fast, slow, 1e-10),
                 "brute force mismatch at N=" + std::to_string(n) + " alpha=" + std::to_string(alpha));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(t, secs, 10.0);
}

// AC3
Outcome region_duality() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(1002);
  std::vector<WeightedSample> samples = {worked()};
  for (int k = 0; k < 20; ++k) samples.push_back(tst::random_sample(rng, 2 + k % 7, 2));
  double worst = 0.0;
  for (const auto& x : samples) {
    const auto exact = region_vertices(x, 0.25).polygon;
    double prev = INFINITY;
    for (std::size_t n : {36, 72, 360}) {
      const double d = hausdorff_2d(region_primal_polygon_2d(x, 0.25, n).polygon, exact);
      t.expect(d <= prev + 1e-12, "Hausdorff distance grew at " + std::to_string(n) + " directions");
      prev = d;
    }
    t.expect(prev <= 1e-2, "Hausdorff distance above 1e-2 at 360 directions");
    worst = std::max(worst, prev);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto out = finish(t, secs, 0.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "; max distance %.2e", worst);
  out.detail += buf;
  return out;
}

// AC4
Outcome scalar_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const std::vector<double> alphas = {0.02, 0.1, 0.2, 0.25, 0.3, 0.4, 0.45, 0.49, 0.5};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 50;
    const auto p = tst::random_probabilities(rng, n);
    std::vector<double> xv(n), yv(n);
    std::normal_distribution<double> g(0.0, 2.0);
    double mean_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xv[i] = g(rng);
      yv[i] = g(rng);
      mean_abs += p[i] * std::abs(xv[i] - yv[i]);
    }
    if (trial % 7 == 0 && n > 2) xv[1] = xv[0];
    const ScalarSample x(xv, p), y(yv, p);
    const double b = u(rng);
    const double c = std::abs(u(rng)) + 0.1;
    std::vector<double> shifted(xv), scaled(xv), reflected(xv);
    for (std::size_t i = 0; i < n; ++i) {
      shifted[i] += b;
      scaled[i] *= c;
      reflected[i] = -reflected[i];
    }
    const ScalarSample xs(shifted, p), xc(scaled, p), xr(reflected, p);
    double prev = -INFINITY;
    for (double a : alphas) {
      const double e = expectile(x, a);
      t.near(dual_expectile_oracle(x, a, Extremum::min), e, 1e-12, "dual oracle (min)");
      t.near(dual_expectile_oracle(x, a, Extremum::max), expectile(x, 1.0 - a), 1e-12, "dual oracle (max)");
      t.expect(e >= prev - 1e-12, "monotonicity in alpha");
      prev = e;
      t.near(expectile(xs, a), e + b, 1e-11, "translativity");
      t.near(expectile(xc, a), c * e, 1e-11, "homogeneity");
      t.near(expectile(xr, 1.0 - a), -e, 1e-11, "reflection");
      for (double level : {a, 1.0 - a}) {
        t.expect(std::abs(expectile(x, level) - expectile(y, level)) <= expectile_beta(level) * mean_abs + 1e-11,
                 "Lipschitz bound");
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(t, secs, 30.0);
}

// AC5
Outcome set_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> ray_len(0.0, 5.0);
  const std::vector<double> levels = {0.05, 0.15, 0.25, 0.35, 0.5, 0.65, 0.8, 0.95};
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto x = tst::random_sample(rng, n, 2, 3.0);
    const auto cone = tst::random_cone_2d(rng);

    // nesting and duality transfer
    std::vector<double> prev;
    for (double a : levels) {
      const auto down = downward_expectile(x, cone, a).halfspaces;
      const auto up = upward_expectile(x, cone, 1.0 - a).halfspaces;
      const auto mirrored = negate(downward_expectile(x.negated(), cone, a).halfspaces);
      for (std::size_t m = 0; m < down.size(); ++m) {
        if (!prev.empty()) t.expect(prev[m] <= down.offsets()[m] + 1e-9, "nesting in alpha");
        t.near(up.offsets()[m], mirrored.offsets()[m], 1e-9, "duality transfer");
      }
      t.expect(mirrored.sense() == up.sense(), "duality transfer sense");
      prev = down.offsets();
    }

    // superadditivity on vertex-sampled Minkowski sums
    std::vector<Vector> other;
    for (std::size_t i = 0; i < n; ++i) other.push_back(tst::random_vector(rng, 2, 3.0));
    const WeightedSample y(other, x.probabilities());
    const auto sum = atomwise_sum(x, y);
    for (double a : {0.05, 0.25, 0.5}) {
      const auto px = vertices_2d(downward_expectile(x, cone, a).halfspaces);
      const auto py = vertices_2d(downward_expectile(y, cone, a).halfspaces);
      const auto target = downward_expectile(sum, cone, a).halfspaces;
      for (const auto& vx : px.vertices) {
        for (const auto& vy : py.vertices) {
          t.expect(contains(target, vx + vy, 1e-9), "superadditivity at vertices");
          for (const auto& r : py.rays) t.expect(contains(target, vx + vy + ray_len(rng) * r, 1e-9), "superadditivity along rays");
        }
      }
    }

    // affine equivariance
    const Matrix a = tst::random_invertible(rng, 2);
    const Vector b = tst::random_vector(rng, 2, 3.0);
    const auto base = downward_expectile(x, cone, 0.3).halfspaces;
    const auto image = downward_expectile(x.affine(a, b), transform_cone(a, cone), 0.3).halfspaces;
    for (int k = 0; k < 200; ++k) {
      const Vector z = tst::random_vector(rng, 2, 4.0);
      bool margin = true;
      for (std::size_t m = 0; m < base.size(); ++m) margin = margin && std::abs(base.violation(m, z)) > 1e-9;
      if (margin) t.expect(contains(image, a * z + b, 0.0) == contains(base, z, 0.0), "affine equivariance");
    }

    // separation from the region
    for (double lv : {0.1, 0.3, 0.5}) {
      const auto region = region_vertices(x, lv).vertices;
      const auto down = downward_expectile(x, cone, lv).halfspaces;
      const auto up = upward_expectile(x, cone, 1.0 - lv).halfspaces;
      for (std::size_t m = 0; m < down.size(); ++m) {
        for (const auto& v : region) {
          t.expect(down.offsets()[m] <= down.normals()[m].dot(v) + 1e-9, "separation (downward)");
          t.expect(up.offsets()[m] >= up.normals()[m].dot(v) - 1e-9, "separation (upward)");
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(t, secs, 0.0);
}

// AC6
Outcome rank_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int pair = 0; pair < 1000; ++pair) {
    const auto x = tst::random_sample(rng, 2 + pair % 7, 2, 2.0);
    const auto cone = tst::random_cone_2d(rng);
    const Vector z = tst::random_vector(rng, 2, 2.5);
    const double a = u(rng);
    const auto r = expectile_rank(z, x, cone);
    if (std::abs(r.downward - a) > 1e-9) {
      t.expect(contains(downward_expectile(x, cone, a).halfspaces, z, 0.0) == (r.downward <= a), "sublevel equivalence");
    }
    if (std::abs(r.upward - a) > 1e-9) {
      t.expect(contains(upward_expectile(x, cone, a).halfspaces, z, 0.0) == (r.upward >= a), "superlevel equivalence");
    }
    t.near(upward_rank(-z, x.negated(), cone) + r.downward, 1.0, 1e-9, "rank-sum identity");
  }

  for (int triple = 0; triple < 500; ++triple) {
    const auto x = tst::random_sample(rng, 2 + triple % 7, 2, 2.0);
    const auto cone = tst::random_cone_2d(rng);
    const Vector z1 = tst::random_vector(rng, 2, 2.5);
    const Vector z2 = tst::random_vector(rng, 2, 2.5);
    const double s = unit(rng);
    const auto r1 = expectile_rank(z1, x, cone);
    const auto r2 = expectile_rank(z2, x, cone);
    const auto rm = expectile_rank(s * z1 + (1.0 - s) * z2, x, cone);
    t.expect(rm.downward <= std::max(r1.downward, r2.downward) + 1e-9, "quasiconvexity");
    t.expect(rm.upward >= std::min(r1.upward, r2.upward) - 1e-9, "quasiconcavity");
  }

  int met = 0;
  for (int k = 0; k < 2000; ++k) {
    const auto x = tst::random_sample(rng, 2 + k % 7, 2, 2.0);
    const auto cone = tst::random_cone_2d(rng);
    const Vector y = tst::random_vector(rng, 2, 1.5);
    const Vector z = k % 2 == 0 ? Vector(y + tst::random_cone_point(rng, cone)) : tst::random_vector(rng, 2, 1.5);
    const auto inf = infer_cone_order(y, z, x, cone);
    if (!inf.hypothesis_met) continue;
    ++met;
    t.expect((inf.verdict == Verdict::less_equal) == cone.less_equal(y, z), "rank-to-order inference");
  }
  t.expect(met >= 100, "too few hypothesis-satisfying pairs");

  const auto sym = WeightedSample::uniform({v2(1, 0), v2(0, 1)});
  const auto inf = infer_cone_order(v2(1, 0), v2(0, 1), sym, ConeSpec::nonnegative_orthant(2));
  t.expect(inf.verdict == Verdict::inconclusive, "symmetric incomparable pair is inconclusive");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto out = finish(t, secs, 0.0);
  out.detail += "; " + std::to_string(met) + " pairs met the hypothesis";
  return out;
}

// AC7
Outcome risk_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(1006);
  const auto orthant = ConeSpec::nonnegative_orthant(2);
  const auto zero = risk_measure(WeightedSample::uniform({v2(0, 0)}), orthant, 0.25).halfspaces;
  for (int k = 0; k < 1000; ++k) {
    Vector z = tst::random_vector(rng, 2, 1.0);
    if (k % 4 == 0) z(k % 8 == 0 ? 0 : 1) = 0.0;
    t.expect(contains(zero, z, 0.0) == orthant.contains(z, 0.0), "R(0) equals the cone");
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = tst::random_sample(rng, 2 + trial % 7, 2, 3.0);
    const auto cone = tst::random_cone_2d(rng, true);
    const double a = 0.05 + 0.045 * trial;
    const auto base = risk_measure(x, cone, a).halfspaces;
    // cash translativity: R(X + z) = R(X) - z
    const Vector cash = tst::random_vector(rng, 2, 5.0);
    const auto moved = risk_measure(x.translated(cash), cone, a).halfspaces;
    for (std::size_t m = 0; m < base.size(); ++m) {
      t.near(moved.offsets()[m], base.offsets()[m] - base.normals()[m].dot(cash), 1e-10, "translativity");
    }
    // C-dominated perturbation shrinks the risk set
    std::vector<Vector> better;
    for (const auto& p : x.points()) better.push_back(p + tst::random_cone_point(rng, cone, 2.0));
    const auto improved = risk_measure(WeightedSample(better, x.probabilities()), cone, a).halfspaces;
    for (std::size_t m = 0; m < base.size(); ++m) {
      t.expect(improved.offsets()[m] <= base.offsets()[m] + 1e-12, "monotonicity");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(t, secs, 0.0);
}

// AC8
std::vector<std::string> golden_args(const std::string& name) {
  const std::string csv = kData + "/worked_example.csv";
  const std::string cone = kData + "/orthant2.json";
  if (name == "cone_expectile") return {"cone-expectile", "--input", csv, "--cone", cone, "--alpha", "0.25"};
  if (name == "region") return {"region", "--input", csv, "--alpha", "0.25", "--directions", "360"};
  if (name == "scenarios") return {"scenarios", "--input", csv, "--alpha", "0.25"};
  if (name == "rank") return {"rank", "--input", csv, "--cone", cone, "--point", "3.6,0", "--point", "4.4,1.2", "--compare"};
  return {"risk", "--input", csv, "--cone", cone, "--alpha", "0.25"};
}

Outcome cli_determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const std::string name : {"cone_expectile", "region", "scenarios", "rank", "risk"}) {
    std::ifstream in(kGolden + "/" + name + ".json", std::ios::binary);
    std::stringstream golden;
    golden << in.rdbuf();
    t.expect(static_cast<bool>(in), name + ": golden file missing");
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "4"}) {
      auto args = golden_args(name);
      args.push_back("--threads");
      args.push_back(threads);
      std::ostringstream out, err;
      t.expect(cli::run(args, out, err) == 0, name + ": exit code");
      outputs.push_back(out.str());
    }
    t.expect(outputs[0] == golden.str(), name + ": differs from golden file");
    t.expect(outputs[0] == outputs[1], name + ": differs between runs");
    t.expect(outputs[0] == outputs[2], name + ": differs across thread counts");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return finish(t, secs, 0.0);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 worked example offsets, three routes", worked_example},
      {"AC2 scenario polytope vertices", scenario_polytope},
      {"AC3 region duality (Hausdorff)", region_duality},
      {"AC4 scalar expectile suite", scalar_suite},
      {"AC5 set-valued property suite", set_suite},
      {"AC6 rank suite", rank_suite},
      {"AC7 risk measure", risk_suite},
      {"AC8 CLI determinism and golden files", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
