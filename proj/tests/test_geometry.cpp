#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "momentlab/geometry.hpp"

using namespace momentlab;

namespace {

// Dense-scan oracle for the point-to-curve distance.
double scan_distance(const Point& p, const MomentCurve& c, int n = 1000000) {
  double best = 1e300;
  for (int i = 0; i <= n; ++i) {
    double t = -1.0 + 2.0 * i / n;
    double g = 0.0, pw = 1.0;
    for (int k = 0; k < c.dim; ++k) {
      pw *= t;
      double r = p[k] - c.center[k] - c.scale * pw;
      g += r * r;
    }
    best = std::min(best, g);
  }
  return std::sqrt(best);
}

MomentCurve random_curve(const CounterRng& rng, std::uint64_t i, int d,
                         std::uint64_t sub = 0) {
  Point x(d);
  for (int k = 0; k < d; ++k) x[k] = rng.uniform(i, sub + k, -0.5, 0.5);
  double r = rng.uniform(i, sub + 16, 0.5, 2.0);
  return MomentCurve(std::move(x), r);
}

// Brute-force tangency oracle: closest-approach pair on a 2000 x 2000
// parameter grid, alternating-projection refinement, then position match
// plus tangent parallelism via the Gram criterion.
bool tangent_oracle(const MomentCurve& c1, const MomentCurve& c2,
                    double tol = 1e-6) {
  const int n = 2000;
  std::vector<Point> a(n + 1), b(n + 1);
  for (int i = 0; i <= n; ++i) {
    double t = -1.0 + 2.0 * i / n;
    a[i] = c1.at(t);
    b[i] = c2.at(t);
  }
  double best = 1e300;
  double bt = 0.0, bt2 = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      double g = 0.0;
      for (int k = 0; k < c1.dim; ++k) {
        double r = a[i][k] - b[j][k];
        g += r * r;
      }
      if (g < best) {
        best = g;
        bt = -1.0 + 2.0 * i / n;
        bt2 = -1.0 + 2.0 * j / n;
      }
    }
  }
  // 1-D zoom in t, the inner t' minimization done by distance_to_curve
  double win = 0.05;
  for (int zoom = 0; zoom < 48; ++zoom) {
    double cb = 1e300, ct = bt;
    for (int i = -10; i <= 10; ++i) {
      double t = std::clamp(bt + win * i / 10.0, -1.0, 1.0);
      double g = distance_to_curve(c1.at(t), c2).dist;
      if (g < cb) {
        cb = g;
        ct = t;
      }
    }
    bt = ct;
    win /= 1.6;
  }
  bt2 = distance_to_curve(c1.at(bt), c2).t_star;
  double dist = 0.0;
  Point pa = c1.at(bt), pb = c2.at(bt2);
  for (int k = 0; k < c1.dim; ++k) dist += (pa[k] - pb[k]) * (pa[k] - pb[k]);
  dist = std::sqrt(dist);
  if (dist > tol) return false;
  // tangent vectors
  auto deriv = [](const MomentCurve& c, double t) {
    Point v(c.dim);
    double pw = 1.0;
    for (int i = 1; i <= c.dim; ++i) {
      v[i - 1] = c.scale * i * pw;
      pw *= t;
    }
    return v;
  };
  Point v1 = deriv(c1, bt), v2 = deriv(c2, bt2);
  double n1 = 0.0, n2 = 0.0, dot = 0.0;
  for (int k = 0; k < c1.dim; ++k) {
    n1 += v1[k] * v1[k];
    n2 += v2[k] * v2[k];
    dot += v1[k] * v2[k];
  }
  double gram = n1 * n2 - dot * dot;
  return gram <= tol * n1 * n2;
}

}  // namespace

TEST_CASE("gamma_point basics") {
  CHECK(gamma_point(0.0, 3) == Point{0.0, 0.0, 0.0});
  CHECK(gamma_point(1.0, 3) == Point{1.0, 1.0, 1.0});
  auto p = gamma_point(-0.5, 3);
  CHECK(p[0] == doctest::Approx(-0.5));
  CHECK(p[1] == doctest::Approx(0.25));
  CHECK(p[2] == doctest::Approx(-0.125));
  CHECK_THROWS_AS(gamma_point(0.0, 1), InvalidInput);
}

TEST_CASE("curve_point evaluation and range") {
  MomentCurve c(Point{1.0, 0.0, 0.0}, 2.0);
  auto p = curve_point(c, 1.0);
  CHECK(p[0] == doctest::Approx(3.0));
  CHECK(p[1] == doctest::Approx(2.0));
  CHECK(p[2] == doctest::Approx(2.0));
  auto q = curve_point(MomentCurve::unit(3), 0.5);
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.25));
  CHECK(q[2] == doctest::Approx(0.125));
  MomentCurve worked(Point{1.0 / 16, 1.0 / 32, 1.0 / 64}, 7.0 / 8);
  auto w = curve_point(worked, 0.5);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(0.25));
  CHECK(w[2] == doctest::Approx(0.125));
  CHECK_THROWS_AS(curve_point(c, 1.2), InvalidInput);
  CHECK_NOTHROW(curve_point(c, 1.2, true));
  CHECK_THROWS_AS(curve_point(c, 1.6, true), InvalidInput);
}

TEST_CASE("distance_to_curve against dense scan oracle") {
  MomentCurve c = MomentCurve::unit(3);
  auto on = distance_to_curve(Point{0.0, 0.0, 0.0}, c);
  CHECK(on.dist == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(on.t_star == doctest::Approx(0.0).epsilon(1e-6));

  auto off = distance_to_curve(Point{0.0, 0.0, 1.0}, c);
  CHECK(off.dist <= 1.0);
  CHECK(off.dist == doctest::Approx(scan_distance({0.0, 0.0, 1.0}, c))
                        .epsilon(1e-6));

  // interior minimizer near t = 0.70; the scan oracle is ground truth
  auto off_axis = distance_to_curve(Point{2.0, 0.0, 0.0}, c);
  CHECK(off_axis.dist ==
        doctest::Approx(scan_distance({2.0, 0.0, 0.0}, c)).epsilon(1e-8));

  auto boundary = distance_to_curve(Point{1.0, 1.5, 1.0}, c);
  CHECK(boundary.t_star == doctest::Approx(1.0));
  CHECK(boundary.dist ==
        doctest::Approx(scan_distance({1.0, 1.5, 1.0}, c)).epsilon(1e-8));

  CHECK_THROWS_AS(
      distance_to_curve(Point{std::nan(""), 0.0, 0.0}, c), InvalidInput);

  CounterRng rng("distance-oracle", 11);
  for (std::uint64_t i = 0; i < 25; ++i) {
    MomentCurve rc = random_curve(rng, i, 3);
    Point p(3);
    for (int k = 0; k < 3; ++k) p[k] = rng.uniform(i, 20 + k, -2.0, 2.0);
    double got = distance_to_curve(p, rc).dist;
    double want = scan_distance(p, rc, 200000);
    CHECK(got <= want + 1e-9);
    CHECK(got == doctest::Approx(want).epsilon(1e-5));
  }
}

TEST_CASE("point_in_tube agrees with distance_to_curve") {
  CounterRng rng("tube-membership", 3);
  MomentCurve c(Point{0.1, -0.2, 0.05}, 1.3);
  double delta = 0.03;
  int checked = 0;
  for (std::uint64_t i = 0; i < 4000; ++i) {
    Point p(3);
    for (int k = 0; k < 3; ++k) p[k] = rng.uniform(i, k, -1.6, 1.6);
    double dist = distance_to_curve(p, c).dist;
    if (std::abs(dist - delta) < 1e-4) continue;  // skip knife-edge cases
    CHECK(point_in_tube(p, c, delta) == (dist <= delta));
    ++checked;
  }
  CHECK(checked > 3500);
}

TEST_CASE("pair_invariants worked examples") {
  auto inv = pair_invariants(MomentCurve::unit(3),
                             MomentCurve::centered(3, 1.5));
  CHECK(inv.deltas[0] == doctest::Approx(0.0));
  CHECK(inv.deltas[1] == doctest::Approx(0.0));
  CHECK(inv.dbar == doctest::Approx(0.5));
  CHECK(inv.delta_bar == doctest::Approx(0.0));
  REQUIRE(inv.t_candidate.has_value());
  CHECK(*inv.t_candidate == doctest::Approx(0.0));

  MomentCurve worked(Point{1.0 / 16, 1.0 / 32, 1.0 / 64}, 7.0 / 8);
  auto wv = pair_invariants(worked, MomentCurve::unit(3));
  CHECK(wv.deltas[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(wv.deltas[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(wv.dbar == doctest::Approx(7.0 / 32));
  REQUIRE(wv.t_candidate.has_value());
  CHECK(*wv.t_candidate == doctest::Approx(0.5));

  auto eq = pair_invariants(MomentCurve(Point{0.1, 0.0, 0.0}, 1.0),
                            MomentCurve::unit(3));
  CHECK(!eq.t_candidate.has_value());

  CHECK_THROWS_AS(
      pair_invariants(MomentCurve::unit(3), MomentCurve::unit(4)),
      InvalidInput);
}

TEST_CASE("pair_invariants swap symmetry") {
  CounterRng rng("swap-symmetry", 5);
  for (std::uint64_t i = 0; i < 300; ++i) {
    MomentCurve c1 = random_curve(rng, i, 3, 0);
    MomentCurve c2 = random_curve(rng, i, 3, 32);
    auto a = pair_invariants(c1, c2);
    auto b = pair_invariants(c2, c1);
    for (std::size_t k = 0; k < a.deltas.size(); ++k)
      CHECK(a.deltas[k] == doctest::Approx(b.deltas[k]).epsilon(1e-12));
    CHECK(a.dbar == doctest::Approx(b.dbar));
    CHECK(a.delta_bar == doctest::Approx(b.delta_bar).epsilon(1e-12));
    if (a.t_candidate && b.t_candidate)
      CHECK(*a.t_candidate == doctest::Approx(*b.t_candidate));
  }
}

TEST_CASE("is_tangent worked examples") {
  auto t1 = is_tangent(MomentCurve::unit(3), MomentCurve::centered(3, 1.5));
  REQUIRE(t1.has_value());
  CHECK(t1->t == doctest::Approx(0.0));
  CHECK(t1->point[0] == doctest::Approx(0.0));
  CHECK(t1->point[2] == doctest::Approx(0.0));

  MomentCurve worked(Point{1.0 / 16, 1.0 / 32, 1.0 / 64}, 7.0 / 8);
  auto t2 = is_tangent(worked, MomentCurve::unit(3));
  REQUIRE(t2.has_value());
  CHECK(t2->t == doctest::Approx(0.5));
  CHECK(t2->point[0] == doctest::Approx(0.5));
  CHECK(t2->point[1] == doctest::Approx(0.25));
  CHECK(t2->point[2] == doctest::Approx(0.125));

  CHECK(!is_tangent(MomentCurve(Point{0.1, 0.0, 0.0}, 1.0),
                    MomentCurve::unit(3))
             .has_value());
  CHECK_THROWS_AS(
      is_tangent(MomentCurve::unit(3), MomentCurve::unit(3)), InvalidInput);
}

TEST_CASE("tangency oracle equivalence on random and constructed pairs") {
  CounterRng rng("tangency-oracle", 17);
  int agreements = 0, total = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    MomentCurve c1 = random_curve(rng, i, 3, 0);
    MomentCurve c2 = random_curve(rng, i, 3, 32);
    bool fast = is_tangent(c1, c2, 1e-6).has_value();
    bool slow = tangent_oracle(c1, c2);
    ++total;
    if (fast == slow) ++agreements;
  }
  CHECK(agreements == total);

  for (std::uint64_t i = 0; i < 20; ++i) {
    double r = rng.uniform(1000 + i, 0, 0.5, 0.95);
    double x_last = rng.uniform(1000 + i, 1, -0.02, 0.02);
    MomentCurve c = solve_tangent_curve(x_last, r, 3);
    CHECK(is_tangent(c, MomentCurve::unit(3), 1e-6).has_value());
    CHECK(tangent_oracle(c, MomentCurve::unit(3)));
    CHECK(pair_invariants(c, MomentCurve::unit(3)).max_delta() <= 1e-10);
  }
}

TEST_CASE("solve_tangent_curve worked examples") {
  auto c = solve_tangent_curve(1.0 / 64, 7.0 / 8, 3);
  CHECK(c.center[0] == doctest::Approx(1.0 / 16));
  CHECK(c.center[1] == doctest::Approx(1.0 / 32));
  CHECK(c.center[2] == doctest::Approx(1.0 / 64));
  CHECK(c.scale == doctest::Approx(7.0 / 8));

  auto z = solve_tangent_curve(0.0, 1.5, 3);
  CHECK(z.center[0] == doctest::Approx(0.0));
  CHECK(z.scale == doctest::Approx(1.5));

  CHECK_THROWS_AS(solve_tangent_curve(1.0, 0.99, 3), InvalidConfiguration);
  CHECK_THROWS_AS(solve_tangent_curve(0.5, 1.0, 3), InvalidInput);
}

TEST_CASE("project_to_parabola") {
  auto p = project_to_parabola(MomentCurve(Point{1.0, 2.0, 3.0}, 2.0));
  CHECK(p.x1 == doctest::Approx(1.0));
  CHECK(p.x2 == doctest::Approx(2.0));
  CHECK(p.scale == doctest::Approx(2.0));
  auto u = project_to_parabola(MomentCurve::unit(3));
  CHECK(u.x1 == 0.0);
  CHECK(u.x2 == 0.0);
  CHECK(u.scale == 1.0);
}

TEST_CASE("planar_intersections quadratic cases") {
  PlanarParabola unit{0.0, 0.0, 1.0};
  auto roots = planar_intersections(unit, {0.0, 0.1, 2.0});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-std::sqrt(0.2)));
  CHECK(roots[1] == doctest::Approx(std::sqrt(0.2)));

  CHECK(planar_intersections(unit, {0.0, 0.05, 1.0}).empty());

  auto dbl = planar_intersections(unit, {0.0, 0.0, 1.5});
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0] == doctest::Approx(0.0));
}

TEST_CASE("curve_intersections worked examples") {
  auto tangent = curve_intersections(MomentCurve::unit(3),
                                     MomentCurve::centered(3, 1.5));
  REQUIRE(tangent.count() == 1);
  CHECK(tangent.points[0].t == doctest::Approx(0.0));
  CHECK(tangent.points[0].t_prime == doctest::Approx(0.0));

  auto shifted = curve_intersections(MomentCurve(Point{0.1, 0.0, 0.0}, 1.0),
                                     MomentCurve::unit(3));
  CHECK(shifted.count() == 0);

  MomentCurve worked(Point{1.0 / 16, 1.0 / 32, 1.0 / 64}, 7.0 / 8);
  auto w = curve_intersections(worked, MomentCurve::unit(3));
  REQUIRE(w.count() == 1);
  CHECK(w.points[0].point[0] == doctest::Approx(0.5));
  CHECK(w.points[0].point[1] == doctest::Approx(0.25));
  CHECK(w.points[0].point[2] == doctest::Approx(0.125));
}

TEST_CASE("at most two intersections across random pairs") {
  CounterRng rng("at-most-two", 23);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    MomentCurve c1 = random_curve(rng, i, 3, 0);
    MomentCurve c2 = random_curve(rng, i, 3, 32);
    auto rep = curve_intersections(c1, c2);
    CHECK(rep.count() <= 2);
  }
}

TEST_CASE("comparable neighborhoods under small parameter shifts") {
  CounterRng rng("comparable", 29);
  double delta = 0.02;
  for (std::uint64_t i = 0; i < 50; ++i) {
    MomentCurve c1 = random_curve(rng, i, 3, 0);
    // perturb with total parameter movement <= delta
    Point x = c1.center;
    double budget = delta / 4.0;
    for (int k = 0; k < 3; ++k) x[k] += rng.uniform(i, 40 + k, -budget, budget);
    double r = c1.scale + rng.uniform(i, 50, -budget, budget);
    MomentCurve c2(std::move(x), r);
    for (int j = 0; j < 40; ++j) {
      double t = rng.uniform(i, 60 + j, -1.0, 1.0);
      Point p = c1.at(t);
      for (int k = 1; k < 3; ++k)
        p[k] += rng.uniform(i, 100 + 4 * j + k, -delta / 2, delta / 2);
      CHECK(distance_to_curve(p, c2).dist <= 3.0 * delta);
    }
  }
}

TEST_CASE("projection identity for tube points") {
  CounterRng rng("projection", 31);
  double delta = 0.05;
  MomentCurve c(Point{0.2, -0.1, 0.3}, 1.4);
  MomentCurve planar(Point{0.2, -0.1}, 1.4);
  int accepted = 0;
  for (std::uint64_t i = 0; i < 4000 && accepted < 1000; ++i) {
    double t = rng.uniform(i, 0, -1.0, 1.0);
    Point p = c.at(t);
    for (int k = 0; k < 3; ++k)
      p[k] += rng.uniform(i, 1 + k, -delta, delta);
    if (distance_to_curve(p, c).dist > delta) continue;
    ++accepted;
    Point q{p[0], p[1]};
    CHECK(distance_to_curve(q, planar).dist <= delta + 1e-12);
  }
  CHECK(accepted >= 1000);

  // converse: planar tube points lift into the spatial tube
  for (std::uint64_t i = 0; i < 500; ++i) {
    double t = rng.uniform(10000 + i, 0, -1.0, 1.0);
    Point q = planar.at(t);
    q[0] += rng.uniform(10000 + i, 1, -delta / 2, delta / 2);
    q[1] += rng.uniform(10000 + i, 2, -delta / 2, delta / 2);
    double tn = distance_to_curve(q, planar).t_star;
    Point lift{q[0], q[1], c.center[2] + c.scale * tn * tn * tn};
    CHECK(distance_to_curve(lift, c).dist <= delta + 1e-12);
  }
}
