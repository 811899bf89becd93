#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "momentlab/field.hpp"

using namespace momentlab;

namespace {

double grid_mass(const ScalarField& f) {
  double s = 0.0;
  for (float v : f.values) s += v;
  return s * f.voxel_volume();
}

GridBox to_grid_box(const Box& b) { return GridBox{b.lo, b.hi}; }

}  // namespace

TEST_CASE("ScalarField basics on a constant field") {
  GridBox box = GridBox::cube(3, 0.5);
  auto f = build_field(box, {4, 4, 4}, [](const Point&) { return 2.0; });
  CHECK(f.size() == 64);
  CHECK(f.voxel_volume() == doctest::Approx(std::pow(0.25, 3)));
  CHECK(f.max_value() == 2.0f);
  CHECK(f.sample(Point{0.0, 0.0, 0.0}) == 2.0);
  CHECK(f.sample(Point{0.7, 0.0, 0.0}) == 0.0);  // outside
  CHECK(grid_mass(f) == doctest::Approx(2.0));   // 2 * box volume 1

  // voxel_center round-trips through sample's index arithmetic
  for (std::int64_t i : {0, 13, 63}) {
    Point c = f.voxel_center(i);
    for (double x : c) {
      CHECK(x > -0.5);
      CHECK(x < 0.5);
    }
    CHECK(f.sample(c) == 2.0);
  }
}

TEST_CASE("build_field input validation") {
  GridBox box = GridBox::cube(3, 0.5);
  CHECK_THROWS_AS(build_field(box, {4, 4}, [](const Point&) { return 1.0; }),
                  InvalidInput);
  CHECK_THROWS_AS(
      build_field(box, {4, 0, 4}, [](const Point&) { return 1.0; }),
      InvalidInput);
  CHECK_THROWS_AS(
      build_field(box, {1000, 1000, 1000}, [](const Point&) { return 1.0; },
                  1000000),
      InvalidConfiguration);
  CHECK_THROWS_AS(
      build_field(box, {4, 4, 4}, [](const Point&) { return -1.0; }),
      ComputationError);
}

TEST_CASE("resolution guard requires spacing <= delta/2") {
  GridBox box = GridBox::cube(3, 1.0);
  CHECK_THROWS_AS(tube_indicator_field(MomentCurve::unit(3), 0.05, box,
                                       {10, 10, 10}),
                  ResolutionError);
  auto s = shape_for(box, 0.05);
  for (auto v : s) CHECK(v == 80);
  CHECK_NOTHROW(check_resolution(s, box, 0.05));
}

TEST_CASE("tube indicator grid mass matches the Monte Carlo volume oracle") {
  double delta = 0.1;
  MomentCurve c = MomentCurve::unit(3);
  GridBox box = to_grid_box(curve_bounding_box(c, delta));
  auto shape = shape_for(box, delta / 2.0);  // spacing delta/4
  auto f = tube_indicator_field(c, delta, box, shape);
  auto mc = tube_volume(c, delta, 400000, 5);
  CHECK(grid_mass(f) == doctest::Approx(mc.value).epsilon(0.10));
  CHECK(f.max_value() == 1.0f);
}

TEST_CASE("grid mass is stable under refinement") {
  double delta = 0.1;
  MomentCurve c = MomentCurve::unit(3);
  GridBox box = to_grid_box(curve_bounding_box(c, delta));
  auto coarse = tube_indicator_field(c, delta, box, shape_for(box, delta));
  auto fine =
      tube_indicator_field(c, delta, box, shape_for(box, delta / 2.0));
  CHECK(grid_mass(coarse) == doctest::Approx(grid_mass(fine)).epsilon(0.05));
}

TEST_CASE("union set trivial memberships") {
  double delta = 1.0 / 64;
  UnionSetIndicator one(3, 1, delta);
  CHECK(one.s() == 3);
  // points on a net curve are members by construction
  for (int k = 0; k < one.r_count(); k += 7) {
    double r = 0.5 + k * delta;
    for (double t : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
      Point p = gamma_point(t, 3);
      for (auto& x : p) x *= r;
      CHECK(one.contains(p));
    }
  }
  CHECK(one.contains(Point{0.0, 0.0, 0.0}));
  CHECK_FALSE(one.contains(Point{3.0, 3.0, 3.0}));
  CHECK_FALSE(one.contains(Point{0.0, -1.0, 0.0}));

  CHECK_THROWS_AS(UnionSetIndicator(3, 0, delta), InvalidInput);
  CHECK_THROWS_AS(UnionSetIndicator(3, 4, delta), InvalidInput);
}

TEST_CASE("union set covers the continuum of admissible curves") {
  double delta = 1.0 / 64;
  CounterRng rng("net-cover", 3);
  for (int sp = 1; sp <= 3; ++sp) {
    UnionSetIndicator ind(3, sp, delta);
    int sc = ind.s();
    GridBox bb = ind.bounding_box();
    for (std::uint64_t i = 0; i < 200; ++i) {
      double r = rng.uniform(i, 0, 0.5, 2.0);
      double t = rng.uniform(i, 1, -1.0, 1.0);
      Point p = gamma_point(t, 3);
      for (auto& x : p) x *= r;
      for (int j = sc; j < 3; ++j)
        p[j] += rng.uniform(i, 2 + j, -0.25, 0.25);
      CHECK(ind.contains(p));
      for (int j = 0; j < 3; ++j) {
        CHECK(p[j] >= bb.lo[j]);
        CHECK(p[j] <= bb.hi[j]);
      }
    }
  }
}

TEST_CASE("union_set_field agrees with the indicator at voxel centers") {
  double delta = 1.0 / 32;
  GridBox box{{0.0, 0.0, 0.0}, {0.5, 0.5, 0.5}};
  auto shape = shape_for(box, delta);
  auto f = union_set_field(2, delta, box, shape);
  UnionSetIndicator ind(3, 2, delta);
  for (std::int64_t i = 0; i < f.size(); i += 97)
    CHECK(f.values[static_cast<std::size_t>(i)] == ind(f.voxel_center(i)));
  CHECK(f.max_value() == 1.0f);
}

TEST_CASE("field_lp_norm on constants and indicators") {
  GridBox box = GridBox::cube(3, 0.5);
  auto f = build_field(box, {8, 8, 8}, [](const Point&) { return 3.0; });
  CHECK(field_lp_norm(f, 1.0) == doctest::Approx(3.0));
  CHECK(field_lp_norm(f, 2.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(field_lp_norm(f, 0.5), InvalidInput);

  auto ind = build_field(box, {8, 8, 8},
                         [](const Point& p) { return p[0] > 0.0 ? 1.0 : 0.0; });
  double mass = grid_mass(ind);
  CHECK(mass == doctest::Approx(0.5));
  CHECK(field_lp_norm(ind, 2.0) == doctest::Approx(std::sqrt(mass)));
  CHECK(field_lp_norm(ind, 1.0) == doctest::Approx(mass));
}

TEST_CASE("indicator_mass_mc recovers a known half-space fraction") {
  GridBox box = GridBox::cube(3, 1.0);
  auto est = indicator_mass_mc(
      [](const Point& p) { return p[0] > 0.0 ? 1.0 : 0.0; }, box, 200000, 7);
  CHECK(est.value == doctest::Approx(4.0).epsilon(0.02));
  CHECK(std::abs(est.value - 4.0) <= 3.0 * est.stderr_);
  CHECK_THROWS_AS(
      indicator_mass_mc([](const Point&) { return 0.0; }, box, 10, 7),
      InvalidInput);
}

TEST_CASE("focusing indicator trivial memberships") {
  double delta = 1.0 / 64;
  FocusingIndicator ind{3, delta, 10.0};
  CHECK(ind(Point{0.0, 0.0, 0.0}) == 1.0);
  CHECK(ind(Point{2.0 * 10.0 * std::sqrt(delta), 0.0, 0.0}) == 0.0);
}

TEST_CASE("focusing mass scales like delta^(d - 1/2)") {
  // the sqrt(delta) ball must be well inside the curve for the exponent to
  // show, hence the small deltas
  auto lo = focusing_mass(std::ldexp(1.0, -16), 3, 400000, 11);
  auto hi = focusing_mass(std::ldexp(1.0, -12), 3, 400000, 11);
  double slope = std::log2(hi.value / lo.value) / 4.0;
  CHECK(slope == doctest::Approx(2.5).epsilon(0.04));
}

TEST_CASE("focusing mass cross-checks against box-rejection Monte Carlo") {
  double delta = 1.0 / 32;
  auto tube = focusing_mass(delta, 3, 2000000, 13);
  GridBox box = GridBox::cube(3, 1.0 + 3.0 * delta);
  auto box_est = indicator_mass_mc(FocusingIndicator{3, delta, 10.0}, box,
                                   2000000, 13, "focusing-box");
  double tol = 3.0 * (tube.stderr_ + box_est.stderr_) + 0.02 * tube.value;
  CHECK(std::abs(tube.value - box_est.value) <= tol);
}
