// Volume oracles for delta-neighborhoods of moment curves and their
// intersections, plus the analytic intersection bound.
#ifndef MOMENTLAB_TUBE_MEASURE_HPP
#define MOMENTLAB_TUBE_MEASURE_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "momentlab/calibration.hpp"
#include "momentlab/common.hpp"
#include "momentlab/geometry.hpp"

namespace momentlab {

enum class VolumeMethod { MonteCarloBox, TubeParametrized };

struct VolumeEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t n_samples = 0;
  VolumeMethod method = VolumeMethod::MonteCarloBox;
};

// Extended parameter range used by the tube parametrization (appendix
// enlargement of [-1,1]).
inline constexpr double kTubeULimit = 1.2;

// Cross-section inflation: samples live within C_d * delta of the curve
// in the last d-1 coordinates.
inline constexpr double kCrossSectionFactor = 3.0;

inline double unit_ball_volume(int m) {
  return std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

inline void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.25))
    throw InvalidInput("delta must lie in (0, 1/4)");
}

// Exact per-coordinate range of x_i + r t^i over t in [-1,1], inflated.
struct Box {
  std::vector<double> lo, hi;
  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

inline Box curve_bounding_box(const MomentCurve& c, double margin) {
  Box b;
  b.lo.resize(c.dim);
  b.hi.resize(c.dim);
  for (int i = 1; i <= c.dim; ++i) {
    double low = (i % 2 == 1) ? c.center[i - 1] - c.scale : c.center[i - 1];
    double high = c.center[i - 1] + c.scale;
    b.lo[i - 1] = low - margin;
    b.hi[i - 1] = high + margin;
  }
  return b;
}

// L^d(H_delta(x,r)) by rejection Monte Carlo over the inflated bounding box.
inline VolumeEstimate tube_volume(const MomentCurve& c, double delta,
                                  std::int64_t n, std::uint64_t seed) {
  check_delta(delta);
  if (n < 10000) throw InvalidInput("tube_volume: need n >= 1e4");
  Box box = curve_bounding_box(c, delta);
  double box_vol = box.volume();
  CounterRng rng("tube-volume", seed);
  int d = c.dim;
  double hits = parallel_sum(static_cast<std::size_t>(n), [&](std::size_t i) {
    Point p(d);
    for (int k = 0; k < d; ++k)
      p[k] = rng.uniform(i, k, box.lo[k], box.hi[k]);
    return point_in_tube(p, c, delta) ? 1.0 : 0.0;
  });
  double phat = hits / static_cast<double>(n);
  VolumeEstimate est;
  est.value = box_vol * phat;
  est.stderr_ = box_vol * std::sqrt(std::max(phat * (1.0 - phat), 0.0) /
                                    static_cast<double>(n));
  if (hits == 0.0) est.stderr_ = 3.0 / static_cast<double>(n) * box_vol;
  est.n_samples = n;
  est.method = VolumeMethod::MonteCarloBox;
  return est;
}

// L^d(H_delta(c1) /\ H_delta(c2)) by importance sampling in the tube
// parametrization of c1: y = c1(u) + (0, s), |s| <= C_d * delta, with
// Jacobian r.  The unit draws are independent of delta (common random
// numbers), so estimates are coupled across a delta ladder.
inline VolumeEstimate intersection_volume(const MomentCurve& c1,
                                          const MomentCurve& c2, double delta,
                                          std::int64_t n, std::uint64_t seed) {
  check_delta(delta);
  if (n < 10000) throw InvalidInput("intersection_volume: need n >= 1e4");
  if (c1.dim != c2.dim)
    throw InvalidInput("intersection_volume: dimension mismatch");
  if (param_distance(c1, c2) < 1e-12)
    throw InvalidInput("intersection_volume: degenerate pair");
  int d = c1.dim;
  double rho = kCrossSectionFactor * delta;
  double region_vol = c1.scale * (2.0 * kTubeULimit) *
                      unit_ball_volume(d - 1) * std::pow(rho, d - 1);
  CounterRng rng("intersection-volume", seed);
  double hits = parallel_sum(static_cast<std::size_t>(n), [&](std::size_t i) {
    double u = rng.uniform(i, 0, -kTubeULimit, kTubeULimit);
    auto ball = rng.unit_ball(i, d - 1, 1);
    Point y = c1.at(u);
    for (int k = 1; k < d; ++k) y[k] += rho * ball[k - 1];
    return (point_in_tube(y, c1, delta) && point_in_tube(y, c2, delta))
               ? 1.0
               : 0.0;
  });
  double phat = hits / static_cast<double>(n);
  VolumeEstimate est;
  est.value = region_vol * phat;
  est.stderr_ = region_vol * std::sqrt(std::max(phat * (1.0 - phat), 0.0) /
                                       static_cast<double>(n));
  if (hits == 0.0) est.stderr_ = 3.0 / static_cast<double>(n) * region_vol;
  est.n_samples = n;
  est.method = VolumeMethod::TubeParametrized;
  return est;
}

// ---------------------------------------------------------------------------
// Analytic intersection bound
// ---------------------------------------------------------------------------

enum class PairRegime { Tangent, Transversal, NearCoincident };

struct BoundEvaluation {
  double bound_value = 0.0;
  double constant_calibrated = calibration::kIntersectionBoundC;
  PairRegime regime = PairRegime::Transversal;
};

// delta^d / sqrt((delta + Delta_bar)(delta + d_bar))
inline BoundEvaluation analytic_intersection_bound(const PairInvariants& inv,
                                                   double delta) {
  if (!(delta > 0)) throw InvalidInput("analytic bound: delta must be > 0");
  int d = static_cast<int>(inv.deltas.size()) + 1;
  BoundEvaluation ev;
  ev.bound_value = std::pow(delta, d) /
                   std::sqrt((delta + inv.delta_bar) * (delta + inv.dbar));
  if (inv.delta_bar <= delta)
    ev.regime = PairRegime::Tangent;
  else if (inv.dbar <= delta)
    ev.regime = PairRegime::NearCoincident;
  else
    ev.regime = PairRegime::Transversal;
  return ev;
}

// Intersection volume after a small shift of c1's center; the tangency
// scaling survives perturbations of size delta/(1000 d).
inline VolumeEstimate perturbed_tangency_volume(const MomentCurve& c1,
                                                const MomentCurve& c2,
                                                const Point& offset,
                                                double delta, std::int64_t n,
                                                std::uint64_t seed) {
  check_delta(delta);
  if (static_cast<int>(offset.size()) != c1.dim)
    throw InvalidConfiguration("perturbed tangency: offset dimension");
  double norm = 0.0;
  for (double v : offset) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > delta / (1000.0 * c1.dim))
    throw InvalidConfiguration("perturbed tangency: offset too large");
  if (!is_tangent(c1, c2, 1e-8))
    throw InvalidConfiguration("perturbed tangency: pair is not tangent");
  if (pair_invariants(c1, c2).dbar < 0.25)
    throw InvalidConfiguration("perturbed tangency: pair too close (dbar)");
  MomentCurve shifted = c1;
  for (int i = 0; i < c1.dim; ++i) shifted.center[i] += offset[i];
  return intersection_volume(shifted, c2, delta, n, seed);
}

}  // namespace momentlab

#endif  // MOMENTLAB_TUBE_MEASURE_HPP
