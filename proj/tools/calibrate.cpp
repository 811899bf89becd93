// One-time calibration: measures the empirical constants on the
// designated calibration seed and prints the values to freeze in
// include/momentlab/calibration.hpp.  Not run by tests.
#include <algorithm>
#include <cstdio>
#include <iostream>

#include "acceptance_suite.hpp"
#include "momentlab/maximal.hpp"
#include "momentlab/multiplier.hpp"
#include "momentlab/tube_measure.hpp"

using namespace momentlab;

int main() {
  const std::uint64_t seed = calibration::kCalibrationSeed;
  std::printf("calibration seed: %llu\n\n",
              static_cast<unsigned long long>(seed));

  // --- intersection bound constant -------------------------------------
  {
    CounterRng rng("c04-pairs", seed);
    double worst = 0.0;
    std::uint64_t idx = 0;
    for (int p = 0; p < 200; ++p) {
      MomentCurve c1, c2;
      while (!suite::make_intersecting_pair(rng, idx++, c1, c2)) {
      }
      auto inv = pair_invariants(c1, c2);
      for (double delta : {1.0 / 16, 1.0 / 64, 1.0 / 256}) {
        auto est = intersection_volume(c1, c2, delta, 200000,
                                       seed + static_cast<std::uint64_t>(p));
        double bound = analytic_intersection_bound(inv, delta).bound_value;
        if (bound > 0.0) worst = std::max(worst, est.value / bound);
      }
    }
    std::printf("intersection bound: worst estimate/bound ratio %.4g "
                "(frozen kIntersectionBoundC = %.4g)\n",
                worst, calibration::kIntersectionBoundC);
  }

  // --- two-sided tube constants -----------------------------------------
  {
    double lo = 1e300, hi = 0.0;
    CounterRng rng("tube-cal", seed);
    for (std::uint64_t i = 0; i < 20; ++i) {
      MomentCurve c = suite::random_curve(rng, i, 3);
      for (double delta : {1.0 / 8, 1.0 / 32, 1.0 / 128}) {
        auto est = tube_volume(c, delta, 400000, seed + i);
        double ratio = est.value / (delta * delta);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    std::printf("tube volume / delta^2: range [%.4g, %.4g] "
                "(frozen kTubeLowerC = %.4g, kTubeUpperC = %.4g)\n",
                lo, hi, calibration::kTubeLowerC, calibration::kTubeUpperC);
  }

  // --- comparable-neighborhood factor -----------------------------------
  {
    CounterRng rng("neighborhood-cal", seed);
    double worst = 1.0;
    for (std::uint64_t i = 0; i < 30; ++i) {
      MomentCurve c = suite::random_curve(rng, i, 3);
      double delta = rng.uniform(i, 20, 0.01, 0.1);
      TubeIndicator ind{c, delta};
      double base = tube_average_fn(std::cref(ind), c, delta);
      for (int k = 0; k < 3; ++k) {
        MomentCurve shifted = c;
        shifted.center[k] += delta;
        double v = tube_average_fn(std::cref(ind), shifted, delta);
        if (v > 0.0 && base > 0.0)
          worst = std::max(worst, std::max(base / v, v / base));
      }
    }
    std::printf("neighborhood shift factor: worst %.4g "
                "(frozen kNeighborhoodC = %.4g)\n",
                worst, calibration::kNeighborhoodC);
  }

  // --- smooth domination constant ---------------------------------------
  {
    auto cut = build_cutoffs(3);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 3; ++s) {
      CounterRng rng("c13-domination", seed + s);
      for (int fi = 0; fi < 100; ++fi) {
        auto u = static_cast<std::uint64_t>(fi);
        Point c0(3);
        for (int k = 0; k < 3; ++k) c0[k] = rng.uniform(u, k, -1.0, 1.0);
        double sigma = rng.uniform(u, 3, 0.1, 0.5);
        auto field = [c0, sigma](const Point& p) {
          double g = 0.0;
          for (int k = 0; k < 3; ++k) g += (p[k] - c0[k]) * (p[k] - c0[k]);
          return std::exp(-g / (2.0 * sigma * sigma));
        };
        for (int ci = 0; ci < 20; ++ci) {
          auto v = static_cast<std::uint64_t>(fi * 1000 + ci);
          Point cc(3);
          for (int k = 0; k < 3; ++k)
            cc[k] = rng.uniform(v, 10 + k, -0.5, 0.5);
          double r = rng.uniform(v, 13, 0.5, 2.0);
          double delta = rng.uniform(v, 14, 0.005, 0.05);
          MomentCurve curve(cc, r);
          double tube = tube_average_fn(field, curve, delta);
          double smooth =
              smooth_average_fn(field, curve.center, r, delta, cut);
          if (smooth > 0.0) worst = std::max(worst, tube / smooth);
        }
      }
    }
    std::printf("smooth domination: worst tube/smooth ratio %.4g over 3 "
                "seeds (frozen kDominationC = %.4g)\n",
                worst, calibration::kDominationC);
  }

  // --- Bernstein ceiling --------------------------------------------------
  {
    double worst = 0.0;
    for (int s : {1, 2})
      for (double p : {2.0, 4.0})
        for (double R : {8.0, 16.0, 32.0})
          worst = std::max(worst, bernstein_check(s, R, p, 100, seed));
    std::printf("bernstein: worst ratio %.4g (frozen kBernsteinC = %.4g)\n",
                worst, calibration::kBernsteinC);
  }

  // --- symbol decay ceiling ----------------------------------------------
  {
    auto cut = build_cutoffs(3);
    double worst = 0.0;
    for (int k = 4; k <= 9; ++k) {
      auto rep = verify_symbol_conditions(3, calibration::kSymbolB, k, cut, 4,
                                          calibration::kSymbolDecayB);
      worst = std::max(worst, rep.deriv_max);
    }
    std::printf("symbol decay: worst weighted derivative %.6g over k in "
                "4..9 (frozen kSymbolDecayB = %.4g)\n",
                worst, calibration::kSymbolDecayB);
  }

  std::printf("\nfreeze these values (with headroom) in "
              "include/momentlab/calibration.hpp\n");
  return 0;
}
