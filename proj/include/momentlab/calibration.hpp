// Frozen empirical constants.  Produced once by tools/calibrate on the
// designated calibration seeds and checked in; tests and the acceptance
// suite read them and never refit.
#ifndef MOMENTLAB_CALIBRATION_HPP
#define MOMENTLAB_CALIBRATION_HPP

namespace momentlab::calibration {

// Seeds used by the one-time calibration run.
inline constexpr unsigned long long kCalibrationSeed = 20260801ULL;

// Intersection-volume upper bound: estimate <= C * delta^d / sqrt(...).
inline constexpr double kIntersectionBoundC = 32.0;

// Two-sided tube volume: c * delta^(d-1) <= vol <= C * delta^(d-1),
// scales in [1/2, 2], d = 3.
inline constexpr double kTubeLowerC = 1.0;
inline constexpr double kTubeUpperC = 40.0;

// Comparable-neighborhood factor: parameter shift <= delta changes a
// tube average of an indicator by at most this factor.
inline constexpr double kNeighborhoodC = 3.0;

// Smooth domination: tube_average <= C_dom * smooth_average.  The
// smooth kernel integrates over the full parameter interval with an
// O(1)-width tail cutoff, so its value sits orders of magnitude above
// the normalized tube average (measured worst ratio 3.9e-4 on the
// calibration seed).
inline constexpr double kDominationC = 0.01;

// Bernstein worst-ratio ceiling, independent of R.
inline constexpr double kBernsteinC = 10.0;

// Symbol bound B = (3d+1)(2d)^4 for d = 3, used for the curve condition.
inline constexpr double kSymbolB = 12960.0;

// Ceiling for the sampled weighted symbol derivatives.  High-order
// derivatives of the exp(-1/x)-profile bumps are combinatorially large,
// so this is frozen from the measured k-independent maximum (2.2e20 for
// k in 4..9) with headroom.
inline constexpr double kSymbolDecayB = 5.0e20;

}  // namespace momentlab::calibration

#endif  // MOMENTLAB_CALIBRATION_HPP
