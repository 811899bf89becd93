// Moment-curve geometry: evaluation, point-to-curve distance, planar
// projection, tangency discriminants, intersection counting.
#ifndef MOMENTLAB_GEOMETRY_HPP
#define MOMENTLAB_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "momentlab/common.hpp"

namespace momentlab {

using Point = std::vector<double>;

inline bool all_finite(const Point& p) {
  for (double c : p)
    if (!std::isfinite(c)) return false;
  return true;
}

// gamma(t) = (t, t^2, ..., t^d)
inline Point gamma_point(double t, int d) {
  if (d < 2) throw InvalidInput("gamma_point: dimension must be >= 2");
  Point p(d);
  double pw = 1.0;
  for (int i = 0; i < d; ++i) {
    pw *= t;
    p[i] = pw;
  }
  return p;
}

// H(x, r) = { x + r*gamma(t) : t in [-1, 1] }
struct MomentCurve {
  Point center;
  double scale = 1.0;
  int dim = 0;

  MomentCurve() = default;
  MomentCurve(Point c, double r) : center(std::move(c)), scale(r) {
    dim = static_cast<int>(center.size());
    if (dim < 2) throw InvalidInput("MomentCurve: dimension must be >= 2");
    if (!(scale > 0.0)) throw InvalidInput("MomentCurve: scale must be > 0");
  }

  static MomentCurve unit(int d) { return MomentCurve(Point(d, 0.0), 1.0); }
  static MomentCurve centered(int d, double r) {
    return MomentCurve(Point(d, 0.0), r);
  }

  Point at(double t) const {
    Point p(dim);
    double pw = 1.0;
    for (int i = 0; i < dim; ++i) {
      pw *= t;
      p[i] = center[i] + scale * pw;
    }
    return p;
  }
};

// curve_point with the [-1,1] range check ([-1.5,1.5] when extended).
inline Point curve_point(const MomentCurve& c, double t,
                         bool extended_range = false) {
  double lim = extended_range ? 1.5 : 1.0;
  if (std::abs(t) > lim + 1e-12)
    throw InvalidInput("curve_point: parameter out of range");
  return c.at(t);
}

namespace detail {

// Squared distance |p - c(t)|^2 and its first two t-derivatives.
struct Dist2Eval {
  double g, dg, ddg;
};

inline Dist2Eval dist2_eval(const Point& p, const MomentCurve& c, double t) {
  Dist2Eval e{0.0, 0.0, 0.0};
  double pw = 1.0;       // t^i
  double pwm1 = 0.0;     // t^(i-1)
  double pwm2 = 0.0;     // t^(i-2)
  for (int i = 1; i <= c.dim; ++i) {
    pwm2 = pwm1;
    pwm1 = pw;
    pw *= t;
    double res = p[i - 1] - c.center[i - 1] - c.scale * pw;
    double d1 = -c.scale * i * pwm1;
    double d2 = -c.scale * i * (i - 1) * pwm2;
    e.g += res * res;
    e.dg += 2.0 * res * d1;
    e.ddg += 2.0 * (d1 * d1 + res * d2);
  }
  return e;
}

// Safeguarded Newton for a local minimum of |p - c(t)|^2 within [lo, hi].
inline double refine_min(const Point& p, const MomentCurve& c, double t,
                         double lo, double hi, double tol) {
  for (int it = 0; it < 60; ++it) {
    Dist2Eval e = dist2_eval(p, c, t);
    if (std::abs(e.dg) < tol * (1.0 + std::abs(e.g))) break;
    double step = (e.ddg > 1e-300) ? -e.dg / e.ddg : (e.dg > 0 ? -0.5 : 0.5);
    double limit = 0.5 * (hi - lo);
    step = std::clamp(step, -limit, limit);
    double tn = std::clamp(t + step, lo, hi);
    if (dist2_eval(p, c, tn).g > e.g) {  // backtrack
      double shrink = 0.5;
      bool improved = false;
      for (int bt = 0; bt < 20; ++bt) {
        tn = std::clamp(t + step * shrink, lo, hi);
        if (dist2_eval(p, c, tn).g < e.g) {
          improved = true;
          break;
        }
        shrink *= 0.5;
      }
      if (!improved) break;
    }
    if (std::abs(tn - t) < tol) {
      t = tn;
      break;
    }
    t = tn;
  }
  return t;
}

}  // namespace detail

// Global minimizer of |p - c(t)| over t in [-1, 1] (or [-lim, lim]).
// Chebyshev sampling at >= 8d nodes, local Newton refinement, endpoints
// always included.
struct CurveDistance {
  double t_star;
  double dist;
};

inline CurveDistance distance_to_curve(const Point& p, const MomentCurve& c,
                                       double tol = 1e-10,
                                       double t_limit = 1.0) {
  if (!(tol > 0)) throw InvalidInput("distance_to_curve: tol must be > 0");
  if (!all_finite(p))
    throw InvalidInput("distance_to_curve: non-finite coordinates");
  int n = 8 * c.dim;
  double best_t = -t_limit;
  double best_g = detail::dist2_eval(p, c, -t_limit).g;
  auto consider = [&](double t) {
    double g = detail::dist2_eval(p, c, t).g;
    if (g < best_g) {
      best_g = g;
      best_t = t;
    }
  };
  consider(t_limit);
  for (int k = 0; k < n; ++k) {
    double t = t_limit * std::cos(kPi * (k + 0.5) / n);
    consider(t);
  }
  double refined =
      detail::refine_min(p, c, best_t, -t_limit, t_limit, tol);
  consider(refined);
  return {best_t, std::sqrt(best_g)};
}

// Fast membership test: is p within delta of the curve?  Any witness t
// must satisfy |p1 - x1 - r t| <= delta, which confines the search to a
// short window; outside the window the first coordinate alone exceeds
// delta.
inline bool point_in_tube(const Point& p, const MomentCurve& c, double delta,
                          double t_limit = 1.0) {
  double r = c.scale;
  double t0 = (p[0] - c.center[0]) / r;
  double half = delta / r;
  double lo = std::max(-t_limit, t0 - half);
  double hi = std::min(t_limit, t0 + half);
  if (lo > hi) return false;
  double d2 = delta * delta;
  const int kProbes = 5;
  double best_t = lo, best_g = detail::dist2_eval(p, c, lo).g;
  if (best_g <= d2) return true;
  for (int k = 1; k <= kProbes; ++k) {
    double t = lo + (hi - lo) * k / kProbes;
    double g = detail::dist2_eval(p, c, t).g;
    if (g <= d2) return true;
    if (g < best_g) {
      best_g = g;
      best_t = t;
    }
  }
  double t = detail::refine_min(p, c, best_t, lo, hi, 1e-12);
  return detail::dist2_eval(p, c, t).g <= d2;
}

// ---------------------------------------------------------------------------
// Tangency discriminants
// ---------------------------------------------------------------------------

// Delta_i, i = 2..d, with the derivation-consistent power (r'-r)^{i-1}
// (the system x_i - x_i' = (r'-r) t^i with t = (x1-x1')/(r'-r)).
struct PairInvariants {
  std::vector<double> deltas;  // Delta_2 .. Delta_d
  double dbar = 0.0;
  double delta_bar = 0.0;
  std::optional<double> t_candidate;

  double max_delta() const {
    double m = 0.0;
    for (double d : deltas) m = std::max(m, d);
    return m;
  }
};

inline double param_distance(const MomentCurve& a, const MomentCurve& b) {
  double s = std::abs(a.scale - b.scale);
  for (int i = 0; i < a.dim; ++i) s = std::max(s, std::abs(a.center[i] - b.center[i]));
  return s;
}

inline PairInvariants pair_invariants(const MomentCurve& c1,
                                      const MomentCurve& c2) {
  if (c1.dim != c2.dim)
    throw InvalidInput("pair_invariants: dimension mismatch");
  int d = c1.dim;
  double dr = c2.scale - c1.scale;  // r' - r
  double dx1 = c1.center[0] - c2.center[0];
  PairInvariants inv;
  inv.deltas.resize(d - 1);
  double drpow = 1.0;   // (r'-r)^(i-1)
  double dx1pow = dx1;  // (x1-x1')^i
  for (int i = 2; i <= d; ++i) {
    drpow *= dr;
    dx1pow *= dx1;
    double dxi = c1.center[i - 1] - c2.center[i - 1];
    inv.deltas[i - 2] = std::abs(dxi * drpow - dx1pow);
  }
  inv.dbar = std::abs(dx1) + std::abs(c1.center[1] - c2.center[1]) +
             std::abs(dr);
  inv.delta_bar = inv.dbar > 0 ? inv.deltas[0] / inv.dbar : 0.0;
  if (std::abs(dr) > 1e-12) inv.t_candidate = dx1 / dr;
  return inv;
}

// Tangency test per the discriminant characterization: all Delta_i vanish
// (within tol*(1+dbar)) and the shared parameter lies in [-1,1].
struct TangencyPoint {
  double t;
  Point point;
};

inline std::optional<TangencyPoint> is_tangent(const MomentCurve& c1,
                                               const MomentCurve& c2,
                                               double tol = 1e-9) {
  if (!(tol > 0)) throw InvalidInput("is_tangent: tol must be > 0");
  if (param_distance(c1, c2) < 1e-12)
    throw InvalidInput("is_tangent: degenerate pair (same curve)");
  PairInvariants inv = pair_invariants(c1, c2);
  if (!inv.t_candidate) return std::nullopt;  // equal scales: never tangent
  double t = *inv.t_candidate;
  if (std::abs(t) > 1.0 + 1e-12) return std::nullopt;
  if (inv.max_delta() > tol * (1.0 + inv.dbar)) return std::nullopt;
  return TangencyPoint{t, c1.at(std::clamp(t, -1.0, 1.0))};
}

// The curve H((x1,...,x_{d-1}, x_last), r) tangent to H(0,1), from the
// special-case tangency system: x_i = (1-r) t^i with t the real d-th root
// of x_last/(1-r).
inline MomentCurve solve_tangent_curve(double x_last, double r, int d) {
  if (d < 2) throw InvalidInput("solve_tangent_curve: dimension must be >= 2");
  if (std::abs(r - 1.0) < 1e-12)
    throw InvalidInput("solve_tangent_curve: degenerate (r = 1)");
  double v = x_last / (1.0 - r);
  double t;
  if (d % 2 == 1) {
    t = std::copysign(std::pow(std::abs(v), 1.0 / d), v);
  } else {
    if (v < 0)
      throw InvalidConfiguration(
          "solve_tangent_curve: no admissible tangent (negative even root)");
    t = std::pow(v, 1.0 / d);
  }
  if (std::abs(t) > 1.0 + 1e-12)
    throw InvalidConfiguration(
        "solve_tangent_curve: no admissible tangent (t outside [-1,1])");
  Point x(d);
  double pw = 1.0;
  for (int i = 1; i <= d; ++i) {
    pw *= t;
    x[i - 1] = (1.0 - r) * pw;
  }
  MomentCurve result(std::move(x), r);
  if (!is_tangent(result, MomentCurve::unit(d), 1e-8))
    throw ComputationError("solve_tangent_curve: postcondition failed");
  return result;
}

// ---------------------------------------------------------------------------
// Planar reduction
// ---------------------------------------------------------------------------

// P(x1, x2, r): graph Y = x2 + (X - x1)^2 / r over X in [x1 - r, x1 + r].
struct PlanarParabola {
  double x1 = 0.0, x2 = 0.0;
  double scale = 1.0;
};

inline PlanarParabola project_to_parabola(const MomentCurve& c) {
  return {c.center[0], c.center[1], c.scale};
}

// Real roots in [-1,1] (parameter of p1) of the difference of the two
// parabolas, after the affine change that maps p1 to the unit parabola.
// A double root collapses when the discriminant is below tolerance.
inline std::vector<double> planar_intersections(const PlanarParabola& p1,
                                                const PlanarParabola& p2,
                                                double tol = 1e-12) {
  // Normalize: X' = (X - p1.x1)/p1.scale, Y' = (Y - p1.x2)/p1.scale.
  double x1 = (p2.x1 - p1.x1) / p1.scale;
  double x2 = (p2.x2 - p1.x2) / p1.scale;
  double r = p2.scale / p1.scale;
  // h(t) = (1 - 1/r) t^2 + (2 x1 / r) t - (x2 + x1^2 / r)
  double a = 1.0 - 1.0 / r;
  double b = 2.0 * x1 / r;
  double c = -(x2 + x1 * x1 / r);
  std::vector<double> roots;
  auto keep = [&](double t) {
    if (std::abs(t) <= 1.0 + 1e-12) roots.push_back(std::clamp(t, -1.0, 1.0));
  };
  if (std::abs(a) < tol) {
    if (std::abs(b) >= tol) keep(-c / b);
    // a == b == 0: vertically offset copies (no roots) or coincident
    // projections (handled by the caller via the lift).
    return roots;
  }
  double disc = b * b - 4.0 * a * c;
  if (disc < -tol) return roots;
  if (std::abs(disc) <= tol) {
    keep(-b / (2.0 * a));
    return roots;
  }
  double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  keep(q / a);
  if (std::abs(q) > 1e-300) keep(c / q);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// Intersections in R^d via the planar reduction
// ---------------------------------------------------------------------------

struct IntersectionRecord {
  double t, t_prime;
  Point point;
};

struct IntersectionReport {
  std::vector<IntersectionRecord> points;
  int count() const { return static_cast<int>(points.size()); }
};

inline IntersectionReport curve_intersections(const MomentCurve& c1,
                                              const MomentCurve& c2,
                                              double tol = 1e-9) {
  if (c1.dim != c2.dim)
    throw InvalidInput("curve_intersections: dimension mismatch");
  if (param_distance(c1, c2) < 1e-12)
    throw InvalidInput("curve_intersections: degenerate pair");
  IntersectionReport report;
  auto roots = planar_intersections(project_to_parabola(c1),
                                    project_to_parabola(c2));
  for (double t : roots) {
    Point a = c1.at(t);
    double t2 = (a[0] - c2.center[0]) / c2.scale;  // first-coordinate match
    if (std::abs(t2) > 1.0 + 1e-12) continue;
    t2 = std::clamp(t2, -1.0, 1.0);
    Point b = c2.at(t2);
    double err2 = 0.0;
    for (int i = 0; i < c1.dim; ++i) err2 += (a[i] - b[i]) * (a[i] - b[i]);
    if (err2 <= tol * tol) {
      // Collapse duplicates from near-double roots.
      bool dup = false;
      for (const auto& rec : report.points)
        if (std::abs(rec.t - t) < 1e-7) dup = true;
      if (!dup) report.points.push_back({t, t2, std::move(a)});
    }
  }
  if (report.count() > 2)
    throw ComputationError(
        "curve_intersections: more than two verified intersections");
  return report;
}

}  // namespace momentlab

#endif  // MOMENTLAB_GEOMETRY_HPP
