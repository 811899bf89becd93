// Scalar test fields on voxel grids, the sharpness-example set
// constructions, and streaming (grid-free) membership evaluation for
// large delta-ladders.
#ifndef MOMENTLAB_FIELD_HPP
#define MOMENTLAB_FIELD_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "momentlab/common.hpp"
#include "momentlab/geometry.hpp"
#include "momentlab/tube_measure.hpp"

namespace momentlab {

struct ResolutionError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct GridBox {
  std::vector<double> lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
    return v;
  }
  static GridBox cube(int d, double half) {
    return {std::vector<double>(d, -half), std::vector<double>(d, half)};
  }
};

using FieldFn = std::function<double(const Point&)>;

inline constexpr std::int64_t kDefaultVoxelBudget = 200'000'000;

// ---------------------------------------------------------------------------
// ScalarField: nonnegative values on a regular grid, row-major.
// ---------------------------------------------------------------------------

struct ScalarField {
  GridBox box;
  std::vector<std::int64_t> shape;
  std::vector<double> spacing;
  std::vector<float> values;

  int dim() const { return box.dim(); }

  std::int64_t size() const {
    std::int64_t n = 1;
    for (auto s : shape) n *= s;
    return n;
  }

  double voxel_volume() const {
    double v = 1.0;
    for (double s : spacing) v *= s;
    return v;
  }

  double max_spacing() const {
    double m = 0.0;
    for (double s : spacing) m = std::max(m, s);
    return m;
  }

  Point voxel_center(std::int64_t flat) const {
    int d = dim();
    Point p(d);
    for (int i = d - 1; i >= 0; --i) {
      std::int64_t idx = flat % shape[i];
      flat /= shape[i];
      p[i] = box.lo[i] + (idx + 0.5) * spacing[i];
    }
    return p;
  }

  // Nearest-voxel lookup; zero outside the box.
  double sample(const Point& p) const {
    int d = dim();
    std::int64_t flat = 0;
    for (int i = 0; i < d; ++i) {
      double u = (p[i] - box.lo[i]) / spacing[i];
      if (u < 0.0 || u >= static_cast<double>(shape[i])) return 0.0;
      flat = flat * shape[i] + static_cast<std::int64_t>(u);
    }
    return values[flat];
  }

  double max_value() const {
    float m = 0.0f;
    for (float v : values) m = std::max(m, v);
    return m;
  }
};

inline ScalarField build_field(const GridBox& box,
                               const std::vector<std::int64_t>& shape,
                               const FieldFn& fn,
                               std::int64_t budget = kDefaultVoxelBudget) {
  int d = box.dim();
  if (static_cast<int>(shape.size()) != d)
    throw InvalidInput("build_field: shape/box dimension mismatch");
  ScalarField f;
  f.box = box;
  f.shape = shape;
  f.spacing.resize(d);
  for (int i = 0; i < d; ++i) {
    if (shape[i] < 1) throw InvalidInput("build_field: empty axis");
    f.spacing[i] = (box.hi[i] - box.lo[i]) / static_cast<double>(shape[i]);
  }
  std::int64_t n = f.size();
  if (n > budget)
    throw InvalidConfiguration("build_field: grid exceeds voxel budget");
  f.values.assign(static_cast<std::size_t>(n), 0.0f);
  std::int64_t slab = n / shape[0];
  parallel_blocks(static_cast<std::size_t>(shape[0]), [&](std::size_t b) {
    std::int64_t lo = static_cast<std::int64_t>(b) * slab;
    for (std::int64_t i = lo; i < lo + slab; ++i) {
      double v = fn(f.voxel_center(i));
      if (v < 0.0) throw ComputationError("build_field: negative value");
      f.values[static_cast<std::size_t>(i)] = static_cast<float>(v);
    }
  });
  return f;
}

inline void check_resolution(const std::vector<std::int64_t>& shape,
                             const GridBox& box, double delta) {
  for (int i = 0; i < box.dim(); ++i) {
    double sp = (box.hi[i] - box.lo[i]) / static_cast<double>(shape[i]);
    if (sp > delta / 2.0 + 1e-15)
      throw ResolutionError("field spacing must be <= delta/2");
  }
}

// Shape with spacing ~= delta/2 over the box.
inline std::vector<std::int64_t> shape_for(const GridBox& box, double delta) {
  std::vector<std::int64_t> s(box.dim());
  for (int i = 0; i < box.dim(); ++i)
    s[i] = static_cast<std::int64_t>(
        std::ceil((box.hi[i] - box.lo[i]) / (delta / 2.0)));
  return s;
}

// ---------------------------------------------------------------------------
// Indicator functors (grid-free membership)
// ---------------------------------------------------------------------------

struct TubeIndicator {
  MomentCurve curve;
  double delta;
  double operator()(const Point& p) const {
    return point_in_tube(p, curve, delta) ? 1.0 : 0.0;
  }
};

// Focusing set: the unit tube's delta-neighborhood cut to the ball of
// radius focus_c * sqrt(delta) about the origin.
struct FocusingIndicator {
  int d;
  double delta;
  double focus_c = 10.0;
  double operator()(const Point& p) const {
    double n2 = 0.0;
    for (double c : p) n2 += c * c;
    double rad = focus_c * std::sqrt(delta);
    if (n2 > rad * rad) return 0.0;
    return point_in_tube(p, MomentCurve::unit(d), delta) ? 1.0 : 0.0;
  }
};

// The union set E^{s'}_delta: inflation by rho = 10 d delta of the union
// of curves H((0, x_tail), r) over a delta-net of I1^{s'-1} x I2 with
// I1 = [-1/4, 1/4], I2 = [1/2, 2].  Membership scans the r-net with a
// cheap first-coordinate prune, eliminates the tail offsets (the net is
// delta-fine against a 10 d delta tube, so the quantization layer is
// negligible), and minimizes the residual over the short admissible
// t-window.
struct UnionSetIndicator {
  int d;
  int s_prime;
  double delta;
  double rho;          // default 10 d delta; delta itself for thin variants
  double r_lo = 0.5, r_hi = 2.0;
  double tail_half = 0.25;

  UnionSetIndicator(int d_, int s_prime_, double delta_, double rho_ = 0.0)
      : d(d_),
        s_prime(s_prime_),
        delta(delta_),
        rho(rho_ > 0.0 ? rho_ : 10.0 * d_ * delta_) {
    if (s_prime < 1 || s_prime > d)
      throw InvalidInput("union set: need 1 <= s' <= d");
    if (rho < delta) throw InvalidInput("union set: rho must be >= delta");
  }

  int s() const { return d + 1 - s_prime; }

  int r_count() const {
    return static_cast<int>(std::floor((r_hi - r_lo) / delta)) + 1;
  }

  // Squared residual to the nearest admissible curve point at scale r,
  // tails relaxed to the full interval I1.
  double residual2(const Point& p, double r, double t) const {
    int sc = s();
    double g = 0.0;
    double pw = 1.0;
    for (int i = 1; i <= d; ++i) {
      pw *= t;
      double res = p[i - 1] - r * pw;
      if (i > sc) {
        if (res > tail_half)
          res -= tail_half;
        else if (res < -tail_half)
          res += tail_half;
        else
          res = 0.0;
      }
      g += res * res;
    }
    return g;
  }

  // min over t in the admissible window of residual2 at scale r; the
  // window accounts for the r-net quantization.  An optional early-out
  // threshold returns as soon as a value at or below it is seen (the
  // caller only needs a membership decision, not the exact minimum).
  double min_residual2_at(const Point& p, double r,
                          double early = -1.0) const {
    double t0 = p[0] / r;
    double half = (rho + delta) / r;
    if (std::abs(t0) > 1.0 + half) return 1e300;
    double lo = std::max(-1.0, t0 - half);
    double hi = std::min(1.0, t0 + half);
    const int kProbes = 12;
    double best_t = lo, best_g = residual2(p, r, lo);
    if (best_g <= early) return best_g;
    for (int j = 1; j <= kProbes; ++j) {
      double t = lo + (hi - lo) * j / kProbes;
      double g = residual2(p, r, t);
      if (g < best_g) {
        best_g = g;
        best_t = t;
        if (best_g <= early) return best_g;
      }
    }
    // skip the refinement when the probe minimum is far outside any
    // useful band: the probe spacing bounds how much it can overshoot
    double gap = 7.0 * (hi - lo) / kProbes;
    if (early > 0.0) {
      double floor_g = std::sqrt(best_g) - gap;
      if (floor_g > 0.0 && floor_g * floor_g > 16.0 * early) return best_g;
    }
    double a = std::max(lo, best_t - (hi - lo) / kProbes);
    double b = std::min(hi, best_t + (hi - lo) / kProbes);
    for (int it = 0; it < 30 && b - a > 1e-12; ++it) {
      double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
      double g1 = residual2(p, r, m1), g2 = residual2(p, r, m2);
      double gm = std::min(g1, g2);
      if (gm < best_g) {
        best_g = gm;
        if (best_g <= early) return best_g;
      }
      if (g1 < g2)
        b = m2;
      else
        a = m1;
    }
    return std::min(best_g, residual2(p, r, 0.5 * (a + b)));
  }

  bool contains(const Point& p) const {
    double r2 = rho * rho;
    int nr = r_count();
    int sc = s();
    double best_g = 1e300, best_r = r_lo;
    for (int k = 0; k < nr; ++k) {
      double r = r_lo + k * delta;
      double t0 = p[0] / r;
      double half = (rho + delta) / r;
      if (std::abs(t0) > 1.0 + half) continue;
      {
        // coarse second-coordinate prune; tail freedom widens the band
        double tc = std::clamp(t0, -1.0, 1.0);
        double slack = (rho + delta) * 6.0 + (sc >= 2 ? 0.0 : tail_half);
        if (std::abs(p[1] - r * tc * tc) > slack) continue;
      }
      double g = min_residual2_at(p, r, r2);
      if (g <= r2) return true;
      if (g < best_g) {
        best_g = g;
        best_r = r;
      }
    }
    if (best_g > 4.0 * r2) return false;
    // near miss on the r-net: refine r over its quantization cell
    double a = std::max(r_lo, best_r - delta);
    double b = std::min(r_hi, best_r + delta);
    for (int it = 0; it < 25 && b - a > 1e-12; ++it) {
      double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
      double g1 = min_residual2_at(p, m1, r2);
      double g2 = min_residual2_at(p, m2, r2);
      if (std::min(g1, g2) <= r2) return true;
      if (g1 < g2)
        b = m2;
      else
        a = m1;
    }
    return min_residual2_at(p, 0.5 * (a + b)) <= r2;
  }

  double operator()(const Point& p) const { return contains(p) ? 1.0 : 0.0; }

  // Box containing the inflated set.
  GridBox bounding_box() const {
    int sc = s();
    GridBox b;
    b.lo.resize(d);
    b.hi.resize(d);
    for (int i = 1; i <= d; ++i) {
      double clo = (i > sc) ? -tail_half : 0.0;
      double chi = (i > sc) ? tail_half : 0.0;
      double glo = (i % 2 == 1) ? -r_hi : 0.0;
      b.lo[i - 1] = clo + glo - rho;
      b.hi[i - 1] = chi + r_hi + rho;
    }
    return b;
  }
};

// ---------------------------------------------------------------------------
// Grid constructors
// ---------------------------------------------------------------------------

inline ScalarField tube_indicator_field(const MomentCurve& c, double delta,
                                        const GridBox& box,
                                        const std::vector<std::int64_t>& shape) {
  check_resolution(shape, box, delta);
  return build_field(box, shape, TubeIndicator{c, delta});
}

inline ScalarField union_set_field(int s_prime, double delta,
                                   const GridBox& box,
                                   const std::vector<std::int64_t>& shape,
                                   int d = 3) {
  check_resolution(shape, box, delta);
  UnionSetIndicator ind(d, s_prime, delta);
  return build_field(box, shape, std::cref(ind));
}

inline ScalarField focusing_field(double delta, int d, const GridBox& box,
                                  const std::vector<std::int64_t>& shape,
                                  double focus_c = 10.0) {
  check_resolution(shape, box, delta);
  return build_field(box, shape, FocusingIndicator{d, delta, focus_c});
}

// ---------------------------------------------------------------------------
// Norms and masses
// ---------------------------------------------------------------------------

inline double field_lp_norm(const ScalarField& f, double p) {
  if (!(p >= 1.0)) throw InvalidInput("field_lp_norm: need p >= 1");
  double vv = f.voxel_volume();
  double s = parallel_sum(f.values.size(), [&](std::size_t i) {
    double v = f.values[i];
    return v > 0.0 ? std::pow(v, p) : 0.0;
  });
  return std::pow(s * vv, 1.0 / p);
}

// Monte Carlo mass of an indicator over a box (grid-free; used for
// delta-ladders whose grids would not fit in memory).
inline VolumeEstimate indicator_mass_mc(const FieldFn& fn, const GridBox& box,
                                        std::int64_t n, std::uint64_t seed,
                                        std::string_view id = "field-mass") {
  if (n < 1000) throw InvalidInput("indicator_mass_mc: need n >= 1000");
  int d = box.dim();
  double vol = box.volume();
  CounterRng rng(id, seed);
  double hits = parallel_sum(static_cast<std::size_t>(n), [&](std::size_t i) {
    Point p(d);
    for (int k = 0; k < d; ++k)
      p[k] = rng.uniform(i, k, box.lo[k], box.hi[k]);
    return fn(p) > 0.0 ? 1.0 : 0.0;
  });
  double phat = hits / static_cast<double>(n);
  VolumeEstimate est;
  est.value = vol * phat;
  est.stderr_ = vol * std::sqrt(std::max(phat * (1.0 - phat), 0.0) /
                                static_cast<double>(n));
  if (hits == 0.0) est.stderr_ = 3.0 / static_cast<double>(n) * vol;
  est.n_samples = n;
  est.method = VolumeMethod::MonteCarloBox;
  return est;
}

// Focusing-set mass via the tube parametrization (high precision at
// small delta, where box rejection would starve).
inline VolumeEstimate focusing_mass(double delta, int d, std::int64_t n,
                                    std::uint64_t seed, double focus_c = 10.0) {
  check_delta(delta);
  double rad = focus_c * std::sqrt(delta);
  double u_max = std::min(1.2, 1.1 * (rad + delta));
  double rho = kCrossSectionFactor * delta;
  double region_vol =
      2.0 * u_max * unit_ball_volume(d - 1) * std::pow(rho, d - 1);
  FocusingIndicator ind{d, delta, focus_c};
  MomentCurve unit = MomentCurve::unit(d);
  CounterRng rng("focusing-mass", seed);
  double hits = parallel_sum(static_cast<std::size_t>(n), [&](std::size_t i) {
    double u = rng.uniform(i, 0, -u_max, u_max);
    auto ball = rng.unit_ball(i, d - 1, 1);
    Point y = unit.at(u);
    for (int k = 1; k < d; ++k) y[k] += rho * ball[k - 1];
    return ind(y) > 0.0 ? 1.0 : 0.0;
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

}  // namespace momentlab

#endif  // MOMENTLAB_FIELD_HPP
