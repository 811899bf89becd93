// The discretized tube-averaging operator, the multi-parameter maximal
// function over a translation search grid, parameter-space norms, and
// the smoothed averaging operator.
#ifndef MOMENTLAB_MAXIMAL_HPP
#define MOMENTLAB_MAXIMAL_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "momentlab/common.hpp"
#include "momentlab/cutoffs.hpp"
#include "momentlab/field.hpp"
#include "momentlab/geometry.hpp"

namespace momentlab {

// ---------------------------------------------------------------------------
// Tube average: self-normalizing quadrature over the tube parametrization
// y = c(u) + (0, t), |t| <= delta.  The Jacobian (the scale r) is constant
// over the nodes, so the normalized average of f == 1 is exactly 1.
// ---------------------------------------------------------------------------

namespace detail {

// Cross-section offsets: grid on [-1,1]^{d-1} clipped to the unit ball,
// scaled by delta at use.  Deterministic and symmetric.
inline std::vector<std::vector<double>> cross_section_offsets(int d, int m) {
  std::vector<std::vector<double>> out;
  int n_ax = d - 1;
  std::vector<int> idx(n_ax, 0);
  for (;;) {
    std::vector<double> off(n_ax);
    double n2 = 0.0;
    for (int i = 0; i < n_ax; ++i) {
      off[i] = -1.0 + (2.0 * idx[i] + 1.0) / m;
      n2 += off[i] * off[i];
    }
    if (n2 <= 1.0) out.push_back(off);
    int ax = 0;
    while (ax < n_ax && ++idx[ax] == m) idx[ax++] = 0;
    if (ax == n_ax) break;
  }
  return out;
}

}  // namespace detail

inline double tube_average_fn(const FieldFn& f, const MomentCurve& c,
                              double delta, int n_u = 96, int n_cross = 6) {
  if (n_u < 2) throw InvalidInput("tube_average: need n_u >= 2");
  auto offsets = detail::cross_section_offsets(c.dim, n_cross);
  double sum = 0.0;
  std::int64_t count = 0;
  for (int i = 0; i < n_u; ++i) {
    double u = -1.0 + (2.0 * i + 1.0) / n_u;
    Point base = c.at(u);
    for (const auto& off : offsets) {
      Point y = base;
      for (int k = 1; k < c.dim; ++k) y[k] += delta * off[k - 1];
      sum += f(y);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

inline double tube_average(const ScalarField& f, const MomentCurve& c,
                           double delta, int n_u = 96, int n_cross = 6) {
  if (f.max_spacing() > delta / 2.0 + 1e-15)
    throw ResolutionError("tube_average: field spacing must be <= delta/2");
  return tube_average_fn([&f](const Point& p) { return f.sample(p); }, c,
                         delta, n_u, n_cross);
}

// ---------------------------------------------------------------------------
// Maximal function over the translation parameters
// ---------------------------------------------------------------------------

struct ParamSample {
  std::vector<double> x_tail;  // the s'-1 free center coordinates
  double r = 1.0;
};

struct MaximalConfig {
  int d = 3;
  int s = 2;            // number of sup (translation) parameters
  double delta = 1.0 / 64.0;
  std::vector<double> search_lo, search_hi;  // box for the translations
  double coarse_step = 0.0;  // default 4 delta
  double fine_step = 0.0;    // default delta
  int top_cells = 5;
  int n_u = 96, n_cross = 6;
  double early_exit = -1.0;  // stop when an average reaches this value

  int s_prime() const { return d + 1 - s; }

  void validate() const {
    if (s < 1 || s > d) throw InvalidConfiguration("maximal: need 1 <= s <= d");
    if (!(delta > 0)) throw InvalidConfiguration("maximal: delta must be > 0");
    if (search_lo.size() != static_cast<std::size_t>(s) ||
        search_hi.size() != static_cast<std::size_t>(s))
      throw InvalidConfiguration("maximal: search box dimension != s");
    for (int i = 0; i < s; ++i)
      if (!(search_lo[i] < search_hi[i]))
        throw InvalidConfiguration("maximal: empty search box");
  }

  static MaximalConfig standard(int d, int s, double delta) {
    MaximalConfig cfg;
    cfg.d = d;
    cfg.s = s;
    cfg.delta = delta;
    cfg.search_lo.assign(s, -0.5);
    cfg.search_hi.assign(s, 0.5);
    return cfg;
  }
};

namespace detail {

// Grid points of the search box at the given step, ordered by distance
// from the box center (maximizers of the reference examples sit near the
// center, so early exit fires fast).
inline std::vector<std::vector<double>> search_grid(
    const std::vector<double>& lo, const std::vector<double>& hi,
    double step) {
  int s = static_cast<int>(lo.size());
  std::vector<int> counts(s);
  for (int i = 0; i < s; ++i)
    counts[i] = static_cast<int>(std::floor((hi[i] - lo[i]) / step)) + 1;
  std::vector<std::vector<double>> pts;
  std::vector<int> idx(s, 0);
  for (;;) {
    std::vector<double> p(s);
    for (int i = 0; i < s; ++i) p[i] = lo[i] + idx[i] * step;
    pts.push_back(std::move(p));
    int ax = 0;
    while (ax < s && ++idx[ax] == counts[ax]) idx[ax++] = 0;
    if (ax == s) break;
  }
  std::vector<double> center(s);
  for (int i = 0; i < s; ++i) center[i] = 0.5 * (lo[i] + hi[i]);
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    double da = 0.0, db = 0.0;
    for (int i = 0; i < s; ++i) {
      da += (a[i] - center[i]) * (a[i] - center[i]);
      db += (b[i] - center[i]) * (b[i] - center[i]);
    }
    return da < db;
  });
  return pts;
}

}  // namespace detail

// Sup over the translation grid of the tube average at curves whose
// center is (x_translate, x_tail) and scale is sample.r.  Coarse scan at
// 4 delta, then delta-step refinement around the best cells.  The result
// is a certified lower bound for the continuum supremum.
inline double maximal_value_fn(const FieldFn& f, const ParamSample& sample,
                               const MaximalConfig& cfg) {
  cfg.validate();
  if (sample.x_tail.size() != static_cast<std::size_t>(cfg.s_prime() - 1))
    throw InvalidConfiguration("maximal: tail dimension != s' - 1");
  double coarse = cfg.coarse_step > 0 ? cfg.coarse_step : 4.0 * cfg.delta;
  double fine = cfg.fine_step > 0 ? cfg.fine_step : cfg.delta;

  auto average_at = [&](const std::vector<double>& xbar) {
    Point center(cfg.d);
    for (int i = 0; i < cfg.s; ++i) center[i] = xbar[i];
    for (int i = cfg.s; i < cfg.d; ++i)
      center[i] = sample.x_tail[i - cfg.s];
    return tube_average_fn(f, MomentCurve(std::move(center), sample.r),
                           cfg.delta, cfg.n_u, cfg.n_cross);
  };

  auto pts = detail::search_grid(cfg.search_lo, cfg.search_hi, coarse);
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(pts.size());
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double v = average_at(pts[i]);
    best = std::max(best, v);
    scored.emplace_back(v, i);
    if (cfg.early_exit > 0 && best >= cfg.early_exit) return best;
  }
  std::size_t keep = std::min<std::size_t>(cfg.top_cells, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  int halo = static_cast<int>(std::ceil(coarse / fine));
  for (std::size_t k = 0; k < keep; ++k) {
    const auto& anchor = pts[scored[k].second];
    std::vector<int> idx(cfg.s, -halo);
    for (;;) {
      std::vector<double> p(cfg.s);
      bool inside = true;
      bool all_zero = true;
      for (int i = 0; i < cfg.s; ++i) {
        if (idx[i] != 0) all_zero = false;
        p[i] = anchor[i] + idx[i] * fine;
        if (p[i] < cfg.search_lo[i] - 1e-12 ||
            p[i] > cfg.search_hi[i] + 1e-12)
          inside = false;
      }
      if (inside && !all_zero) {
        best = std::max(best, average_at(p));
        if (cfg.early_exit > 0 && best >= cfg.early_exit) return best;
      }
      int ax = 0;
      while (ax < cfg.s && ++idx[ax] > halo) idx[ax++] = -halo;
      if (ax == cfg.s) break;
    }
  }
  return best;
}

inline double maximal_value(const ScalarField& f, const ParamSample& sample,
                            const MaximalConfig& cfg) {
  if (f.max_spacing() > cfg.delta / 2.0 + 1e-15)
    throw ResolutionError("maximal_value: field spacing must be <= delta/2");
  return maximal_value_fn([&f](const Point& p) { return f.sample(p); }, sample,
                          cfg);
}

// ---------------------------------------------------------------------------
// MaximalSurface: the maximal function tabulated over the parameter grid
// ---------------------------------------------------------------------------

struct MaximalSurface {
  std::vector<ParamSample> samples;
  std::vector<double> values;
  double cell_volume = 0.0;
  MaximalConfig config;
};

// Evaluate over a regular grid of (x_tail, r) in I1^{s'-1} x I2.
inline MaximalSurface maximal_surface_fn(const FieldFn& f,
                                         const MaximalConfig& cfg,
                                         double tail_step, double r_step,
                                         double r_lo = 0.5, double r_hi = 2.0,
                                         double tail_half = 0.25) {
  cfg.validate();
  MaximalSurface surf;
  surf.config = cfg;
  int n_tail_axes = cfg.s_prime() - 1;
  int n_tail = n_tail_axes > 0
                   ? static_cast<int>(std::floor(2.0 * tail_half / tail_step)) + 1
                   : 1;
  int n_r = static_cast<int>(std::floor((r_hi - r_lo) / r_step)) + 1;
  std::vector<int> idx(n_tail_axes, 0);
  for (;;) {
    std::vector<double> tail(n_tail_axes);
    for (int i = 0; i < n_tail_axes; ++i)
      tail[i] = -tail_half + idx[i] * tail_step;
    for (int k = 0; k < n_r; ++k)
      surf.samples.push_back({tail, r_lo + k * r_step});
    int ax = 0;
    while (ax < n_tail_axes && ++idx[ax] == n_tail) idx[ax++] = 0;
    if (ax == n_tail_axes) break;
  }
  surf.cell_volume = r_step;
  for (int i = 0; i < n_tail_axes; ++i) surf.cell_volume *= tail_step;
  surf.values.resize(surf.samples.size());
  parallel_blocks(surf.samples.size(), [&](std::size_t i) {
    surf.values[i] = maximal_value_fn(f, surf.samples[i], cfg);
  });
  return surf;
}

inline double maximal_lp_norm(const MaximalSurface& surf, double p) {
  if (!(p >= 1.0)) throw InvalidInput("maximal_lp_norm: need p >= 1");
  double s = parallel_sum(surf.values.size(), [&](std::size_t i) {
    double v = surf.values[i];
    return v > 0.0 ? std::pow(v, p) : 0.0;
  });
  return std::pow(s * surf.cell_volume, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Smoothed averaging operator
// ---------------------------------------------------------------------------

// chi1(r) * iint f(x + r gamma(u) + (0, t)) psi_delta(t) chi0(u) dt du,
// with psi_delta(t) = delta^{-(d-1)} psi(t / delta).  The kernel is
// oriented like the tube H(x, r) so that the rough tube average over
// H_delta(x, r) is pointwise dominated by a constant multiple of this
// smooth average (the spectral analysis only sees the modulus of the
// oscillatory factor, which a reflection leaves unchanged).
inline double smooth_average_fn(const FieldFn& f, const Point& x, double r,
                                double delta, const CutoffSet& cut,
                                int n_u = 64, int n_t = 24) {
  int d = static_cast<int>(x.size());
  double c1 = cut.chi1(r);
  if (c1 == 0.0) return 0.0;
  double T = cut.spatial_cut;
  double h_t = 2.0 * T / n_t;  // midpoint nodes in kernel units
  int n_tail = d - 1;
  // tail node values and weights (1-D, tensorized below)
  std::vector<double> t_node(n_t), t_wt(n_t);
  for (int i = 0; i < n_t; ++i) {
    t_node[i] = -T + (i + 0.5) * h_t;
    t_wt[i] = cut.psi1(t_node[i]) * h_t;
  }
  double h_u = 4.0 / n_u;
  double total = 0.0;
  std::vector<int> idx(n_tail, 0);
  for (int iu = 0; iu < n_u; ++iu) {
    double u = -2.0 + (iu + 0.5) * h_u;
    double w_u = cut.chi0(u) * h_u;
    if (w_u == 0.0) continue;
    Point base(d);
    double pw = 1.0;
    for (int i = 0; i < d; ++i) {
      pw *= u;
      base[i] = x[i] + r * pw;
    }
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      double w = w_u;
      Point y = base;
      for (int i = 0; i < n_tail; ++i) {
        w *= t_wt[idx[i]];
        y[i + 1] += delta * t_node[idx[i]];
      }
      if (w != 0.0) total += w * f(y);
      int ax = 0;
      while (ax < n_tail && ++idx[ax] == n_t) idx[ax++] = 0;
      if (ax == n_tail) break;
    }
  }
  // the delta^{-(d-1)} normalization cancels against the dt substitution
  return c1 * total;
}

inline double smooth_average(const ScalarField& f, const Point& x, double r,
                             double delta, const CutoffSet& cut, int n_u = 64,
                             int n_t = 24) {
  if (f.max_spacing() > delta / 2.0 + 1e-15)
    throw ResolutionError("smooth_average: field spacing must be <= delta/2");
  return smooth_average_fn([&f](const Point& p) { return f.sample(p); }, x, r,
                           delta, cut, n_u, n_t);
}

}  // namespace momentlab

#endif  // MOMENTLAB_MAXIMAL_HPP
