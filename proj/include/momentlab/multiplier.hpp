// Fourier-side machinery: the oscillatory multiplier factor, the
// low/high0/high1 frequency decomposition, symbol-condition checks,
// band-limited sup-norm (Bernstein) checks, and cone decay profiles.
#ifndef MOMENTLAB_MULTIPLIER_HPP
#define MOMENTLAB_MULTIPLIER_HPP

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "momentlab/common.hpp"
#include "momentlab/cutoffs.hpp"
#include "momentlab/scaling.hpp"

namespace momentlab {

// ---------------------------------------------------------------------------
// Oscillatory integral  I(xi, r) = int e^{-2 pi i r xi . gamma(u)} chi0(u) du
// ---------------------------------------------------------------------------

namespace detail {

inline std::complex<double> oscillatory_once(const std::vector<double>& xi,
                                             double r, const CutoffSet& cut,
                                             int panels) {
  static thread_local std::vector<double> nodes, weights;
  static thread_local int cached = 0;
  const int order = 12;
  if (cached != order) {
    gauss_legendre(order, nodes, weights);
    cached = order;
  }
  int d = static_cast<int>(xi.size());
  double re = 0.0, im = 0.0;
  double h = 4.0 / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = -2.0 + (p + 0.5) * h, half = 0.5 * h;
    for (int i = 0; i < order; ++i) {
      double u = mid + half * nodes[i];
      double w = weights[i] * half * cut.chi0(u);
      if (w == 0.0) continue;
      double phase = 0.0, pw = 1.0;
      for (int k = 0; k < d; ++k) {
        pw *= u;
        phase += xi[k] * pw;
      }
      phase *= -2.0 * kPi * r;
      re += w * std::cos(phase);
      im += w * std::sin(phase);
    }
  }
  return {re, im};
}

}  // namespace detail

// Panel count scales with the oscillation; the result is accepted only if
// doubling the resolution moves it by less than the tolerance.
inline std::complex<double> oscillatory_integral(const std::vector<double>& xi,
                                                 double r,
                                                 const CutoffSet& cut) {
  if (cut.chi1(r) == 0.0)
    throw InvalidInput("oscillatory_integral: r outside supp chi1");
  // Total phase variation: |phase|'/(2 pi) integrates to at most
  // 2 r sum_k |xi_k| 2^k over u in [-2,2]; resolve each wavelength with
  // at least two order-12 panels.
  double waves = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k)
    waves += std::abs(xi[k]) * std::ldexp(1.0, static_cast<int>(k) + 1);
  waves *= 2.0 * r;
  int panels = std::max(32, static_cast<int>(std::ceil(2.0 * waves)));
  auto coarse = detail::oscillatory_once(xi, r, cut, panels);
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto fine = detail::oscillatory_once(xi, r, cut, 2 * panels);
    double err = std::abs(fine - coarse);
    double floor = std::max(1e-6 * std::abs(fine), 1e-13 * cut.chi0_l1);
    if (err <= floor) return fine;
    panels *= 2;
    coarse = fine;
  }
  throw ComputationError("oscillatory_integral: quadrature not converged");
}

// ---------------------------------------------------------------------------
// Decomposition weights
// ---------------------------------------------------------------------------

struct DecompositionWeights {
  double w_low = 0.0, w_h0 = 0.0, w_h1 = 0.0;
};

inline DecompositionWeights decomposition_weights(const std::vector<double>& xi,
                                                  const CutoffSet& cut) {
  DecompositionWeights w;
  double low = cut.a_d(xi);
  double phi = cut.cone(xi);
  w.w_low = low;
  w.w_h1 = (1.0 - low) * phi;
  w.w_h0 = (1.0 - low) * (1.0 - phi);
  return w;
}

// ---------------------------------------------------------------------------
// The multiplier  m_{delta,r}(xi) = chi1(r) psi_hat(delta xi_tail) I(xi, r)
// ---------------------------------------------------------------------------

inline std::complex<double> multiplier_value(const std::vector<double>& xi,
                                             double r, double delta,
                                             const CutoffSet& cut) {
  double c1 = cut.chi1(r);
  if (c1 == 0.0) return {0.0, 0.0};
  std::vector<double> tail(xi.begin() + 1, xi.end());
  for (double& t : tail) t *= delta;
  double ph = cut.psi_hat(tail);
  if (ph == 0.0) return {0.0, 0.0};
  return c1 * ph * oscillatory_integral(xi, r, cut);
}

// |I(R * direction)| per R, with the kernel spectral factor set to 1 so
// the oscillatory decay is measured in isolation.  Rows carry 1/R as the
// ladder abscissa.
inline LadderResult cone_decay_profile(const std::vector<double>& direction,
                                       double r,
                                       const std::vector<double>& R_ladder,
                                       const CutoffSet& cut) {
  double norm = 0.0;
  for (double c : direction) norm += c * c;
  norm = std::sqrt(norm);
  if (!(norm > 0)) throw InvalidInput("cone_decay_profile: zero direction");
  LadderResult res;
  res.experiment_id = "cone-decay";
  for (double R : R_ladder) {
    std::vector<double> xi(direction);
    for (double& c : xi) c *= R / norm;
    double v = std::abs(oscillatory_integral(xi, r, cut));
    res.rows.push_back({1.0 / R, v, 0.0});
  }
  return res;
}

// ---------------------------------------------------------------------------
// Littlewood-Paley annulus bump on the tail frequencies
// ---------------------------------------------------------------------------

inline double annulus_bump(const CutoffSet& cut, int k,
                           const std::vector<double>& xi_tail) {
  double n2 = 0.0;
  for (double c : xi_tail) n2 += c * c;
  double n = std::sqrt(n2);
  return cut.a1(std::ldexp(n, -k)) - cut.a1(std::ldexp(n, -(k - 1)));
}

// ---------------------------------------------------------------------------
// Symbol-condition verification
// ---------------------------------------------------------------------------

struct SymbolReport {
  double B_required = 0.0;
  double deriv_max = 0.0;         // worst |d^j_u d^l_r d^a_xi a| |xi|^{|a|}
  double aa_max = 0.0;            // worst |gamma^{(j)}(u)|, j <= 3d+1
  double vol_parallelepiped = 0.0;  // minimum over the u-grid
  double vol_deviation = 0.0;       // worst |vol - prod i!|
  bool passes = false;
};

namespace detail {

// j-th derivative of the moment curve at u.
inline std::vector<double> gamma_derivative(int d, int j, double u) {
  std::vector<double> v(d, 0.0);
  for (int i = std::max(j, 1); i <= d; ++i) {
    double coef = 1.0;
    for (int m = 0; m < j; ++m) coef *= (i - m);
    v[i - 1] = coef * std::pow(u, i - j);
  }
  return v;
}

inline double det_abs(std::vector<std::vector<double>> m) {
  int n = static_cast<int>(m.size());
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int rr = c + 1; rr < n; ++rr)
      if (std::abs(m[rr][c]) > std::abs(m[piv][c])) piv = rr;
    if (std::abs(m[piv][c]) < 1e-300) return 0.0;
    if (piv != c) std::swap(m[piv], m[c]);
    det *= m[c][c];
    for (int rr = c + 1; rr < n; ++rr) {
      double f = m[rr][c] / m[c][c];
      for (int cc = c; cc < n; ++cc) m[rr][cc] -= f * m[c][cc];
    }
  }
  return std::abs(det);
}

// Recursive central finite difference for a multi-index derivative.
template <class F>
double mixed_fd(const F& fn, std::vector<double>& x, std::vector<int>& alpha,
                const std::vector<double>& h) {
  int ax = -1;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 0) {
      ax = static_cast<int>(i);
      break;
    }
  if (ax < 0) return fn(x);
  --alpha[ax];
  x[ax] += h[ax];
  double fp = mixed_fd(fn, x, alpha, h);
  x[ax] -= 2.0 * h[ax];
  double fm = mixed_fd(fn, x, alpha, h);
  x[ax] += h[ax];
  ++alpha[ax];
  return (fp - fm) / (2.0 * h[ax]);
}

// Max over l <= max_order of the iterated-central-difference estimate of
// |f^{(l)}| sampled on [lo, hi].
template <class F>
double max_1d_derivative(const F& fn, double lo, double hi, int max_order,
                         double h) {
  double worst = 0.0;
  int n = 400;
  for (int l = 0; l <= max_order; ++l) {
    for (int i = 0; i <= n; ++i) {
      double x0 = lo + (hi - lo) * i / n;
      // iterated central difference of order l
      double acc = 0.0;
      for (int m = 0; m <= l; ++m) {
        double binom = 1.0;
        for (int b = 0; b < m; ++b) binom = binom * (l - b) / (b + 1);
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom * fn(x0 + (0.5 * l - m) * h);
      }
      worst = std::max(worst, std::abs(acc) / std::pow(h, l));
    }
  }
  return worst;
}

inline void enumerate_alphas(int d, int budget, std::vector<int>& cur, int pos,
                             std::vector<std::vector<int>>& out) {
  if (pos == d) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= budget; ++v) {
    cur[pos] = v;
    enumerate_alphas(d, budget - v, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

}  // namespace detail

// Checks the curve conditions and the sampled symbol-decay bound for the
// symbol a(u, r, xi) = chi0(u) chi1(r) cone(xi) annulus_k(xi_tail).  The
// symbol factorizes over (u, r, xi), so the worst weighted derivative is
// the product of per-factor maxima.
inline SymbolReport verify_symbol_conditions(int d, double B, int k,
                                             const CutoffSet& cut,
                                             int alpha_cap = 4,
                                             double decay_B = 0.0) {
  if (!(B >= 1.0)) throw InvalidInput("verify_symbol_conditions: need B >= 1");
  if (decay_B <= 0.0) decay_B = B;
  SymbolReport rep;
  rep.B_required = B;

  double target_vol = 1.0;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= i; ++j) target_vol *= j;

  const int n_u = 600;
  double vol_min = 1e300;
  for (int iu = 0; iu <= n_u; ++iu) {
    double u = -1.5 + 3.0 * iu / n_u;
    for (int j = 0; j <= 3 * d + 1; ++j) {
      auto g = detail::gamma_derivative(d, j, u);
      double n2 = 0.0;
      for (double c : g) n2 += c * c;
      rep.aa_max = std::max(rep.aa_max, std::sqrt(n2));
    }
    std::vector<std::vector<double>> cols(d);
    for (int j = 1; j <= d; ++j) cols[j - 1] = detail::gamma_derivative(d, j, u);
    // columns to rows: det is transpose-invariant
    double vol = detail::det_abs(cols);
    vol_min = std::min(vol_min, vol);
    rep.vol_deviation = std::max(rep.vol_deviation, std::abs(vol - target_vol));
  }
  rep.vol_parallelepiped = vol_min;

  double m_u = detail::max_1d_derivative(
      [&](double u) { return cut.chi0(u); }, -2.2, 2.2, 1, 1e-4);
  double m_r = detail::max_1d_derivative(
      [&](double r) { return cut.chi1(r); }, 0.2, 3.1, 2 * d, 0.01);

  // xi samples on the level-k annulus, weighted finite differences.
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur(d, 0);
  detail::enumerate_alphas(d, alpha_cap, cur, 0, alphas);
  auto symbol_xi = [&](const std::vector<double>& xi) {
    std::vector<double> tail(xi.begin() + 1, xi.end());
    return cut.cone(xi) * annulus_bump(cut, k, tail);
  };
  CounterRng rng("symbol-samples", 7);
  double m_xi = 0.0;
  const int n_dir = 6, n_mag = 6, n_x1 = 9;
  double scale = std::ldexp(1.0, k);
  for (int id = 0; id < n_dir; ++id) {
    std::vector<double> dir(d - 1);
    double dn = 0.0;
    for (int i = 0; i < d - 1; ++i) {
      dir[i] = rng.normal(id, i);
      dn += dir[i] * dir[i];
    }
    dn = std::sqrt(std::max(dn, 1e-12));
    for (int im = 0; im < n_mag; ++im) {
      double mag = scale * (0.55 + 1.4 * im / (n_mag - 1));
      for (int ix = 0; ix < n_x1; ++ix) {
        double x1 = cut.kappa * mag * (-2.0 + 4.0 * ix / (n_x1 - 1));
        std::vector<double> xi(d);
        xi[0] = x1;
        for (int i = 1; i < d; ++i) xi[i] = mag * dir[i - 1] / dn;
        double xin = 0.0;
        for (double c : xi) xin += c * c;
        xin = std::sqrt(xin);
        std::vector<double> h(d, 0.01 * scale);
        h[0] = 0.01 * cut.kappa * scale;
        for (auto alpha : alphas) {
          int order = 0;
          for (int a : alpha) order += a;
          std::vector<double> x = xi;
          double der = detail::mixed_fd(symbol_xi, x, alpha, h);
          m_xi = std::max(m_xi, std::abs(der) * std::pow(xin, order));
        }
      }
    }
  }
  rep.deriv_max = m_u * m_r * m_xi;
  rep.passes =
      rep.aa_max <= B && vol_min >= 1.0 / B && rep.deriv_max <= decay_B;
  return rep;
}

// ---------------------------------------------------------------------------
// Bernstein check: sup norm of random band-limited fields vs R^{s/p} Lp
// ---------------------------------------------------------------------------

inline double bernstein_check(int s, double R, double p, int trials,
                              std::uint64_t seed) {
  if (!(p >= 1.0) || !(R >= 1.0))
    throw InvalidInput("bernstein_check: need p >= 1 and R >= 1");
  if (s < 1 || s > 3) throw InvalidInput("bernstein_check: need 1 <= s <= 3");
  int Ri = static_cast<int>(std::llround(R));
  int N = 4 * Ri;
  std::int64_t total = 1;
  for (int i = 0; i < s; ++i) total *= N;
  std::vector<int> shape(s, N);
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(total));
  fftw_plan plan;
  if (s == 1)
    plan = fftw_plan_dft_1d(N, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  else if (s == 2)
    plan = fftw_plan_dft_2d(N, N, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  else
    plan = fftw_plan_dft_3d(N, N, N, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);

  CounterRng rng("bernstein", seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    for (std::int64_t flat = 0; flat < total; ++flat) {
      std::int64_t rem = flat;
      double f2 = 0.0;
      for (int i = s - 1; i >= 0; --i) {
        auto m = static_cast<int>(rem % N);
        rem /= N;
        int freq = m <= N / 2 ? m : m - N;
        f2 += static_cast<double>(freq) * freq;
      }
      auto idx = static_cast<std::uint64_t>(flat) +
                 static_cast<std::uint64_t>(trial) * total;
      if (f2 <= R * R) {
        // trial 0 is the coherent (Dirichlet-kernel-like) near-extremizer
        // of the inequality; the rest are random spectra.
        buf[flat][0] = trial == 0 ? 1.0 : rng.normal(idx, 0);
        buf[flat][1] = trial == 0 ? 0.0 : rng.normal(idx, 1);
      } else {
        buf[flat][0] = 0.0;
        buf[flat][1] = 0.0;
      }
    }
    fftw_execute(plan);
    double sup = 0.0, lp = 0.0;
    for (std::int64_t i = 0; i < total; ++i) {
      double v = std::hypot(buf[i][0], buf[i][1]);
      sup = std::max(sup, v);
      lp += std::pow(v, p);
    }
    lp = std::pow(lp / static_cast<double>(total), 1.0 / p);
    if (lp > 0.0)
      worst = std::max(worst, sup / (std::pow(R, s / p) * lp));
  }
  fftw_destroy_plan(plan);
  fftw_free(buf);
  return worst;
}

}  // namespace momentlab

#endif  // MOMENTLAB_MULTIPLIER_HPP
