// Smooth cutoff functions: the C-infinity bumps chi0, chi1, the radial
// plateau a_d, the cone cutoff, and the nonnegative kernel psi with
// compactly supported spectrum (built numerically from a bump spectrum).
#ifndef MOMENTLAB_CUTOFFS_HPP
#define MOMENTLAB_CUTOFFS_HPP

#include <cmath>
#include <vector>

#include "momentlab/common.hpp"

namespace momentlab {

inline double cinf_e(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// 0 for x <= 0, 1 for x >= 1, C-infinity monotone in between.
inline double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = cinf_e(x), b = cinf_e(1.0 - x);
  return a / (a + b);
}

// Gauss-Legendre nodes/weights on [-1,1] (Newton on Legendre P_n).
inline void gauss_legendre(int n, std::vector<double>& x,
                           std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
  }
}

// Integral of fn over [a, b] by composite Gauss-Legendre.
template <class F>
double gl_integrate(const F& fn, double a, double b, int panels = 8,
                    int order = 16) {
  static thread_local std::vector<double> nodes, weights;
  static thread_local int cached_order = 0;
  if (cached_order != order) {
    gauss_legendre(order, nodes, weights);
    cached_order = order;
  }
  double total = 0.0;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h, half = 0.5 * h;
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += weights[i] * fn(mid + half * nodes[i]);
    total += s * half;
  }
  return total;
}

// ---------------------------------------------------------------------------
// CutoffSet
// ---------------------------------------------------------------------------

struct CutoffSet {
  int d = 3;
  double kappa = 27.0;

  // psi tables
  double beta = 1.0;       // spatial rescale of the base kernel
  double amp = 1.0;        // amplitude making psi1 >= 1 on [-3, 3]
  double plateau = 3.0;    // C_d: psi1 >= 1 on [-plateau, plateau]
  double phi_dx = 0.0;     // base-kernel table spacing
  std::vector<double> phi_tab;    // base kernel on [0, x_max]
  double acorr_dw = 0.0;          // spectrum autocorrelation spacing
  std::vector<double> acorr_tab;  // on [0, 1]
  double spatial_cut = 0.0;       // |x| beyond which psi1 is negligible
  double chi0_l1 = 0.0;
  double psi1_l1 = 0.0;

  // supp [-2, 2], identically 1 on [-1.5, 1.5]
  double chi0(double u) const { return smoothstep((2.0 - std::abs(u)) * 2.0); }
  // supp [1/4, 3], identically 1 on [1/2, 2]
  double chi1(double r) const {
    return smoothstep((r - 0.25) * 4.0) * smoothstep(3.0 - r);
  }
  // radial plateau: 1 on [0, 1], supp [0, 2]
  double a1(double x) const { return smoothstep(2.0 - std::abs(x)); }
  double a_d(const std::vector<double>& xi) const {
    double n2 = 0.0;
    for (double c : xi) n2 += c * c;
    return a1(std::sqrt(n2));
  }
  // cone cutoff: 1 where |xi1| <= kappa |xi_tail|, 0 where >= 2 kappa
  double cone(const std::vector<double>& xi) const {
    double t2 = 0.0;
    for (std::size_t i = 1; i < xi.size(); ++i) t2 += xi[i] * xi[i];
    double tn = std::sqrt(t2);
    if (tn < 1e-300) return xi[0] == 0.0 ? 1.0 : 0.0;
    return a1(xi[0] / (kappa * tn));
  }

  double phi_base(double x) const {
    double y = std::abs(x) / phi_dx;
    auto i = static_cast<std::size_t>(y);
    if (i + 1 >= phi_tab.size()) return 0.0;
    double f = y - static_cast<double>(i);
    return phi_tab[i] * (1.0 - f) + phi_tab[i + 1] * f;
  }

  // 1-D kernel: nonnegative, psi1 >= 1 on [-plateau, plateau], spectrum
  // supported in [-1/beta, 1/beta].
  double psi1(double x) const {
    double v = phi_base(x / beta);
    return amp * v * v;
  }

  double psi1_hat(double w) const {
    double y = beta * std::abs(w);
    if (y >= 1.0) return 0.0;
    double u = y / acorr_dw;
    auto i = static_cast<std::size_t>(u);
    if (i + 1 >= acorr_tab.size()) return 0.0;
    double f = u - static_cast<double>(i);
    double ac = acorr_tab[i] * (1.0 - f) + acorr_tab[i + 1] * f;
    return amp * beta * ac;
  }

  // tensor products over the d-1 tail coordinates
  double psi(const std::vector<double>& t_tail) const {
    double v = 1.0;
    for (double t : t_tail) v *= psi1(t);
    return v;
  }
  double psi_hat(const std::vector<double>& w_tail) const {
    double v = 1.0;
    for (double w : w_tail) v *= psi1_hat(w);
    return v;
  }

  double psi_hat_support() const { return 1.0 / beta; }
};

// Base spectrum: smooth bump supported in [-1/2, 1/2].
inline double kernel_spectrum(double w) {
  double y = 2.0 * w;
  double arg = 1.0 - y * y;
  return arg > 0.0 ? std::exp(-1.0 / arg) : 0.0;
}

inline CutoffSet build_cutoffs(int d, double kappa = 0.0) {
  if (d < 2) throw InvalidInput("build_cutoffs: dimension must be >= 2");
  CutoffSet cut;
  cut.d = d;
  cut.kappa =
      kappa > 0.0 ? kappa : 4.0 * d * std::pow(1.5, d - 1);
  if (cut.kappa < 4.0) throw InvalidInput("build_cutoffs: kappa must be >= 4");

  // Base kernel phi(x) = 2 * int_0^{1/2} spec(w) cos(2 pi w x) dw.
  const double x_max = 80.0;
  cut.phi_dx = 0.005;
  auto n_tab = static_cast<std::size_t>(x_max / cut.phi_dx) + 2;
  cut.phi_tab.resize(n_tab);
  for (std::size_t i = 0; i < n_tab; ++i) {
    double x = static_cast<double>(i) * cut.phi_dx;
    cut.phi_tab[i] = 2.0 * gl_integrate(
                               [x](double w) {
                                 return kernel_spectrum(w) *
                                        std::cos(2.0 * kPi * w * x);
                               },
                               0.0, 0.5, 8, 24);
  }

  // First zero of the base kernel; the plateau maps inside 0.7 * z0.
  double z0 = x_max;
  for (std::size_t i = 1; i < n_tab; ++i) {
    if (cut.phi_tab[i] <= 0.0) {
      z0 = static_cast<double>(i) * cut.phi_dx;
      break;
    }
  }
  cut.beta = cut.plateau / (0.7 * z0);
  double pmin = cut.phi_tab[0];
  auto i_edge = static_cast<std::size_t>(0.7 * z0 / cut.phi_dx) + 1;
  for (std::size_t i = 0; i <= i_edge && i < n_tab; ++i)
    pmin = std::min(pmin, cut.phi_tab[i]);
  if (!(pmin > 0.0))
    throw ComputationError("build_cutoffs: kernel not positive on plateau");
  cut.amp = 1.0 / (pmin * pmin);

  // Spectrum autocorrelation on [0, 1] (support of spec * spec).
  cut.acorr_dw = 1.0 / 2048.0;
  auto n_ac = static_cast<std::size_t>(1.0 / cut.acorr_dw) + 2;
  cut.acorr_tab.resize(n_ac);
  for (std::size_t i = 0; i < n_ac; ++i) {
    double w = static_cast<double>(i) * cut.acorr_dw;
    double lo = std::max(-0.5, w - 0.5), hi = 0.5;
    cut.acorr_tab[i] =
        lo < hi ? gl_integrate(
                      [w](double v) {
                        return kernel_spectrum(v) * kernel_spectrum(w - v);
                      },
                      lo, hi, 4, 24)
                : 0.0;
  }

  // Spatial truncation: beyond this |x| the kernel is negligible.
  double peak = cut.amp * cut.phi_tab[0] * cut.phi_tab[0];
  std::size_t i_cut = n_tab - 2;
  while (i_cut > 0) {
    double v = cut.phi_tab[i_cut];
    if (cut.amp * v * v > 3e-5 * peak) break;
    --i_cut;
  }
  cut.spatial_cut = cut.beta * static_cast<double>(i_cut + 1) * cut.phi_dx;

  cut.chi0_l1 = gl_integrate([&](double u) { return cut.chi0(u); }, -2.0, 2.0,
                             16, 24);
  cut.psi1_l1 = cut.psi1_hat(0.0);
  return cut;
}

}  // namespace momentlab

#endif  // MOMENTLAB_CUTOFFS_HPP
