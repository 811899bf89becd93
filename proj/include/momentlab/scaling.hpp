// Delta-ladder bookkeeping, log-log exponent regression, predicted
// exponent tables, and box-counting dimension estimation.
#ifndef MOMENTLAB_SCALING_HPP
#define MOMENTLAB_SCALING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "momentlab/common.hpp"
#include "momentlab/field.hpp"

namespace momentlab {

struct LadderRow {
  double delta = 0.0;
  double value = 0.0;
  double stderr_ = 0.0;
};

struct LadderResult {
  std::vector<LadderRow> rows;
  std::string experiment_id;
  std::uint64_t seed = 0;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
};

// Evaluates a measurable per delta under a shared seed protocol.  Rows
// are recorded in the given (strictly decreasing) delta order; more than
// 20% per-point failures aborts the ladder.
inline LadderResult run_ladder(
    std::string_view experiment_id, std::uint64_t seed,
    const std::vector<double>& deltas,
    const std::function<LadderRow(double)>& measure) {
  if (deltas.empty()) throw InvalidConfiguration("run_ladder: empty delta list");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1]))
      throw InvalidConfiguration("run_ladder: deltas must strictly decrease");
  LadderResult res;
  res.experiment_id = std::string(experiment_id);
  res.seed = seed;
  std::size_t failures = 0;
  for (double delta : deltas) {
    try {
      res.rows.push_back(measure(delta));
    } catch (const std::exception&) {
      ++failures;
    }
  }
  if (failures * 5 > deltas.size())
    throw ComputationError("run_ladder: too many per-point failures");
  return res;
}

// Weighted least squares on (log delta, log value); weights from the
// relative standard errors when available.
inline ScalingFit fit_exponent(const LadderResult& ladder) {
  std::vector<double> x, y, w;
  for (const auto& row : ladder.rows) {
    if (!(row.value > 0.0))
      throw InvalidInput("fit_exponent: nonpositive value in ladder");
    x.push_back(std::log(row.delta));
    y.push_back(std::log(row.value));
    double rel = row.stderr_ > 0.0 ? row.stderr_ / row.value : 0.0;
    w.push_back(rel > 1e-12 ? 1.0 / (rel * rel) : 1e24);
  }
  std::size_t n = x.size();
  if (n < 4) throw InvalidInput("fit_exponent: need >= 4 rows");
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  double denom = sw * sxx - sx * sx;
  if (std::abs(denom) < 1e-300)
    throw ComputationError("fit_exponent: degenerate abscissae");
  ScalingFit fit;
  fit.slope = (sw * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / sw;
  double ss_res = 0.0, ss_tot = 0.0, ybar = sy / sw;
  for (std::size_t i = 0; i < n; ++i) {
    double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += w[i] * e * e;
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  double sigma2 = n > 2 ? ss_res / (static_cast<double>(n) - 2.0) : 0.0;
  fit.slope_stderr = std::sqrt(std::max(sigma2 * sw / denom, 0.0));
  return fit;
}

// ---------------------------------------------------------------------------
// Predicted exponents
// ---------------------------------------------------------------------------

struct ExponentTable {
  double tube_volume_slope;        // d - 1
  double tangent_intersection;     // d - 1/2
  double field_mass_slope;         // s - 2 for s >= 2, 0 for s = 1
  double maximal_norm_deficit;     // (s - 2) / p
  double focusing_maximal_slope;   // 1/2
  int dimension_target;            // min(s' + 1, d)
  double p_threshold;              // 3 when s = d, else 4d - 2
  double p_min_constraint;         // max(2s, 3)
  bool absolute_constant;          // s = 1 branch
};

inline ExponentTable predicted_exponents(int s, int d, double p) {
  if (s < 1 || s > d || !(p >= 1.0))
    throw InvalidConfiguration("predicted_exponents: invalid (s, d, p)");
  ExponentTable t{};
  int s_prime = d + 1 - s;
  t.tube_volume_slope = d - 1.0;
  t.tangent_intersection = d - 0.5;
  t.field_mass_slope = s >= 2 ? s - 2.0 : 0.0;
  t.maximal_norm_deficit = s >= 2 ? (s - 2.0) / p : 0.0;
  t.focusing_maximal_slope = 0.5;
  t.dimension_target = std::min(s_prime + 1, d);
  t.p_threshold = (s == d) ? 3.0 : 4.0 * d - 2.0;
  t.p_min_constraint = std::max(2.0 * s, 3.0);
  t.absolute_constant = (s == 1);
  return t;
}

// ---------------------------------------------------------------------------
// Box-counting dimension
// ---------------------------------------------------------------------------

struct BoxCountResult {
  std::vector<double> scales;
  std::vector<std::int64_t> counts;
  double fitted_dimension = 0.0;
};

namespace detail {

inline double fit_dimension(const std::vector<double>& scales,
                            const std::vector<std::int64_t>& counts) {
  LadderResult lad;
  for (std::size_t i = 0; i < scales.size(); ++i)
    lad.rows.push_back({scales[i], static_cast<double>(counts[i]), 0.0});
  // N(eps) ~ eps^{-dim}: the log-log slope against eps is -dim.
  return -fit_exponent(lad).slope;
}

}  // namespace detail

// Occupied-epsilon-box counts of the positive support of a grid field.
inline BoxCountResult box_count_dimension(const ScalarField& f,
                                          std::vector<double> scales) {
  if (scales.size() < 4)
    throw InvalidInput("box_count_dimension: need >= 4 scales");
  std::sort(scales.rbegin(), scales.rend());
  double box_size = 0.0;
  for (int i = 0; i < f.dim(); ++i)
    box_size = std::max(box_size, f.box.hi[i] - f.box.lo[i]);
  for (double e : scales) {
    if (e < 2.0 * f.max_spacing() || e > box_size / 4.0 + 1e-12)
      throw InvalidInput("box_count_dimension: scale outside valid window");
  }
  bool any = false;
  for (float v : f.values)
    if (v > 0.0f) {
      any = true;
      break;
    }
  if (!any) throw InvalidInput("box_count_dimension: empty field");

  BoxCountResult res;
  res.scales = scales;
  int d = f.dim();
  for (double eps : scales) {
    std::vector<std::int64_t> cells(d);
    for (int i = 0; i < d; ++i)
      cells[i] = static_cast<std::int64_t>(
                     std::ceil((f.box.hi[i] - f.box.lo[i]) / eps));
    std::int64_t total = 1;
    for (auto c : cells) total *= c;
    std::vector<char> occ(static_cast<std::size_t>(total), 0);
    std::int64_t n = f.size();
    for (std::int64_t flat = 0; flat < n; ++flat) {
      if (f.values[static_cast<std::size_t>(flat)] <= 0.0f) continue;
      Point p = f.voxel_center(flat);
      std::int64_t cell = 0;
      for (int i = 0; i < d; ++i) {
        auto ci = static_cast<std::int64_t>((p[i] - f.box.lo[i]) / eps);
        ci = std::clamp<std::int64_t>(ci, 0, cells[i] - 1);
        cell = cell * cells[i] + ci;
      }
      occ[static_cast<std::size_t>(cell)] = 1;
    }
    std::int64_t count = 0;
    for (char c : occ) count += c;
    res.counts.push_back(count);
  }
  res.fitted_dimension = detail::fit_dimension(res.scales, res.counts);
  return res;
}

// Streaming variant: membership evaluated on a sample grid of the given
// spacing, occupancy accumulated at the finest scale and aggregated
// upward.  Scales must be nested powers of two multiples of the finest.
inline BoxCountResult box_count_dimension_fn(const FieldFn& fn,
                                             const GridBox& box,
                                             double sample_spacing,
                                             std::vector<double> scales) {
  if (scales.size() < 4)
    throw InvalidInput("box_count_dimension: need >= 4 scales");
  std::sort(scales.begin(), scales.end());
  double finest = scales.front();
  if (sample_spacing > finest / 2.0 + 1e-12)
    throw InvalidInput("box_count_dimension: sample spacing too coarse");
  int d = box.dim();
  std::vector<std::int64_t> cells(d), samples(d);
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) {
    cells[i] = static_cast<std::int64_t>(
                   std::ceil((box.hi[i] - box.lo[i]) / finest));
    samples[i] = static_cast<std::int64_t>(
                     std::ceil((box.hi[i] - box.lo[i]) / sample_spacing));
    total *= cells[i];
  }
  std::vector<char> occ(static_cast<std::size_t>(total), 0);
  std::int64_t n_samples = 1;
  for (auto s : samples) n_samples *= s;
  std::int64_t slab = n_samples / samples[0];
  parallel_blocks(static_cast<std::size_t>(samples[0]), [&](std::size_t b) {
    for (std::int64_t j = 0; j < slab; ++j) {
      std::int64_t flat = static_cast<std::int64_t>(b) * slab + j;
      Point p(d);
      std::int64_t rem = flat;
      for (int i = d - 1; i >= 0; --i) {
        std::int64_t idx = rem % samples[i];
        rem /= samples[i];
        p[i] = box.lo[i] + (idx + 0.5) * sample_spacing;
      }
      if (fn(p) <= 0.0) continue;
      std::int64_t cell = 0;
      for (int i = 0; i < d; ++i) {
        auto ci = static_cast<std::int64_t>((p[i] - box.lo[i]) / finest);
        ci = std::clamp<std::int64_t>(ci, 0, cells[i] - 1);
        cell = cell * cells[i] + ci;
      }
      occ[static_cast<std::size_t>(cell)] = 1;
    }
  });
  BoxCountResult res;
  for (double eps : scales) {
    auto factor = static_cast<std::int64_t>(std::llround(eps / finest));
    std::vector<std::int64_t> coarse(d);
    std::int64_t ctotal = 1;
    for (int i = 0; i < d; ++i) {
      coarse[i] = (cells[i] + factor - 1) / factor;
      ctotal *= coarse[i];
    }
    std::vector<char> cocc(static_cast<std::size_t>(ctotal), 0);
    for (std::int64_t flat = 0; flat < total; ++flat) {
      if (!occ[static_cast<std::size_t>(flat)]) continue;
      std::int64_t rem = flat, cell = 0;
      std::vector<std::int64_t> ci(d);
      for (int i = d - 1; i >= 0; --i) {
        ci[i] = (rem % cells[i]) / factor;
        rem /= cells[i];
      }
      for (int i = 0; i < d; ++i) cell = cell * coarse[i] + ci[i];
      cocc[static_cast<std::size_t>(cell)] = 1;
    }
    std::int64_t count = 0;
    for (char c : cocc) count += c;
    res.scales.push_back(eps);
    res.counts.push_back(count);
  }
  res.fitted_dimension = detail::fit_dimension(res.scales, res.counts);
  return res;
}

}  // namespace momentlab

#endif  // MOMENTLAB_SCALING_HPP
