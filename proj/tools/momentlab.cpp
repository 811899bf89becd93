// Experiment front end: every laboratory computation behind one binary
// with plain-text configuration, reproducible seeding, and CSV/JSON
// result serialization.
//
// Exit codes: 0 all verdicts pass, 1 computation error or failed
// verdict, 2 usage/configuration error.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "acceptance_suite.hpp"
#include "momentlab/io.hpp"
#include "momentlab/maximal.hpp"
#include "momentlab/multiplier.hpp"
#include "momentlab/scaling.hpp"
#include "momentlab/tube_measure.hpp"

using namespace momentlab;
using momentlab::suite::fmt;

namespace {

// Echoes the effective experiment spec, its content hash, and the master
// seed on construction; the wall time on destruction.
class RunLog {
 public:
  RunLog(const std::string& name, const Config& cfg, std::uint64_t seed)
      : start_(std::chrono::steady_clock::now()) {
    std::cerr << "# run: " << name << '\n';
    for (const auto& [k, v] : cfg) std::cerr << "#   " << k << " = " << v << '\n';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    std::cerr << "# config-hash: " << buf << '\n';
    std::cerr << "# seed: " << seed << '\n';
  }
  ~RunLog() {
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
    std::cerr << "# wall-time-s: " << wall << '\n';
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

MomentCurve parse_curve(const std::string& text, int d) {
  auto at = text.find('@');
  double r = 1.0;
  std::string coords = text;
  if (at != std::string::npos) {
    r = std::stod(text.substr(at + 1));
    coords = text.substr(0, at);
  }
  auto v = parse_delta_list(coords);
  if (static_cast<int>(v.size()) != d)
    throw InvalidConfiguration("curve spec needs " + std::to_string(d) +
                               " coordinates: " + text);
  return MomentCurve(Point(v.begin(), v.end()), r);
}

std::string point_text(const Point& p) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i)
    os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

bool verdict_line(const std::string& label, double value, double target,
                  double tol) {
  bool pass = std::abs(value - target) <= tol;
  std::ostringstream os;
  os.precision(4);
  os << label << ' ' << value << " vs target " << target << " ± " << tol
     << ": " << (pass ? "PASS" : "FAIL");
  std::cout << os.str() << '\n';
  return pass;
}

void emit_ladder(const LadderResult& lad, const ScalingFit* fit,
                 double target, bool pass, const std::string& out,
                 const std::string& format) {
  std::cout.precision(10);
  std::cout << "delta,value,stderr\n";
  for (const auto& row : lad.rows)
    std::cout << row.delta << ',' << row.value << ',' << row.stderr_ << '\n';
  if (out.empty()) return;
  if (format == "json") {
    nlohmann::json j;
    j["experiment"] = lad.experiment_id;
    j["seed"] = lad.seed;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : lad.rows)
      j["rows"].push_back(
          {{"delta", row.delta}, {"value", row.value}, {"stderr", row.stderr_}});
    if (fit) j["fit"] = fit_json(*fit, target, pass);
    write_text_file(out, j.dump(2) + "\n");
  } else {
    write_text_file(out, ladder_csv(lad));
  }
}

struct CommonOpts {
  int d = 3;
  double delta = 1.0 / 64.0;
  std::string deltas;
  std::uint64_t seed = 1;
  std::int64_t samples = 1000000;
  std::string out;
  std::string format = "csv";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* sub, CommonOpts& c, bool with_sampling = true) {
  sub->add_option("--d", c.d, "ambient dimension")->check(CLI::Range(2, 8));
  sub->add_option("--workers", c.workers, "worker thread count")
      ->envname("MOMENTLAB_WORKERS");
  if (with_sampling) {
    sub->add_option("--seed", c.seed, "master seed")->envname("MOMENTLAB_SEED");
    sub->add_option("--samples", c.samples, "Monte Carlo samples per point")
        ->envname("MOMENTLAB_SAMPLES");
    sub->add_option("--out", c.out, "result file path");
    sub->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

LadderResult measure_ladder(const std::string& id, std::uint64_t seed,
                            const std::vector<double>& deltas,
                            const std::function<VolumeEstimate(double)>& fn) {
  return run_ladder(id, seed, deltas, [&](double delta) {
    auto est = fn(delta);
    return LadderRow{delta, est.value, est.stderr_};
  });
}

}  // namespace

int main(int argc, char** argv) {
  // --config: plain key = value files; values fill in options not given
  // on the command line (command-line flags win).
  std::vector<std::string> tokens(argv + 1, argv + argc);
  Config file_cfg;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string path;
    if (tokens[i] == "--config" && i + 1 < tokens.size()) {
      path = tokens[i + 1];
      tokens.erase(tokens.begin() + i, tokens.begin() + i + 2);
    } else if (tokens[i].rfind("--config=", 0) == 0) {
      path = tokens[i].substr(9);
      tokens.erase(tokens.begin() + i);
    } else {
      continue;
    }
    try {
      file_cfg = parse_config_file(path);
    } catch (const std::exception& e) {
      std::cerr << "configuration error: " << e.what() << '\n';
      return 2;
    }
    break;
  }
  if (!file_cfg.empty()) {
    // insert config-derived tokens right after the subcommand name so
    // later command-line duplicates take precedence (TakeLast policy)
    std::size_t pos = 0;
    while (pos < tokens.size() && !tokens[pos].empty() &&
           tokens[pos][0] == '-')
      ++pos;
    if (pos < tokens.size()) ++pos;
    std::vector<std::string> injected;
    for (const auto& [k, v] : file_cfg) {
      injected.push_back("--" + k);
      injected.push_back(v);
    }
    tokens.insert(tokens.begin() + pos, injected.begin(), injected.end());
  }

  CLI::App app{"computational laboratory for maximal averages over moment "
               "curves"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // tangency -------------------------------------------------------------
  auto* sc_tan = app.add_subcommand(
      "tangency", "solve for the curve tangent to the unit moment curve");
  CommonOpts tan_c;
  double tan_xlast = 0.0, tan_r = 0.5;
  add_common(sc_tan, tan_c, false);
  sc_tan->add_option("--xlast", tan_xlast, "last center coordinate")
      ->required();
  sc_tan->add_option("--r", tan_r, "scale of the tangent curve")->required();

  // intersect ------------------------------------------------------------
  auto* sc_int = app.add_subcommand(
      "intersect", "intersection points of two moment curves");
  CommonOpts int_c;
  std::string int_c1 = "0,0,0@1", int_c2;
  add_common(sc_int, int_c, false);
  sc_int->add_option("--c1", int_c1, "first curve, x1,..,xd@r");
  sc_int->add_option("--c2", int_c2, "second curve, x1,..,xd@r")->required();

  // tube-volume ----------------------------------------------------------
  auto* sc_tube = app.add_subcommand(
      "tube-volume", "delta-neighborhood volume ladder and scaling fit");
  CommonOpts tube_c;
  std::string tube_deltas = "2^-3,2^-4,2^-5,2^-6,2^-7,2^-8";
  std::string tube_curve = "0,0,0@1";
  add_common(sc_tube, tube_c);
  sc_tube->add_option("--deltas", tube_deltas, "comma list of deltas");
  sc_tube->add_option("--delta", tube_c.delta, "single delta (overrides list)");
  sc_tube->add_option("--curve", tube_curve, "curve, x1,..,xd@r");

  // intersection-volume ---------------------------------------------------
  auto* sc_iv = app.add_subcommand(
      "intersection-volume",
      "volume of the intersection of two delta-neighborhoods");
  CommonOpts iv_c;
  std::string iv_c1 = "0,0,0@1", iv_c2, iv_deltas = "2^-4,2^-5,2^-6,2^-7";
  add_common(sc_iv, iv_c);
  sc_iv->add_option("--c1", iv_c1, "first curve, x1,..,xd@r");
  sc_iv->add_option("--c2", iv_c2, "second curve, x1,..,xd@r")->required();
  sc_iv->add_option("--deltas", iv_deltas, "comma list of deltas");

  // example-mass ----------------------------------------------------------
  auto* sc_mass = app.add_subcommand(
      "example-mass", "mass ladder of the union-set sharpness example");
  CommonOpts mass_c;
  mass_c.samples = 200000;
  int mass_s = 3;
  std::string mass_deltas = "2^-4,2^-5,2^-6,2^-7,2^-8";
  add_common(sc_mass, mass_c);
  sc_mass->add_option("--s", mass_s, "number of sup parameters")
      ->check(CLI::Range(1, 3));
  sc_mass->add_option("--deltas", mass_deltas, "comma list of deltas");

  // maximal ---------------------------------------------------------------
  auto* sc_max = app.add_subcommand(
      "maximal", "maximal tube average over the translation search grid");
  CommonOpts max_c;
  max_c.delta = std::ldexp(1.0, -6);
  int max_s = 2, max_nu = 96;
  double max_r = 1.0, max_early = 0.8;
  std::string max_field = "union", max_tail;
  add_common(sc_max, max_c);
  sc_max->add_option("--field", max_field, "union or focusing")
      ->check(CLI::IsMember({"union", "focusing"}));
  sc_max->add_option("--s", max_s, "number of sup parameters")
      ->check(CLI::Range(1, 3));
  sc_max->add_option("--delta", max_c.delta, "tube width");
  sc_max->add_option("--r", max_r, "curve scale parameter");
  sc_max->add_option("--tail", max_tail, "comma list of tail coordinates");
  sc_max->add_option("--nu", max_nu, "quadrature nodes along the curve");
  sc_max->add_option("--early-exit", max_early,
                     "stop the search at this value (<= 0 disables)");

  // dimension -------------------------------------------------------------
  auto* sc_dim = app.add_subcommand(
      "dimension", "box-counting dimension of a reference set");
  CommonOpts dim_c;
  dim_c.delta = std::ldexp(1.0, -7);
  int dim_sprime = 1;
  double dim_rho = 0.0, dim_spacing = 0.0;
  std::string dim_set = "union", dim_scales = "2^-5,2^-4,2^-3,2^-2";
  add_common(sc_dim, dim_c);
  sc_dim->add_option("--set", dim_set, "union, segment, or cube")
      ->check(CLI::IsMember({"union", "segment", "cube"}));
  sc_dim->add_option("--sprime", dim_sprime, "free parameters of the union set")
      ->check(CLI::Range(1, 3));
  sc_dim->add_option("--delta", dim_c.delta, "union-set net spacing");
  sc_dim->add_option("--rho", dim_rho,
                     "tube inflation radius (default: delta, the thin "
                     "variant used for dimension fits)");
  sc_dim->add_option("--scales", dim_scales, "comma list of box scales");
  sc_dim->add_option("--spacing", dim_spacing,
                     "membership sample spacing (default: finest scale / 2)");

  // multiplier-decay ------------------------------------------------------
  auto* sc_dec = app.add_subcommand(
      "multiplier-decay", "oscillatory-factor decay along a frequency ray");
  CommonOpts dec_c;
  std::string dec_ray = "high0",
              dec_rvalues = "2^4,2^5,2^6,2^7,2^8,2^9,2^10";
  double dec_r = 1.0;
  add_common(sc_dec, dec_c);
  sc_dec->add_option("--ray", dec_ray, "high0 or high1")
      ->check(CLI::IsMember({"high0", "high1"}));
  sc_dec->add_option("--r", dec_r, "dilation parameter");
  sc_dec->add_option("--rvalues", dec_rvalues, "comma list of |xi| magnitudes");

  // symbol-check ----------------------------------------------------------
  auto* sc_sym = app.add_subcommand(
      "symbol-check", "curve conditions and sampled symbol-decay bound");
  CommonOpts sym_c;
  int sym_k = 6;
  add_common(sc_sym, sym_c, false);
  sc_sym->add_option("--k", sym_k, "dyadic frequency level")
      ->check(CLI::Range(1, 20));

  // bernstein -------------------------------------------------------------
  auto* sc_bern = app.add_subcommand(
      "bernstein", "band-limited sup-vs-Lp ratio check");
  CommonOpts bern_c;
  int bern_s = 1, bern_trials = 50;
  double bern_p = 2.0, bern_R = 16.0;
  add_common(sc_bern, bern_c);
  sc_bern->add_option("--s", bern_s, "dimension of the torus")
      ->check(CLI::Range(1, 3));
  sc_bern->add_option("--p", bern_p, "Lebesgue exponent");
  sc_bern->add_option("--rband", bern_R, "frequency band radius");
  sc_bern->add_option("--trials", bern_trials, "random spectra per check");

  // acceptance ------------------------------------------------------------
  auto* sc_acc = app.add_subcommand(
      "acceptance", "run the full acceptance suite");
  CommonOpts acc_c;
  std::string acc_budget = "full", acc_out = "acceptance_out";
  add_common(sc_acc, acc_c, false);
  sc_acc->add_option("--budget", acc_budget, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->envname("MOMENTLAB_BUDGET");
  sc_acc->add_option("--seed", acc_c.seed, "master seed")
      ->envname("MOMENTLAB_SEED");
  sc_acc->add_option("--out", acc_out, "artifact directory");

  std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    bool all_pass = true;

    if (*sc_tan) {
      worker_count() = static_cast<int>(tan_c.workers);
      Config cfg{{"command", "tangency"},
                 {"d", std::to_string(tan_c.d)},
                 {"xlast", fmt(tan_xlast, 17)},
                 {"r", fmt(tan_r, 17)}};
      RunLog log("tangency", cfg, 0);
      MomentCurve c = solve_tangent_curve(tan_xlast, tan_r, tan_c.d);
      auto tp = is_tangent(c, MomentCurve::unit(tan_c.d), 1e-8);
      std::cout << "center " << point_text(c.center) << " scale " << c.scale
                << '\n';
      std::cout << "tangency parameter t = " << (tp ? tp->t : 0.0) << " at "
                << point_text(tp ? tp->point : Point(tan_c.d, 0.0)) << '\n';
    } else if (*sc_int) {
      worker_count() = static_cast<int>(int_c.workers);
      Config cfg{{"command", "intersect"},
                 {"d", std::to_string(int_c.d)},
                 {"c1", int_c1},
                 {"c2", int_c2}};
      RunLog log("intersect", cfg, 0);
      MomentCurve c1 = parse_curve(int_c1, int_c.d);
      MomentCurve c2 = parse_curve(int_c2, int_c.d);
      auto roots = planar_intersections(project_to_parabola(c1),
                                        project_to_parabola(c2));
      std::cout << "planar roots:";
      for (double t : roots) std::cout << ' ' << fmt(t, 10);
      std::cout << '\n';
      auto rep = curve_intersections(c1, c2);
      std::cout << "verified intersections: " << rep.count() << '\n';
      for (const auto& rec : rep.points)
        std::cout << "  t = " << fmt(rec.t, 10) << ", t' = "
                  << fmt(rec.t_prime, 10) << " at " << point_text(rec.point)
                  << '\n';
    } else if (*sc_tube) {
      worker_count() = static_cast<int>(tube_c.workers);
      auto deltas = sc_tube->count("--delta")
                        ? std::vector<double>{tube_c.delta}
                        : parse_delta_list(tube_deltas);
      Config cfg{{"command", "tube-volume"},
                 {"d", std::to_string(tube_c.d)},
                 {"curve", tube_curve},
                 {"deltas", tube_deltas},
                 {"samples", std::to_string(tube_c.samples)}};
      RunLog log("tube-volume", cfg, tube_c.seed);
      MomentCurve c = parse_curve(tube_curve, tube_c.d);
      auto lad = measure_ladder("tube-volume", tube_c.seed, deltas,
                                [&](double delta) {
                                  return tube_volume(c, delta, tube_c.samples,
                                                     tube_c.seed);
                                });
      if (lad.rows.size() >= 4) {
        auto fit = fit_exponent(lad);
        double target = tube_c.d - 1.0;
        bool pass = std::abs(fit.slope - target) <= 0.1;
        emit_ladder(lad, &fit, target, pass, tube_c.out, tube_c.format);
        all_pass &= verdict_line("tube-volume slope", fit.slope, target, 0.1);
      } else {
        emit_ladder(lad, nullptr, 0.0, true, tube_c.out, tube_c.format);
      }
    } else if (*sc_iv) {
      worker_count() = static_cast<int>(iv_c.workers);
      auto deltas = parse_delta_list(iv_deltas);
      Config cfg{{"command", "intersection-volume"},
                 {"d", std::to_string(iv_c.d)},
                 {"c1", iv_c1},
                 {"c2", iv_c2},
                 {"deltas", iv_deltas},
                 {"samples", std::to_string(iv_c.samples)}};
      RunLog log("intersection-volume", cfg, iv_c.seed);
      MomentCurve c1 = parse_curve(iv_c1, iv_c.d);
      MomentCurve c2 = parse_curve(iv_c2, iv_c.d);
      auto inv = pair_invariants(c1, c2);
      std::cout << "dbar " << fmt(inv.dbar) << ", normalized discriminant "
                << fmt(inv.delta_bar) << '\n';
      bool within = true;
      auto lad = measure_ladder(
          "intersection-volume", iv_c.seed, deltas, [&](double delta) {
            auto est =
                intersection_volume(c1, c2, delta, iv_c.samples, iv_c.seed);
            double limit =
                calibration::kIntersectionBoundC *
                analytic_intersection_bound(inv, delta).bound_value;
            if (est.value > limit + 3.0 * est.stderr_) within = false;
            return est;
          });
      if (lad.rows.size() >= 4) {
        auto fit = fit_exponent(lad);
        std::cout << "fitted slope " << fmt(fit.slope) << " (stderr "
                  << fmt(fit.slope_stderr) << ")\n";
      }
      emit_ladder(lad, nullptr, 0.0, within, iv_c.out, iv_c.format);
      std::cout << "calibrated intersection bound: "
                << (within ? "PASS" : "FAIL") << '\n';
      all_pass &= within;
    } else if (*sc_mass) {
      worker_count() = static_cast<int>(mass_c.workers);
      auto deltas = parse_delta_list(mass_deltas);
      Config cfg{{"command", "example-mass"},
                 {"d", std::to_string(mass_c.d)},
                 {"s", std::to_string(mass_s)},
                 {"deltas", mass_deltas},
                 {"samples", std::to_string(mass_c.samples)}};
      RunLog log("example-mass", cfg, mass_c.seed);
      auto lad = measure_ladder(
          "example-mass", mass_c.seed, deltas, [&](double delta) {
            UnionSetIndicator ind(mass_c.d, mass_c.d + 1 - mass_s, delta);
            return indicator_mass_mc(std::cref(ind), ind.bounding_box(),
                                     mass_c.samples, mass_c.seed);
          });
      auto fit = fit_exponent(lad);
      double target = mass_s >= 2 ? mass_s - 2.0 : 0.0;
      double tol = mass_s == 1 ? 0.1 : 0.2;
      bool pass = std::abs(fit.slope - target) <= tol;
      emit_ladder(lad, &fit, target, pass, mass_c.out, mass_c.format);
      all_pass &= verdict_line("example-mass slope", fit.slope, target, tol);
    } else if (*sc_max) {
      worker_count() = static_cast<int>(max_c.workers);
      Config cfg{{"command", "maximal"},      {"field", max_field},
                 {"d", std::to_string(max_c.d)}, {"s", std::to_string(max_s)},
                 {"delta", fmt(max_c.delta, 17)}, {"r", fmt(max_r, 17)},
                 {"tail", max_tail}};
      RunLog log("maximal", cfg, max_c.seed);
      MaximalConfig mc;
      mc.d = max_c.d;
      mc.s = max_s;
      mc.delta = max_c.delta;
      mc.search_lo.assign(max_s, -0.125);
      mc.search_hi.assign(max_s, 0.125);
      mc.n_u = max_nu;
      mc.early_exit = max_early;
      ParamSample sample;
      sample.r = max_r;
      if (!max_tail.empty())
        for (double v : parse_delta_list(max_tail))
          sample.x_tail.push_back(v);
      double value;
      if (max_field == "union") {
        UnionSetIndicator ind(max_c.d, mc.s_prime(), max_c.delta);
        value = maximal_value_fn(std::cref(ind), sample, mc);
        std::cout << "maximal value " << fmt(value) << '\n';
        bool pass = value >= 0.8;
        std::cout << "union-set lower bound " << fmt(value)
                  << " vs target >= 0.8: " << (pass ? "PASS" : "FAIL")
                  << '\n';
        all_pass &= pass;
      } else {
        FocusingIndicator ind{max_c.d, max_c.delta};
        value = maximal_value_fn(std::cref(ind), sample, mc);
        std::cout << "maximal value " << fmt(value) << '\n';
      }
    } else if (*sc_dim) {
      worker_count() = static_cast<int>(dim_c.workers);
      auto scales = parse_delta_list(dim_scales);
      std::sort(scales.begin(), scales.end());
      double spacing = dim_spacing > 0.0 ? dim_spacing : scales.front() / 2.0;
      Config cfg{{"command", "dimension"},
                 {"set", dim_set},
                 {"d", std::to_string(dim_c.d)},
                 {"sprime", std::to_string(dim_sprime)},
                 {"delta", fmt(dim_c.delta, 17)},
                 {"scales", dim_scales},
                 {"spacing", fmt(spacing, 17)}};
      RunLog log("dimension", cfg, dim_c.seed);
      BoxCountResult res;
      double target, tol;
      if (dim_set == "union") {
        double rho = dim_rho > 0.0 ? dim_rho : dim_c.delta;
        UnionSetIndicator ind(dim_c.d, dim_sprime, dim_c.delta, rho);
        res = box_count_dimension_fn(std::cref(ind), ind.bounding_box(),
                                     spacing, scales);
        target = std::min(dim_sprime + 1, dim_c.d);
        tol = 0.25;
      } else if (dim_set == "segment") {
        double fine = spacing;
        res = box_count_dimension_fn(
            [fine](const Point& p) {
              for (std::size_t i = 1; i < p.size(); ++i)
                if (std::abs(p[i]) > fine) return 0.0;
              return 1.0;
            },
            GridBox::cube(dim_c.d, 0.5), spacing, scales);
        target = 1.0;
        tol = 0.15;
      } else {
        res = box_count_dimension_fn([](const Point&) { return 1.0; },
                                     GridBox::cube(dim_c.d, 0.5), spacing,
                                     scales);
        target = dim_c.d;
        tol = 0.1;
      }
      std::cout << "scale,count\n";
      for (std::size_t i = 0; i < res.scales.size(); ++i)
        std::cout << res.scales[i] << ',' << res.counts[i] << '\n';
      all_pass &= verdict_line("box-counting dimension",
                               res.fitted_dimension, target, tol);
    } else if (*sc_dec) {
      worker_count() = static_cast<int>(dec_c.workers);
      auto R_values = parse_delta_list(dec_rvalues);
      Config cfg{{"command", "multiplier-decay"},
                 {"ray", dec_ray},
                 {"r", fmt(dec_r, 17)},
                 {"rvalues", dec_rvalues}};
      RunLog log("multiplier-decay", cfg, dec_c.seed);
      auto cut = build_cutoffs(dec_c.d);
      std::vector<double> direction(dec_c.d, 0.0);
      if (dec_ray == "high0") {
        direction[0] = 1.0;
        for (int i = 1; i < dec_c.d; ++i)
          direction[i] = 1.0 / (4.0 * cut.kappa);
      } else {
        direction[dec_c.d - 1] = 1.0;
      }
      auto lad = cone_decay_profile(direction, dec_r, R_values, cut);
      auto fit = fit_exponent(lad);
      emit_ladder(lad, &fit, 0.0, true, dec_c.out, dec_c.format);
      bool pass = dec_ray == "high0" ? fit.slope >= 4.0 : fit.slope <= 1.0;
      std::cout << dec_ray << " decay exponent " << fmt(fit.slope)
                << " vs target " << (dec_ray == "high0" ? ">= 4" : "<= 1")
                << ": " << (pass ? "PASS" : "FAIL") << '\n';
      all_pass &= pass;
    } else if (*sc_sym) {
      worker_count() = static_cast<int>(sym_c.workers);
      Config cfg{{"command", "symbol-check"},
                 {"d", std::to_string(sym_c.d)},
                 {"k", std::to_string(sym_k)}};
      RunLog log("symbol-check", cfg, 0);
      auto cut = build_cutoffs(sym_c.d);
      auto rep = verify_symbol_conditions(sym_c.d, calibration::kSymbolB,
                                          sym_k, cut, 4,
                                          calibration::kSymbolDecayB);
      std::cout << "max curve derivative " << fmt(rep.aa_max) << " vs bound "
                << fmt(rep.B_required) << '\n';
      std::cout << "parallelepiped volume " << fmt(rep.vol_parallelepiped, 12)
                << " (deviation " << fmt(rep.vol_deviation) << ")\n";
      std::cout << "worst weighted symbol derivative " << fmt(rep.deriv_max)
                << " vs ceiling " << fmt(calibration::kSymbolDecayB) << '\n';
      std::cout << "symbol conditions: " << (rep.passes ? "PASS" : "FAIL")
                << '\n';
      all_pass &= rep.passes;
    } else if (*sc_bern) {
      worker_count() = static_cast<int>(bern_c.workers);
      Config cfg{{"command", "bernstein"},
                 {"s", std::to_string(bern_s)},
                 {"p", fmt(bern_p, 17)},
                 {"rband", fmt(bern_R, 17)},
                 {"trials", std::to_string(bern_trials)}};
      RunLog log("bernstein", cfg, bern_c.seed);
      double worst =
          bernstein_check(bern_s, bern_R, bern_p, bern_trials, bern_c.seed);
      bool pass = worst <= calibration::kBernsteinC;
      std::cout << "worst sup / (R^(s/p) Lp) ratio " << fmt(worst)
                << " vs ceiling " << fmt(calibration::kBernsteinC) << ": "
                << (pass ? "PASS" : "FAIL") << '\n';
      all_pass &= pass;
    } else if (*sc_acc) {
      worker_count() = static_cast<int>(acc_c.workers);
      Config cfg{{"command", "acceptance"},
                 {"budget", acc_budget},
                 {"out", acc_out}};
      RunLog log("acceptance", cfg, acc_c.seed);
      suite::Options opt;
      opt.quick = acc_budget == "quick";
      opt.seed = acc_c.seed;
      opt.out_dir = acc_out;
      return suite::run_acceptance(opt);
    }

    return all_pass ? 0 : 1;
  } catch (const InvalidConfiguration& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 1;
  }
}
