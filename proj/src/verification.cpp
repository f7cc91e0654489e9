#include "kign/verification.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>

#include "kign/closed_form.hpp"
#include "kign/core_math.hpp"
#include "kign/errors.hpp"
#include "kign/mc.hpp"
#include "kign/pricing.hpp"
#include "kign/rng.hpp"

namespace kign {

namespace {

using boost::math::quadrature::gauss_kronrod;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double integrate(const std::function<double(double)>& f, double lo, double hi) {
  return gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-12);
}

class Battery {
 public:
  explicit Battery(std::string suite) : suite_(std::move(suite)) {}

  void add(const std::string& name, bool passed, std::string detail) {
    results_.push_back({suite_, name, passed, std::move(detail)});
  }

  // Runs body; an exception from the library is recorded as a failure.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, std::string("threw: ") + e.what());
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------- density

std::vector<CheckResult> density_suite(const VerifyOptions&) {
  Battery out("density");
  const std::vector<double> xs{-2.0, -0.5, 0.0, 0.5, 2.0};
  for (double t : {0.25, 1.0, 4.0}) {
    for (double level : {-1.0, 0.0, 0.7}) {
      const std::string tag = fmt("t=%g,level=%g", t, level);
      out.guarded("joint_law_" + tag, [&] {
        const auto d = check_joint_law(t, level, xs);
        const double mass_err = std::abs(d.total_mass - 1.0);
        out.add("mass_" + tag, mass_err <= 1e-6, fmt("|mass - 1| = %.2e (tol 1e-6)", mass_err));
        out.add("marginal_" + tag, d.marginal_error <= 1e-6,
                fmt("max marginal error %.2e (tol 1e-6)", d.marginal_error));
        const double atom_gap = std::abs(d.atom_mass - JointLaw(t, level).atom_mass());
        out.add("atom_mass_" + tag, atom_gap <= 1e-9, fmt("|quadrature - closed form| = %.2e (tol 1e-9)", atom_gap));
      });
    }
  }
  out.guarded("reflection_symmetry", [&] {
    double worst = 0.0;
    for (double t : {0.25, 1.0}) {
      for (double level : {-1.0, 0.3}) {
        const JointLaw law(t, level), mirror(t, -level);
        for (double x : {-1.5, -0.2, 0.0, 0.4, 2.0}) {
          worst = std::max(worst, std::abs(law.atom(x) - mirror.atom(-x)));
          for (double y : {0.1, 0.8}) worst = std::max(worst, std::abs(law.continuous(x, y) - mirror.continuous(-x, y)));
        }
      }
    }
    out.add("reflection_symmetry", worst == 0.0, fmt("max |f(x,l) - f(-x,-l)| = %.2e", worst));
  });
  out.guarded("sample_points", [&] {
    const double v = JointLaw(1.0, 0.0).continuous(0.0, 1.0);
    const double expect = kInvSqrt2Pi * std::exp(-0.5);
    out.add("continuous_t1_l0_x0_y1", std::abs(v - expect) <= 1e-15, fmt("%.17g vs %.17g", v, expect));
    const double a = JointLaw(1.0, 1.0).atom(0.0);
    const double ea = kInvSqrt2Pi * (1.0 - std::exp(-2.0));
    out.add("atom_t1_l1_x0", std::abs(a - ea) <= 1e-15, fmt("%.17g vs %.17g", a, ea));
  });
  return out.take();
}

// ------------------------------------------------------------------ signs

std::string scan_detail(const SignScan& s) {
  std::string d = fmt("%lld points, %lld violations, max |Z| at c = %.2e", static_cast<long long>(s.checked),
                      static_cast<long long>(s.violations), s.max_nodal);
  if (s.violations > 0) d += fmt(", first at t=%.6g h=%.6g", s.bad_t, s.bad_h);
  return d;
}

std::vector<CheckResult> signs_suite(const VerifyOptions& opts) {
  Battery out("signs");
  const int n = opts.quick ? 11 : 21;
  const KIgnoranceModel fig(0.1, 1.0);

  struct Family {
    std::string name;
    KIgnoranceModel model;
    TerminalPayoff payoff;
    double anchor;
    int n;
  };
  std::vector<Family> families{
      {"indicator", fig, TerminalPayoff::indicator(0.0, 1.0), 0.0, n},
      {"digital_low", fig, TerminalPayoff::digital_low(1.0), 1.0, n},
      {"digital_high", fig, TerminalPayoff::digital_high(0.0), 0.0, n},
      {"quadratic", KIgnoranceModel(0.5, 1.0), TerminalPayoff::quadratic(), 0.0, n},
      {"smooth_ramp", fig, smooth_ramp_indicator(0.0, 1.0, 0.1), 0.0, opts.quick ? 5 : 9},
  };
  for (const auto& f : families) {
    out.guarded("closed_form_" + f.name, [&] {
      const auto scan = scan_closed_form_signs(f.model, f.payoff, f.n, f.n, 2.0, f.anchor);
      const double nodal_tol = std::isfinite(f.payoff.center()) ? 1e-10 : INFINITY;
      out.add("closed_form_" + f.name, scan.violations == 0 && scan.max_nodal <= nodal_tol, scan_detail(scan));
    });
  }

  out.guarded("antisymmetry_indicator_Z", [&] {
    double worst = 0.0;
    for (double t : {0.0, 0.3, 0.9}) {
      for (double x : {0.05, 0.3, 1.1, 2.5}) {
        const double zp = indicator_Z(fig, t, 0.5 + x, 0.0, 1.0);
        const double zm = indicator_Z(fig, t, 0.5 - x, 0.0, 1.0);
        worst = std::max(worst, std::abs(zp + zm) / std::max(1e-300, std::abs(zp)));
      }
    }
    out.add("antisymmetry_indicator_Z", worst <= 1e-12, fmt("max relative |Z(c+x) + Z(c-x)| = %.2e", worst));
  });

  const int nx = opts.quick ? 1001 : 2001;
  const int nt = opts.quick ? 1000 : 4000;
  const int stride = opts.quick ? 50 : 100;
  out.guarded("pde_indicator", [&] {
    const Grid1D g = centered_grid(0.5, 1.0, 0.5, nx, nt);
    const auto phi = mollified_indicator(0.0, 1.0, g.dx() * g.dx());
    const auto sol = solve_k_ignorance(phi, 0.1, g, {stride});
    const auto scan = scan_pde_signs(sol, 0.5, -1.0, 0.05, 3.0);
    out.add("pde_indicator", scan.violations == 0 && scan.max_nodal <= 10.0 * g.dx(),
            scan_detail(scan) + fmt(" (nodal tol %.2e)", 10.0 * g.dx()));
  });
  out.guarded("pde_quadratic", [&] {
    const Grid1D g = centered_grid(0.0, 1.0, 1.0, nx, nt);
    const auto sol = solve_k_ignorance([](double x) { return x * x; }, 0.5, g, {stride});
    const auto scan = scan_pde_signs(sol, 0.0, 1.0, 0.05, 4.0);
    out.add("pde_quadratic", scan.violations == 0 && scan.max_nodal <= 10.0 * g.dx(),
            scan_detail(scan) + fmt(" (nodal tol %.2e)", 10.0 * g.dx()));
  });
  out.guarded("pde_generic_driver", [&] {
    const Grid1D g = centered_grid(0.0, 1.0, 1.0, nx, nt);
    const double k = 0.5;
    DriverSpec spec{[k](double, double, double z) { return k * z * z / (1.0 + std::abs(z)); }, k};
    const auto sol = solve_generic_symmetric_driver([](double x) { return x * x; }, spec, g, {stride});
    const auto scan = scan_pde_signs(sol, 0.0, 1.0, 0.05, 4.0);
    out.add("pde_generic_driver", scan.violations == 0, scan_detail(scan));
  });
  return out.take();
}

// ---------------------------------------------------------------- oracles

PathConfig path_config(const VerifyOptions& opts, std::int64_t full_paths, int full_steps) {
  PathConfig cfg;
  cfg.seed = opts.seed;
  cfg.n_paths = opts.quick ? std::min<std::int64_t>(full_paths, 20000) : full_paths;
  cfg.n_steps = opts.quick ? std::min(full_steps, 500) : full_steps;
  return cfg;
}

std::string mc_detail(const Estimate& e, double target) {
  return fmt("mc %.6f +- %.6f vs %.6f (%.2f se; %lld paths x %d steps)", e.mean, e.std_error, target,
             std::abs(e.mean - target) / e.std_error, static_cast<long long>(e.n_paths), e.n_steps);
}

std::vector<CheckResult> oracles_suite(const VerifyOptions& opts) {
  Battery out("oracles");
  const KIgnoranceModel fig(0.1, 1.0);
  const int nx = opts.quick ? 1001 : 2001;
  const int nt = opts.quick ? 1000 : 4000;

  out.guarded("indicator_vs_pde", [&] {
    const Grid1D g = centered_grid(0.5, 1.0, 0.5, nx, nt);
    const auto sol = solve_k_ignorance(mollified_indicator(0.0, 1.0, g.dx() * g.dx()), 0.1, g, {nt / 2});
    double worst = 0.0;
    for (double t : {0.0, 0.5}) {
      const int row = t == 0.0 ? 2 : 1;
      for (double h : {-0.5, 0.0, 0.25, 0.5, 0.75, 1.5}) {
        worst = std::max(worst, std::abs(sol.u_at(row, h) - indicator_Y(fig, t, h, 0.0, 1.0)));
      }
    }
    out.add("indicator_vs_pde", worst <= 1e-3, fmt("max |closed - pde| = %.3e (tol 1e-3; nx=%d nt=%d)", worst, nx, nt));
  });

  out.guarded("indicator_vs_mc", [&] {
    const auto cfg = path_config(opts, 200000, 2000);
    for (double h : {0.0, 0.5}) {
      const auto e = estimate_Y(fig, TerminalPayoff::indicator(0.0, 1.0), 0.0, h, cfg);
      const double cf = indicator_Y(fig, 0.0, h, 0.0, 1.0);
      out.add(fmt("indicator_vs_mc_h=%g", h), std::abs(e.mean - cf) <= 3.0 * e.std_error, mc_detail(e, cf));
    }
  });

  out.guarded("k0_exactness", [&] {
    const KIgnoranceModel heat(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 21; ++i) {
      const double t = i / 21.0;
      for (int j = 0; j < 21; ++j) {
        const double h = -1.5 + 0.2 * j;
        const double tau = 1.0 - t;
        const double ref = normal_cdf((1.0 - h) / std::sqrt(tau)) - normal_cdf((0.0 - h) / std::sqrt(tau));
        worst = std::max(worst, std::abs(indicator_Y(heat, t, h, 0.0, 1.0) - ref));
      }
    }
    out.add("k0_exactness", worst <= 1e-12, fmt("max deviation %.2e (tol 1e-12)", worst));
  });

  out.guarded("indicator_Z_vs_difference", [&] {
    const double step = 1e-5;
    const double fd = (indicator_Y(fig, 0.5, 0.8 + step, 0.0, 1.0) - indicator_Y(fig, 0.5, 0.8 - step, 0.0, 1.0)) /
                      (2.0 * step);
    const double z = indicator_Z(fig, 0.5, 0.8, 0.0, 1.0);
    const double rel = std::abs(z - fd) / std::abs(z);
    out.add("indicator_Z_vs_difference", rel <= 1e-6, fmt("relative gap %.2e (tol 1e-6)", rel));
  });

  // Quadratic data: the first-order upwind error is O(k dx), so the PDE value
  // is extrapolated from the grid and its dx/2, dt/4 refinement.
  out.guarded("quadratic_vs_pde", [&] {
    const Grid1D g = centered_grid(0.0, 1.0, 1.0, nx, nt);
    for (double k : {0.25, 0.5, 1.0}) {
      const KIgnoranceModel m(k, 1.0);
      double worst = 0.0, worst_z = 0.0;
      for (const auto& p : k_ignorance_extrapolated([](double x) { return x * x; }, k, g, {0.0, 0.5, 1.0})) {
        worst = std::max(worst, std::abs(p.u - quadratic_Y(m, 0.0, p.x)));
        worst_z = std::max(worst_z, std::abs(p.w - quadratic_Z(m, 0.0, p.x)));
      }
      out.add(fmt("quadratic_vs_pde_k=%g", k), worst <= 2e-3 && worst_z <= 2e-3,
              fmt("max |Y - pde| = %.3e, max |Z - pde w| = %.3e (tol 2e-3)", worst, worst_z));
    }
  });

  out.guarded("quadratic_printed_deviation", [&] {
    // The uncorrected expressions agree with the oracles only at h = 0; the
    // deviation elsewhere is tabulated in docs/formula_errata.csv.
    const KIgnoranceModel m(0.5, 1.0);
    const double at0 = std::abs(quadratic_Y_printed(m, 0.0, 0.0) - quadratic_Y(m, 0.0, 0.0));
    const double at05 = std::abs(quadratic_Y_printed(m, 0.0, 0.5) - quadratic_Y(m, 0.0, 0.5));
    out.add("quadratic_printed_deviation", at0 <= 1e-12 && at05 > 2e-3,
            fmt("printed - verified: %.2e at h=0, %.4f at h=0.5 (errata)", at0, at05));
  });

  out.guarded("quadratic_Z_vs_difference", [&] {
    const KIgnoranceModel m(0.5, 1.0);
    const double step = 1e-5;
    const double fd = (quadratic_Y(m, 0.3, 0.7 + step) - quadratic_Y(m, 0.3, 0.7 - step)) / (2.0 * step);
    const double z = quadratic_Z(m, 0.3, 0.7);
    const double rel = std::abs(z - fd) / std::abs(z);
    out.add("quadratic_Z_vs_difference", rel <= 1e-5, fmt("relative gap %.2e (tol 1e-5)", rel));
  });

  out.guarded("quadratic_vs_mc", [&] {
    const auto cfg = path_config(opts, 200000, 2000);
    const KIgnoranceModel m(0.5, 1.0);
    const auto e = estimate_Y(m, TerminalPayoff::quadratic(), 0.0, 0.0, cfg);
    const double cf = quadratic_Y(m, 0.0, 0.0);
    out.add("quadratic_vs_mc", std::abs(e.mean - cf) <= 3.0 * e.std_error, mc_detail(e, cf));
  });

  out.guarded("pde_equivalence", [&] {
    const Grid1D g = centered_grid(0.0, 1.0, 1.0, nx, nt);
    const auto sq = [](double x) { return x * x; };
    const auto a = solve_k_ignorance(sq, 0.5, g, {g.nt()});
    const auto b = solve_sign_drift(sq, 0.5, 0.0, +1, g, {g.nt()});
    double worst = 0.0;
    for (int j = 0; j < g.nx(); ++j) worst = std::max(worst, std::abs(a.u_row(1)[j] - b.u_row(1)[j]));
    out.add("pde_equivalence", worst <= 2e-3, fmt("sup |k-ignorance - sign drift| = %.3e (tol 2e-3)", worst));
  });

  out.guarded("sign_drift_closed_form", [&] {
    // v(s, x) at s = 0.5, x = 0.7, k = 0.3
    const Grid1D g = centered_grid(0.0, 0.5, 1.0, nx, nt);
    const Grid1D f = g.refined(2, 4);
    const auto sq = [](double x) { return x * x; };
    const auto coarse = solve_sign_drift(sq, 0.3, 0.0, +1, g, {g.nt()});
    const auto fine = solve_sign_drift(sq, 0.3, 0.0, +1, f, {f.nt()});
    const double pde = 2.0 * fine.u_at(1, 0.7) - coarse.u_at(1, 0.7);
    const double v = sign_drift_quadratic(0.3, 0.5, 0.7);
    const double printed = sign_drift_quadratic_printed(0.3, 0.5, 0.7, 1.0);
    out.add("sign_drift_closed_form", std::abs(pde - v) <= 2e-3,
            fmt("closed %.6f, pde %.6f, gap %.2e (tol 2e-3); printed form with T=1 gives %.6f (errata)", v, pde,
                std::abs(pde - v), printed));
  });

  out.guarded("general_H", [&] {
    const auto ramp = smooth_ramp_indicator(0.0, 1.0, 0.05);
    const double h_ramp = general_H(fig, ramp, 0.0, 0.0);
    const double gap = std::abs(h_ramp - indicator_Y(fig, 0.0, 0.0, 0.0, 1.0));
    out.add("general_H_ramp_vs_indicator", gap <= 5e-3, fmt("gap %.3e (tol 5e-3)", gap));
    const double z_ramp = general_Z(fig, ramp, 0.0, 0.0);
    const double zgap = std::abs(z_ramp - indicator_Z(fig, 0.0, 0.0, 0.0, 1.0));
    out.add("general_Z_ramp_vs_indicator", zgap <= 5e-3, fmt("gap %.3e (tol 5e-3)", zgap));
    const KIgnoranceModel m(0.5, 1.0);
    const auto quad = TerminalPayoff::general([](double x) { return x * x; }, [](double x) { return 2.0 * x; }, 0.0,
                                              Monotonicity::IncreasingOnRightHalf);
    const double qgap = std::abs(general_H(m, quad, 0.0, 0.5) - quadratic_Y(m, 0.0, 0.5));
    out.add("general_H_quadratic", qgap <= 1e-4, fmt("gap %.3e (tol 1e-4)", qgap));
    const double y0gap = std::abs(general_H(m, quad, 0.0, 0.0) - y0_integral(m, quad));
    out.add("general_H_matches_y0_integral", y0gap <= 1e-12, fmt("gap %.2e", y0gap));
  });

  out.guarded("tanaka", [&] {
    PathConfig cfg;
    cfg.seed = opts.seed;
    cfg.n_paths = opts.quick ? 20000 : 100000;
    cfg.n_steps = opts.quick ? 1000 : 10000;
    std::vector<double> lt(static_cast<std::size_t>(cfg.n_paths));
    double identity = 0.0;
    for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
      const auto path = simulate_path(cfg, 0.0, static_cast<std::uint64_t>(i));
      const auto terms = tanaka_terms(path, 0.0);
      lt[i] = terms.local_time;
      const double lhs = std::abs(path.back()) - std::abs(path.front());
      identity = std::max(identity, std::abs(lhs - (terms.ito_sum + terms.local_time)) /
                                        std::max(1.0, std::abs(lhs)));
    }
    const auto e = summarize(lt, cfg.n_steps);
    const double target = std::sqrt(2.0 / M_PI);
    out.add("tanaka_mean_local_time", std::abs(e.mean - target) <= 3.0 * e.std_error, mc_detail(e, target));
    out.add("tanaka_identity", identity <= 4.0 * std::numeric_limits<double>::epsilon(),
            fmt("max relative residual %.2e", identity));
  });

  out.guarded("stopped_representation", [&] {
    const KIgnoranceModel m(0.5, 1.0);
    const auto cfg = path_config(opts, 200000, 2000);
    const auto e = estimate_w(m, TerminalPayoff::quadratic(), 0.0, 0.8, cfg);
    const double cf = quadratic_Z(m, 0.0, 0.8);
    out.add("stopped_representation_x=0.8", std::abs(e.mean - cf) <= 3.0 * e.std_error, mc_detail(e, cf));
    const auto at_c = estimate_w(m, TerminalPayoff::quadratic(), 0.0, 0.0, cfg);
    out.add("stopped_representation_at_center", at_c.mean == 0.0, fmt("mean %.3g", at_c.mean));
  });

  out.guarded("mc_determinism", [&] {
    PathConfig cfg;
    cfg.seed = opts.seed;
    cfg.n_paths = 2000;
    cfg.n_steps = 200;
    const auto payoff = TerminalPayoff::indicator(0.0, 1.0);
    const auto a = estimate_Y(fig, payoff, 0.0, 0.3, cfg);
    const auto b = reference::estimate_Y(fig, payoff, 0.0, 0.3, cfg);
    const auto q = TerminalPayoff::quadratic();
    const auto c = estimate_w(fig, q, 0.0, 0.4, cfg);
    const auto d = reference::estimate_w(fig, q, 0.0, 0.4, cfg);
    const bool same = a.mean == b.mean && a.std_error == b.std_error && c.mean == d.mean && c.std_error == d.std_error;
    out.add("parallel_matches_serial_reference", same, same ? "bitwise equal" : "estimates differ");
  });
  return out.take();
}

// ---------------------------------------------------------------- pricing

std::vector<CheckResult> pricing_suite(const VerifyOptions& opts) {
  Battery out("pricing");
  const MarketModel market{0.05, 0.2, 0.03};
  const std::vector<CorridorClaim> claims{{0.9, 1.1, 1.0}, {0.8, 1.25, 1.0}, {1.0, 1.5, 2.0}};
  const std::vector<double> ks{0.0, 0.05, 0.1, 0.2, 0.4};

  // upper delegates to the indicator solution (built from b_B - a_B) while
  // lower follows the ln(b/a) / sigma form, so at k = 0 they agree to rounding.
  const double slack = 1e-15;
  out.guarded("bracket_and_monotonicity", [&] {
    int bad = 0, checked = 0;
    for (const auto& claim : claims) {
      double prev_up = -1.0, prev_low = 2.0;
      const double mid = upper_price(claim, market, 0.0, 0.0, 0.0);
      for (double k : ks) {
        const double up = upper_price(claim, market, k, 0.0, 0.0);
        const double low = lower_price(claim, market, k, 0.0, 0.0);
        ++checked;
        if (!(0.0 <= low && low <= mid + slack && mid <= up + slack && up <= 1.0)) ++bad;
        if (up < prev_up - slack || low > prev_low + slack) ++bad;
        prev_up = up;
        prev_low = low;
      }
    }
    out.add("bracket_and_monotonicity", bad == 0, fmt("%d quotes, %d violations", checked, bad));
  });

  out.guarded("t0_specializations", [&] {
    double worst = 0.0;
    bool lower_bitwise = true;
    for (const auto& claim : claims) {
      for (double k : ks) {
        worst = std::max(worst, std::abs(upper_price_t0(claim, market, k) - upper_price(claim, market, k, 0.0, 0.0)));
        worst = std::max(worst, std::abs(lower_price_t0(claim, market, k) - lower_price(claim, market, k, 0.0, 0.0)));
        lower_bitwise = lower_bitwise && lower_price_t0(claim, market, k) == lower_price(claim, market, k, 0.0, 0.0);
      }
    }
    out.add("t0_specializations", worst <= 1e-14 && lower_bitwise,
            fmt("max gap %.2e (tol 1e-14), lower bitwise: %s", worst, lower_bitwise ? "yes" : "no"));
  });

  out.guarded("center_identity", [&] {
    const CorridorClaim claim{1.0, std::exp(0.2), 1.0};
    const MarketModel m{0.05, 0.2, 0.0};
    const double gap = std::abs(map_claim_to_bm(claim, m).c - corridor_center_direct(claim, m));
    out.add("center_identity", gap <= 1e-14, fmt("gap %.2e (tol 1e-14)", gap));
  });

  out.guarded("k0_collapse", [&] {
    const CorridorClaim claim{0.9, 1.1, 1.0};
    const double up = upper_price(claim, market, 0.0, 0.3, 0.1);
    const double low = lower_price(claim, market, 0.0, 0.3, 0.1);
    out.add("k0_collapse", std::abs(up - low) <= slack, fmt("upper %.17g lower %.17g (tol 1e-15)", up, low));
  });

  out.guarded("reflection", [&] {
    const CorridorClaim claim{0.9, 1.1, 1.0};
    const double c = map_claim_to_bm(claim, market).c;
    const double a = upper_price(claim, market, 0.1, 0.2, c + 0.3);
    const double b = upper_price(claim, market, 0.1, 0.2, c - 0.3);
    out.add("reflection", std::abs(a - b) <= 1e-15, fmt("gap %.2e", std::abs(a - b)));
  });

  out.guarded("upper_vs_pde", [&] {
    const CorridorClaim claim{0.9, 1.1, 1.0};
    const MarketModel m{0.05, 0.2, 0.05};
    const auto bm = map_claim_to_bm(claim, m);
    const int nx = opts.quick ? 1001 : 2001;
    const int nt = opts.quick ? 1000 : 4000;
    const Grid1D g = centered_grid(bm.c, claim.T, 0.5 * (bm.b_B - bm.a_B), nx, nt);
    const auto sol = solve_k_ignorance(mollified_indicator(bm.a_B, bm.b_B, g.dx() * g.dx()), 0.1, g, {g.nt()});
    const double pde = sol.u_at(1, 0.0);
    const double up = upper_price(claim, m, 0.1, 0.0, 0.0);
    out.add("upper_vs_pde", std::abs(pde - up) <= 1e-3,
            fmt("upper %.6f, pde %.6f, gap %.2e (tol 1e-3)", up, pde, std::abs(pde - up)));
  });

  out.guarded("bs_reference_vs_mc", [&] {
    // Only the r = mu slice has an independent risk-neutral oracle.
    const CorridorClaim claim{0.9, 1.1, 1.0};
    const MarketModel m{0.05, 0.2, 0.05};
    const std::int64_t n = opts.quick ? 200000 : 1000000;
    std::vector<double> v(static_cast<std::size_t>(n));
    const double drift = (m.r - 0.5 * m.sigma * m.sigma) * claim.T;
    const double vol = m.sigma * std::sqrt(claim.T);
    for (std::int64_t i = 0; i < n; ++i) {
      NormalStream normal(opts.seed, static_cast<std::uint64_t>(i));
      const double s_T = std::exp(drift + vol * normal());
      v[i] = (claim.a <= s_T && s_T <= claim.b) ? std::exp(-m.r * claim.T) : 0.0;
    }
    const auto e = summarize(v, 1);
    const double ref = bs_reference_digital(claim, m);
    out.add("bs_reference_vs_mc", std::abs(e.mean - ref) <= 3.0 * e.std_error, mc_detail(e, ref));
  });
  return out.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"density", "signs", "oracles", "pricing", "all"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
  using Runner = std::vector<CheckResult> (*)(const VerifyOptions&);
  static const std::vector<std::pair<std::string, Runner>> runners{
      {"density", density_suite}, {"signs", signs_suite}, {"oracles", oracles_suite}, {"pricing", pricing_suite}};
  std::vector<CheckResult> all;
  bool found = false;
  for (const auto& [name, run] : runners) {
    if (suite != "all" && suite != name) continue;
    found = true;
    auto part = run(opts);
    all.insert(all.end(), part.begin(), part.end());
  }
  if (!found) throw ConfigError("unknown suite '" + suite + "'");
  return all;
}

bool print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  int failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << '/' << r.name << ": " << r.detail << '\n';
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0;
}

DensityCheck check_joint_law(double t, double level, const std::vector<double>& xs) {
  const JointLaw law(t, level);
  const double st = std::sqrt(t);
  const double x_lo = -10.0 * st, x_hi = 10.0 * st, y_hi = 12.0 * st;
  // |x - level| kinks at x = level
  auto split = [&](const std::function<double(double)>& f) {
    if (level > x_lo && level < x_hi) return integrate(f, x_lo, level) + integrate(f, level, x_hi);
    return integrate(f, x_lo, x_hi);
  };
  auto y_integral = [&](double x) { return integrate([&](double y) { return law.continuous(x, y); }, 0.0, y_hi); };
  DensityCheck d{};
  d.continuous_mass = split(y_integral);
  d.atom_mass = split([&](double x) { return law.atom(x); });
  d.total_mass = d.continuous_mass + d.atom_mass;
  for (double x : xs) {
    const double marginal = y_integral(x) + law.atom(x);
    d.marginal_error = std::max(d.marginal_error, std::abs(marginal - normal_pdf(x / st) / st));
  }
  return d;
}

SignScan scan_closed_form_signs(const KIgnoranceModel& model, const TerminalPayoff& payoff, int nt, int nh,
                                double half_width, double anchor) {
  const double c = payoff.center();
  const double mid = std::isfinite(c) ? c : anchor;
  const double dir = direction_sign(payoff.direction());
  SignScan s;
  for (int i = 0; i < nt; ++i) {
    const double t = model.T() * i / nt;
    for (int j = 0; j < nh; ++j) {
      const double h = nh == 1 ? mid : mid - half_width + 2.0 * half_width * j / (nh - 1);
      const double z = solve(model, payoff, t, h).z;
      ++s.checked;
      const double side = sgn(h - c);
      bool ok;
      if (side == 0.0) {
        s.max_nodal = std::max(s.max_nodal, std::abs(z));
        ok = true;
      } else {
        ok = sgn(z) == dir * side;
      }
      if (!ok && s.violations++ == 0) {
        s.bad_t = t;
        s.bad_h = h;
      }
    }
  }
  return s;
}

SignScan scan_pde_signs(const PdeSolution& sol, double c, double direction, double min_time, double max_offset) {
  const Grid1D& g = sol.grid();
  SignScan s;
  const int jc = sol.nearest(c);
  for (int row = 0; row < sol.rows(); ++row) {
    if (sol.time(row) < min_time) continue;
    const auto w = sol.w_row(row);
    s.max_nodal = std::max(s.max_nodal, std::abs(w[jc]));
    for (int j = 1; j + 1 < g.nx(); ++j) {
      const double off = g.x(j) - c;
      if (std::abs(off) <= 2.0 * g.dx() || std::abs(off) > max_offset) continue;
      ++s.checked;
      if (sgn(w[j]) != direction * sgn(off) && s.violations++ == 0) {
        s.bad_t = sol.time(row);
        s.bad_h = g.x(j);
      }
    }
  }
  return s;
}

}  // namespace kign
