// Acceptance run: one PASS/FAIL line per criterion, with the measured values
// and tolerances underneath. Exit status is the number of failed criteria.
//
// usage: acceptance <path to kignorance CLI> [criterion numbers to run]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kign/closed_form.hpp"
#include "kign/core_math.hpp"
#include "kign/mc.hpp"
#include "kign/pde.hpp"
#include "kign/pricing.hpp"
#include "kign/verification.hpp"

using namespace kign;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

class Criterion {
 public:
  void check(bool ok, const std::string& detail) {
    passed_ = passed_ && ok;
    lines_.push_back(std::string(ok ? "    ok   " : "    FAIL ") + detail);
  }
  bool passed() const { return passed_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  bool passed_ = true;
  std::vector<std::string> lines_;
};

PathConfig full_paths() { return PathConfig{}; }  // 2e5 paths, 2e3 steps, seed 20240601

// ---------------------------------------------------------------- 1

void indicator_triple(Criterion& c) {
  const KIgnoranceModel m(0.1, 1.0);
  const auto payoff = TerminalPayoff::indicator(0.0, 1.0);
  const std::vector<double> hs{-0.5, 0.0, 0.25, 0.5, 0.75, 1.5};

  const auto start = Clock::now();
  const Grid1D g = centered_grid(0.5, 1.0, 0.5, 2001, 4000);
  const auto sol = solve_k_ignorance(mollified_indicator(0.0, 1.0, g.dx() * g.dx()), 0.1, g, {2000});
  const double pde_time = seconds_since(start);
  c.check(pde_time < 5.0, fmt("PDE nx=2001 nt=4000 solve %.2f s (limit 5 s)", pde_time));

  for (double t : {0.0, 0.5}) {
    const int row = t == 0.0 ? 2 : 1;  // stored PDE times 0, 0.5, 1
    for (double h : hs) {
      const double cf = indicator_Y(m, t, h, 0.0, 1.0);
      const double pde = sol.u_at(row, h);
      c.check(std::abs(cf - pde) <= 1e-3, fmt("t=%g h=%g |cf - pde| = %.2e (tol 1e-3)", t, h, std::abs(cf - pde)));
      const auto mc_start = Clock::now();
      const auto e = estimate_Y(m, payoff, t, h, full_paths());
      const double mc_time = seconds_since(mc_start);
      const double z = (e.mean - cf) / e.std_error;
      c.check(std::abs(z) <= 3.0 && mc_time < 10.0,
              fmt("t=%g h=%g mc %.6f +- %.6f vs cf %.6f (%.2f SE, tol 3); %.2f s (limit 10 s)", t, h, e.mean,
                  e.std_error, cf, z, mc_time));
    }
  }
}

// ---------------------------------------------------------------- 2

struct ErrataRow {
  double printed_y, verified_y, pde_y, printed_z, verified_z, pde_w, deviation_y, deviation_z;
};

std::map<std::pair<double, double>, ErrataRow> read_errata(const std::string& path) {
  std::ifstream in(path);
  std::map<std::pair<double, double>, ErrataRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::map<std::string, double> v;
    for (const auto& name : header) {
      if (!std::getline(ls, cell, ',')) break;
      v[name] = std::stod(cell);
    }
    rows[{v["k"], v["h"]}] = {v["printed_Y"], v["verified_Y"], v["pde_Y"], v["printed_Z"],
                              v["verified_Z"], v["pde_w"],     v["deviation_Y"], v["deviation_Z"]};
  }
  return rows;
}

void quadratic_triple(Criterion& c) {
  const auto errata = read_errata(KIGN_SOURCE_DIR "/docs/formula_errata.csv");
  c.check(errata.size() >= 9, fmt("errata file has %zu rows", errata.size()));
  const auto payoff = TerminalPayoff::quadratic();
  const std::vector<double> hs{0.0, 0.5, 1.0};
  for (double k : {0.25, 0.5, 1.0}) {
    const KIgnoranceModel m(k, 1.0);
    const auto pde = k_ignorance_extrapolated([](double x) { return x * x; }, k, centered_grid(0.0, 1.0, 1.0), hs);
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const double h = hs[i];
      const auto e = estimate_Y(m, payoff, 0.0, h, full_paths());
      const double z = (e.mean - pde[i].u) / e.std_error;
      c.check(std::abs(z) <= 3.0, fmt("k=%g h=%g pde %.6f vs mc %.6f +- %.6f (%.2f SE, tol 3)", k, h, pde[i].u, e.mean,
                                      e.std_error, z));

      const double py = quadratic_Y_printed(m, 0.0, h), pz = quadratic_Z_printed(m, 0.0, h);
      const bool y_matches = std::abs(py - pde[i].u) <= 2e-3 && std::abs(py - e.mean) <= 2e-3;
      const bool z_matches = std::abs(pz - pde[i].w) <= 2e-3;
      if (y_matches && z_matches) {
        c.check(true, fmt("k=%g h=%g printed Y and Z match the oracles within 2e-3", k, h));
        continue;
      }
      const auto it = errata.find({k, h});
      const bool recorded = it != errata.end() && it->second.printed_y == py && it->second.printed_z == pz &&
                            std::abs(it->second.pde_y - pde[i].u) <= 1e-9 &&
                            std::abs(it->second.pde_w - pde[i].w) <= 1e-9 &&
                            std::abs(it->second.deviation_y - (py - it->second.pde_y)) <= 1e-12 &&
                            std::abs(it->second.deviation_z - (pz - it->second.pde_w)) <= 1e-12;
      c.check(recorded, fmt("k=%g h=%g printed Y %.6f Z %.6f vs oracle Y %.6f w %.6f: recorded in errata (dY %.3e, dZ %.3e)",
                            k, h, py, pz, pde[i].u, pde[i].w, py - pde[i].u, pz - pde[i].w));
      // the corrected forms carried by the errata must themselves match the oracle
      const double vy = quadratic_Y(m, 0.0, h), vz = quadratic_Z(m, 0.0, h);
      c.check(std::abs(vy - pde[i].u) <= 2e-3 && std::abs(vz - pde[i].w) <= 2e-3,
              fmt("k=%g h=%g corrected Y %.6f Z %.6f within 2e-3 of the PDE oracle", k, h, vy, vz));
    }
  }
}

// ---------------------------------------------------------------- 3

void k0_exactness(Criterion& c) {
  const KIgnoranceModel heat(0.0, 1.0);
  double worst = 0.0;
  for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-1.0, 1.0}, std::pair{0.3, 2.5}}) {
    for (int i = 0; i < 21; ++i) {
      for (int j = 0; j < 21; ++j) {
        const double t = i / 21.0, h = -2.0 + 5.0 * j / 20.0, s = std::sqrt(1.0 - t);
        const double expect = normal_cdf((b - h) / s) - normal_cdf((a - h) / s);
        worst = std::max(worst, std::abs(indicator_Y(heat, t, h, a, b) - expect));
      }
    }
  }
  c.check(worst <= 1e-12, fmt("max deviation over 3 x 21 x 21 points %.2e (tol 1e-12)", worst));
}

// ---------------------------------------------------------------- 4

void sign_laws(Criterion& c) {
  const KIgnoranceModel fig(0.1, 1.0);
  struct Case {
    const char* name;
    KIgnoranceModel model;
    TerminalPayoff payoff;
    double anchor;
  };
  const std::vector<Case> cases{
      {"indicator", fig, TerminalPayoff::indicator(0.0, 1.0), 0.0},
      {"digital_low", fig, TerminalPayoff::digital_low(1.0), 1.0},
      {"digital_high", fig, TerminalPayoff::digital_high(0.0), 0.0},
      {"quadratic", KIgnoranceModel(0.5, 1.0), TerminalPayoff::quadratic(), 0.0},
      {"smooth_ramp", fig, smooth_ramp_indicator(0.0, 1.0, 0.1), 0.0},
  };
  for (const auto& k : cases) {
    const auto s = scan_closed_form_signs(k.model, k.payoff, 21, 21, 2.0, k.anchor);
    const bool finite_center = std::isfinite(k.payoff.center());
    c.check(s.violations == 0 && (!finite_center || s.max_nodal <= 1e-10),
            fmt("%s: %lld points, %lld violations, max |Z(t,c)| %.2e (tol 1e-10)%s", k.name,
                static_cast<long long>(s.checked), static_cast<long long>(s.violations), s.max_nodal,
                finite_center ? "" : ", center at infinity"));
  }

  const Grid1D gi = centered_grid(0.5, 1.0, 0.5);
  const auto ind = solve_k_ignorance(mollified_indicator(0.0, 1.0, gi.dx() * gi.dx()), 0.1, gi, {40});
  const auto si = scan_pde_signs(ind, 0.5, -1.0, 0.05, 3.0);
  c.check(si.violations == 0, fmt("PDE w indicator: %lld nodes, %lld violations", static_cast<long long>(si.checked),
                                  static_cast<long long>(si.violations)));
  const Grid1D gq = centered_grid(0.0, 1.0, 1.0);
  const auto quad = solve_k_ignorance([](double x) { return x * x; }, 0.5, gq, {40});
  const auto sq = scan_pde_signs(quad, 0.0, 1.0, 0.05, 4.0);
  c.check(sq.violations == 0, fmt("PDE w quadratic: %lld nodes, %lld violations", static_cast<long long>(sq.checked),
                                  static_cast<long long>(sq.violations)));
}

// ---------------------------------------------------------------- 5

void joint_law(Criterion& c) {
  const auto start = Clock::now();
  const std::vector<double> xs{-2.0, -0.5, 0.0, 0.5, 2.0};
  for (auto [t, level] : {std::pair{0.25, -1.0}, std::pair{1.0, 0.0}, std::pair{4.0, 0.7}}) {
    const auto d = check_joint_law(t, level, xs);
    c.check(std::abs(d.total_mass - 1.0) <= 1e-6 && d.marginal_error <= 1e-6,
            fmt("t=%g level=%g |mass - 1| = %.2e, marginal error %.2e (tol 1e-6)", t, level,
                std::abs(d.total_mass - 1.0), d.marginal_error));
  }
  const double elapsed = seconds_since(start);
  c.check(elapsed < 2.0, fmt("runtime %.3f s (limit 2 s)", elapsed));
}

// ---------------------------------------------------------------- 6

void pde_equivalence(Criterion& c) {
  const auto sq = [](double x) { return x * x; };
  const Grid1D g = centered_grid(0.0, 1.0, 1.0);
  const auto a = solve_k_ignorance(sq, 0.5, g);
  const auto b = solve_sign_drift(sq, 0.5, 0.0, +1, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.u().size(); ++i) worst = std::max(worst, std::abs(a.u()[i] - b.u()[i]));
  c.check(worst <= 2e-3, fmt("sup over all nodes and levels %.2e (tol 2e-3)", worst));
}

// ---------------------------------------------------------------- 7

void tanaka(Criterion& c) {
  PathConfig cfg;
  cfg.n_paths = 100000;
  cfg.n_steps = 10000;
  std::vector<double> local(static_cast<std::size_t>(cfg.n_paths));
  double worst_identity = 0.0;
  for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
    const auto path = simulate_path(cfg, 0.0, static_cast<std::uint64_t>(i));
    const auto terms = tanaka_terms(path, 0.0);
    local[i] = terms.local_time;
    const double scale = std::max({1.0, std::abs(terms.ito_sum), std::abs(path.back()), terms.local_time});
    const double gap = std::abs(std::abs(path.back()) - (terms.ito_sum + terms.local_time)) / scale;
    worst_identity = std::max(worst_identity, gap);
  }
  const auto e = summarize(local, cfg.n_steps);
  const double target = std::sqrt(2.0 / M_PI);
  const double z = (e.mean - target) / e.std_error;
  c.check(std::abs(z) <= 3.0,
          fmt("E[L_1^0] %.6f +- %.6f vs %.6f (%.2f SE, tol 3)", e.mean, e.std_error, target, z));
  c.check(worst_identity <= 4.0 * 2.220446049250313e-16,
          fmt("per-path identity, max relative gap %.2e (tol 4 eps)", worst_identity));
}

// ---------------------------------------------------------------- 8

void robust_pricing(Criterion& c) {
  const MarketModel market{0.05, 0.2, 0.0};
  const std::vector<CorridorClaim> claims{{0.9, 1.1, 1.0}, {0.8, 1.0, 1.0}, {1.0, 1.3, 2.0}};
  const std::vector<double> ks{0.0, 0.05, 0.1, 0.2, 0.5};
  int bracket_bad = 0;
  double t0_worst = 0.0;
  for (const auto& claim : claims) {
    for (double k : ks) {
      const auto q = quote(claim, market, k);
      // equality at k = 0 is evaluated along two arithmetic routes
      if (!(q.lower >= 0.0 && q.upper <= 1.0 && q.lower <= q.upper + 1e-15)) ++bracket_bad;
      t0_worst = std::max(t0_worst, std::abs(upper_price_t0(claim, market, k) - q.upper));
      t0_worst = std::max(t0_worst, std::abs(lower_price_t0(claim, market, k) - q.lower));
    }
  }
  c.check(bracket_bad == 0, fmt("0 <= lower <= upper <= 1 on 3 claims x 5 k: %d violations", bracket_bad));
  c.check(t0_worst <= 1e-14, fmt("t=0 forms vs general forms %.2e (tol 1e-14)", t0_worst));
  // Oracle: the mapped indicator problem, Richardson-extrapolated like the
  // quadratic oracle; the default-grid value is reported alongside.
  for (const auto& claim : claims) {
    const auto bm = map_claim_to_bm(claim, market);
    const Grid1D g = centered_grid(bm.c, claim.T, 0.5 * (bm.b_B - bm.a_B));
    const auto phi = mollified_indicator(bm.a_B, bm.b_B, g.dx() * g.dx());
    for (double k : ks) {
      const auto pde = k_ignorance_extrapolated(phi, k, g, {0.0}).front();
      const double up = upper_price(claim, market, k, 0.0, 0.0);
      c.check(std::abs(up - pde.u) <= 1e-3,
              fmt("claim [%g, %g] T=%g k=%g upper %.6f vs PDE %.6f, diff %.1e (tol 1e-3; default grid alone %.1e)",
                  claim.a, claim.b, claim.T, k, up, pde.u, std::abs(up - pde.u), std::abs(up - pde.u_coarse)));
    }
  }
}

// ---------------------------------------------------------------- 9

void stopped_representation(Criterion& c) {
  const KIgnoranceModel m(0.5, 1.0);
  const auto payoff = TerminalPayoff::quadratic();
  const std::vector<double> xs{0.4, 0.8};
  const auto pde = k_ignorance_extrapolated([](double x) { return x * x; }, 0.5, centered_grid(0.0, 1.0, 1.0), xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double cf = quadratic_Z(m, 0.0, x);
    const auto e = estimate_w(m, payoff, 0.0, x, full_paths());
    const double z_cf = (e.mean - cf) / e.std_error, z_pde = (e.mean - pde[i].w) / e.std_error;
    c.check(std::abs(z_cf) <= 3.0 && std::abs(z_pde) <= 3.0,
            fmt("x=%g w %.6f +- %.6f vs Z %.6f (%.2f SE), PDE w %.6f (%.2f SE), tol 3", x, e.mean, e.std_error, cf,
                z_cf, pde[i].w, z_pde));
    // same paths at 2e3 and 8e3 steps, unstopped part as control variate
    const auto r = estimate_w_refinement(m, payoff, 0.0, x, full_paths(), 4, WVariance::StoppedPartOnly);
    const double before = std::abs(r.coarse.mean - cf), after = std::abs(r.fine.mean - cf);
    c.check(after < before, fmt("x=%g 2e3 steps %.6f (off %.2e) -> 8e3 steps %.6f (off %.2e), shift %.2e +- %.1e", x,
                                r.coarse.mean, before, r.fine.mean, after, r.shift.mean, r.shift.std_error));
  }
}

// ---------------------------------------------------------------- 10

struct Captured {
  int code;
  std::string out;
  double seconds;
};

Captured capture(const std::string& cli, const std::string& args) {
  const auto start = Clock::now();
  const std::string cmd = "OMP_NUM_THREADS=1 \"" + cli + "\" " + args;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "", 0.0};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, seconds_since(start)};
}

void cli_determinism(Criterion& c, const std::string& cli) {
  for (const char* args : {"path-demo --format csv --seed 20240601", "path-demo --seed 7 --k 0.3 --steps 500"}) {
    const auto a = capture(cli, args), b = capture(cli, args);
    c.check(a.code == 0 && b.code == 0 && a.out == b.out && !a.out.empty(),
            fmt("`%s`: exit %d/%d, %zu bytes, identical=%s", args, a.code, b.code, a.out.size(),
                a.out == b.out ? "yes" : "no"));
  }
  const auto a = capture(cli, "verify --suite all --quick");
  const auto b = capture(cli, "verify --suite all --quick");
  c.check(a.code == 0 && b.code == 0 && a.out == b.out,
          fmt("`verify --suite all --quick`: exit %d/%d, %zu bytes, identical=%s", a.code, b.code, a.out.size(),
              a.out == b.out ? "yes" : "no"));
  c.check(std::max(a.seconds, b.seconds) < 120.0,
          fmt("quick suite single thread %.1f s / %.1f s (limit 120 s)", a.seconds, b.seconds));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <kignorance CLI> [criterion numbers]\n";
    return 2;
  }
  const std::string cli = argv[1];
  std::vector<std::size_t> selected;
  for (int i = 2; i < argc; ++i) selected.push_back(std::stoul(argv[i]));
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"indicator: closed form vs PDE and Monte Carlo", indicator_triple},
      {"quadratic: PDE vs Monte Carlo, uncorrected formulas vs errata", quadratic_triple},
      {"k = 0 exactness of the indicator solution", k0_exactness},
      {"sign and nodal laws, closed form and PDE", sign_laws},
      {"joint law of (B_t, L_t): mass and marginal", joint_law},
      {"PDE equivalence with the sign-drift linear equation", pde_equivalence},
      {"Tanaka local-time estimator", tanaka},
      {"robust corridor pricing", robust_pricing},
      {"stopped-representation estimator of w", stopped_representation},
      {"CLI determinism and quick-suite runtime", [&](Criterion& c) { cli_determinism(c, cli); }},
  };
  int failed = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), i + 1) == selected.end()) continue;
    ++ran;
    Criterion c;
    const auto start = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("threw: ") + e.what());
    }
    std::cout << (c.passed() ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first
              << fmt(" (%.1f s)", seconds_since(start)) << '\n';
    for (const auto& line : c.lines()) std::cout << line << '\n';
    std::cout.flush();
    if (!c.passed()) ++failed;
  }
  std::cout << (ran - failed) << " of " << ran << " criteria passed\n";
  return failed;
}
