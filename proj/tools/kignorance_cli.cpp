// kignorance: pricing queries, oracle runs, verification suites, CSV dumps.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kign/closed_form.hpp"
#include "kign/core_math.hpp"
#include "kign/csv.hpp"
#include "kign/errors.hpp"
#include "kign/mc.hpp"
#include "kign/pde.hpp"
#include "kign/pricing.hpp"
#include "kign/verification.hpp"

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string terminal = "indicator";
  double a = 0.0;
  double b = 1.0;
  double k = 0.1;
  double T = 1.0;
  double sigma = 0.2;
  double mu = 0.05;
  double r = 0.0;
  double t = 0.0;
  double bt = 0.0;
  double h = 0.5;
  int nx = 2001;
  int nt = 4000;
  int stride = 40;
  std::int64_t paths = 200000;
  int steps = 2000;
  std::uint64_t seed = 20240601;
  std::string output;
  std::string format = "plain";
  bool discount = false;
  std::string suite = "all";
  bool quick = false;
};

kign::TerminalPayoff make_payoff(const Settings& s) {
  if (s.terminal == "quadratic") return kign::TerminalPayoff::quadratic();
  if (s.terminal == "indicator") return kign::TerminalPayoff::indicator(s.a, s.b);
  if (s.terminal == "digital-low") return kign::TerminalPayoff::digital_low(s.b);
  if (s.terminal == "digital-high") return kign::TerminalPayoff::digital_high(s.a);
  throw kign::ConfigError("unknown terminal '" + s.terminal + "'");
}

void emit(const Settings& s, const std::string& text) {
  if (s.output.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(s.output, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + s.output + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + s.output + "'");
}

std::ostringstream buffer() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  return os;
}

// ------------------------------------------------------------------ commands

int cmd_price(const Settings& s) {
  if (s.terminal != "indicator") throw kign::ConfigError("price: only --terminal indicator (corridor) is supported");
  const kign::CorridorClaim claim{s.a, s.b, s.T};
  const kign::MarketModel market{s.mu, s.sigma, s.r};
  const auto bm = kign::map_claim_to_bm(claim, market);
  const auto q = kign::quote(claim, market, s.k, s.t, s.bt);
  const double plain = kign::upper_price(claim, market, 0.0, s.t, s.bt);
  const double factor = s.discount ? std::exp(-s.r * (s.T - s.t)) : 1.0;

  auto os = buffer();
  if (s.format == "csv") {
    kign::CsvWriter csv(os, {"a_B", "b_B", "c", "k", "t", "b_t", "upper", "lower", "k0_price", "discount_factor"});
    csv.cell(bm.a_B).cell(bm.b_B).cell(bm.c).cell(s.k).cell(s.t).cell(s.bt);
    csv.cell(q.upper * factor).cell(q.lower * factor).cell(plain * factor).cell(factor);
    csv.end_row();
  } else {
    using kign::format_double;
    os << "a_B       " << format_double(bm.a_B) << '\n'
       << "b_B       " << format_double(bm.b_B) << '\n'
       << "c         " << format_double(bm.c) << '\n'
       << "upper     " << format_double(q.upper * factor) << '\n'
       << "lower     " << format_double(q.lower * factor) << '\n'
       << "k0_price  " << format_double(plain * factor) << '\n';
    if (s.discount) os << "discount  " << format_double(factor) << '\n';
  }
  emit(s, os.str());
  return 0;
}

int cmd_path_demo(const Settings& s) {
  const kign::KIgnoranceModel model(s.k, s.T);
  kign::PathConfig cfg;
  cfg.n_steps = s.steps;
  cfg.n_paths = 1;
  cfg.seed = s.seed;
  cfg.T = s.T;
  cfg.validate();
  if (!(s.a < s.b)) throw kign::DomainError("path-demo: need a < b");
  const auto path = kign::simulate_path(cfg, 0.0, 0);
  const double c = 0.5 * (s.a + s.b);

  auto os = buffer();
  kign::CsvWriter csv(os, {"t", "B_t", "Z_t", "sign"});
  for (int i = 0; i < cfg.n_steps; ++i) {
    const double t = cfg.dt() * i;
    const double z = kign::indicator_Z(model, t, path[i], s.a, s.b);
    csv.cell(t).cell(path[i]).cell(z).cell(static_cast<long long>(kign::sgn(z) * kign::sgn(path[i] - c)));
    csv.end_row();
  }
  emit(s, os.str());
  return 0;
}

int cmd_verify(const Settings& s) {
  kign::VerifyOptions opts;
  opts.quick = s.quick;
  opts.seed = s.seed;
  const auto results = kign::run_suite(s.suite, opts);
  auto os = buffer();
  const bool ok = kign::print_report(os, results);
  emit(s, os.str());
  return ok ? 0 : kExitVerify;
}

int cmd_solve_pde(const Settings& s) {
  const auto payoff = make_payoff(s);
  double c = payoff.center();
  double radius = 0.0;
  if (s.terminal == "indicator") radius = 0.5 * (s.b - s.a);
  if (!std::isfinite(c)) {
    c = s.terminal == "digital-low" ? s.b : s.a;
    radius = 2.0;
  }
  if (s.terminal == "quadratic") radius = 1.0;
  const kign::Grid1D grid = kign::centered_grid(c, s.T, radius, s.nx, s.nt);
  kign::InitialCondition phi;
  const double eps = grid.dx() * grid.dx();
  if (s.terminal == "quadratic") {
    phi = [](double x) { return x * x; };
  } else if (s.terminal == "indicator") {
    phi = kign::mollified_indicator(s.a, s.b, eps);
  } else if (s.terminal == "digital-low") {
    phi = [b = s.b, eps](double x) { return kign::normal_cdf((b - x) / std::sqrt(eps)); };
  } else {
    phi = [a = s.a, eps](double x) { return kign::normal_cdf((x - a) / std::sqrt(eps)); };
  }
  const auto sol = kign::solve_k_ignorance(phi, s.k, grid, {s.stride});

  auto os = buffer();
  kign::CsvWriter csv(os, {"t", "x", "u", "w"});
  for (int row = 0; row < sol.rows(); ++row) {
    const auto u = sol.u_row(row);
    const auto w = sol.w_row(row);
    for (int j = 0; j < grid.nx(); ++j) {
      csv.cell(sol.time(row)).cell(grid.x(j)).cell(u[j]).cell(w[j]);
      csv.end_row();
    }
  }
  emit(s, os.str());
  return 0;
}

int cmd_simulate(const Settings& s) {
  const auto payoff = make_payoff(s);
  const kign::KIgnoranceModel model(s.k, s.T);
  kign::PathConfig cfg;
  cfg.n_steps = s.steps;
  cfg.n_paths = s.paths;
  cfg.seed = s.seed;
  cfg.validate();
  const auto e = kign::estimate_Y(model, payoff, s.t, s.h, cfg);
  const auto exact = kign::solve(model, payoff, s.t, s.h);

  auto report = buffer();
  using kign::format_double;
  if (s.format == "csv") {
    kign::CsvWriter csv(report, {"mean", "std_error", "n_paths", "n_steps", "rejected", "closed_form", "z_score"});
    csv.cell(e.mean).cell(e.std_error).cell(static_cast<long long>(e.n_paths)).cell(static_cast<long long>(e.n_steps));
    csv.cell(static_cast<long long>(e.rejected)).cell(exact.y).cell((e.mean - exact.y) / e.std_error);
    csv.end_row();
  } else {
    report << "mean         " << format_double(e.mean) << '\n'
           << "std_error    " << format_double(e.std_error) << '\n'
           << "paths        " << e.n_paths << " (" << e.rejected << " rejected)\n"
           << "steps        " << e.n_steps << '\n'
           << "closed_form  " << format_double(exact.y) << '\n'
           << "z_score      " << format_double((e.mean - exact.y) / e.std_error) << '\n';
  }
  std::cout << report.str();

  if (!s.output.empty()) {
    const auto records = kign::y_path_records(model, payoff, s.t, s.h, cfg);
    auto os = buffer();
    kign::CsvWriter csv(os, {"path", "B_T", "L_T", "weight"});
    for (const auto& r : records) {
      csv.cell(static_cast<long long>(r.path)).cell(r.b_T).cell(r.l_T).cell(r.weight);
      csv.end_row();
    }
    emit(s, os.str());
  }
  return 0;
}

// ----------------------------------------------------------------- parsing

// key=value lines; '#' starts a comment. Keys are long option names.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw kign::ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r");
      const auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "quick" || key == "discount") {
      if (value == "true" || value == "1") args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

void add_model(CLI::App* cmd, Settings& s) {
  cmd->add_option("--k", s.k, "ambiguity coefficient k")->capture_default_str();
  cmd->add_option("--T", s.T, "horizon")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_payoff(CLI::App* cmd, Settings& s) {
  cmd->add_option("--terminal", s.terminal, "quadratic | indicator | digital-low | digital-high")
      ->capture_default_str()
      ->check(CLI::IsMember({"quadratic", "indicator", "digital-low", "digital-high"}));
  cmd->add_option("--a", s.a, "lower barrier")->capture_default_str();
  cmd->add_option("--b", s.b, "upper barrier")->capture_default_str();
}

void add_output(CLI::App* cmd, Settings& s) {
  cmd->add_option("--output", s.output, "output file (default: stdout)");
  cmd->add_option("--format", s.format, "csv | plain")->capture_default_str()->check(CLI::IsMember({"csv", "plain"}));
}

void add_seed(CLI::App* cmd, Settings& s) {
  cmd->add_option("--seed", s.seed, "random seed")->envname("KIGNORANCE_SEED")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"k-ignorance BSDE solutions, oracles and robust corridor prices"};
  app.set_help_flag("--help", "print help");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "key=value file with defaults; flags win");

  auto* price = app.add_subcommand("price", "robust upper/lower prices of a corridor claim");
  add_model(price, s);
  add_payoff(price, s);
  price->add_option("--sigma", s.sigma, "volatility")->capture_default_str()->check(CLI::PositiveNumber);
  price->add_option("--mu", s.mu, "drift of log S")->capture_default_str();
  price->add_option("--r", s.r, "interest rate")->capture_default_str();
  price->add_option("--t", s.t, "quote time")->capture_default_str();
  price->add_option("--bt", s.bt, "current value of B_t")->capture_default_str();
  price->add_flag("--discount", s.discount, "multiply quotes by exp(-r (T - t))");
  add_output(price, s);

  auto* demo = app.add_subcommand("path-demo", "one Brownian path with Z_t of the indicator solution");
  add_model(demo, s);
  demo->add_option("--a", s.a, "lower barrier")->capture_default_str();
  demo->add_option("--b", s.b, "upper barrier")->capture_default_str();
  demo->add_option("--steps", s.steps, "time steps")->capture_default_str()->check(CLI::PositiveNumber);
  add_seed(demo, s);
  add_output(demo, s);

  auto* verify = app.add_subcommand("verify", "run invariant and oracle batteries");
  verify->add_option("--suite", s.suite, "suite to run")
      ->capture_default_str()
      ->check(CLI::IsMember(kign::suite_names()));
  verify->add_flag("--quick", s.quick, "reduced grids and path counts");
  add_seed(verify, s);
  add_output(verify, s);

  auto* pde = app.add_subcommand("solve-pde", "finite-difference solve, CSV columns t,x,u,w");
  add_model(pde, s);
  add_payoff(pde, s);
  pde->add_option("--nx", s.nx, "space nodes")->capture_default_str()->check(CLI::Range(3, 1000000));
  pde->add_option("--nt", s.nt, "time steps")->capture_default_str()->check(CLI::PositiveNumber);
  pde->add_option("--stride", s.stride, "keep every stride-th time level")->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output(pde, s);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of Y_t; CSV columns path,B_T,L_T,weight");
  add_model(sim, s);
  add_payoff(sim, s);
  sim->add_option("--t", s.t, "start time")->capture_default_str();
  sim->add_option("--h", s.h, "value of B_t")->capture_default_str();
  sim->add_option("--paths", s.paths, "number of paths")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--steps", s.steps, "time steps per path")->capture_default_str()->check(CLI::PositiveNumber);
  add_seed(sim, s);
  add_output(sim, s);

  try {
    // Config values are spliced in right after the subcommand so that any
    // flag given on the command line comes later and wins.
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--config") {
        std::size_t sub = 0;
        while (sub < args.size() && !app.get_subcommand_no_throw(args[sub])) ++sub;
        if (sub < args.size()) {
          const auto extra = config_arguments(args[i + 1]);
          args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, extra.begin(), extra.end());
        }
        break;
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*price) return cmd_price(s);
    if (*demo) return cmd_path_demo(s);
    if (*verify) return cmd_verify(s);
    if (*pde) return cmd_solve_pde(s);
    if (*sim) return cmd_simulate(s);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  }
  return kExitUsage;
}
