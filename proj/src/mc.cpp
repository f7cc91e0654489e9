#include "kign/mc.hpp"

#include <cmath>
#include <sstream>

#include "kign/errors.hpp"
#include "kign/pde.hpp"
#include "kign/rng.hpp"
#include "mc_detail.hpp"

namespace kign {

void PathConfig::validate() const {
  if (n_steps < 1) throw ConfigError("PathConfig: n_steps must be >= 1");
  if (n_paths < 1) throw ConfigError("PathConfig: n_paths must be >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("PathConfig: horizon must be positive");
}

PathConfig PathConfig::with_horizon(double horizon) const {
  PathConfig out = *this;
  out.T = horizon;
  out.validate();
  return out;
}

std::vector<double> simulate_path(const PathConfig& cfg, double start, std::uint64_t path_index) {
  cfg.validate();
  const double sd = std::sqrt(cfg.dt());
  NormalStream normal(cfg.seed, path_index);
  std::vector<double> path(static_cast<std::size_t>(cfg.n_steps) + 1);
  path[0] = start;
  for (int i = 0; i < cfg.n_steps; ++i) path[i + 1] = path[i] + sd * normal();
  return path;
}

TanakaTerms tanaka_terms(std::span<const double> path, double level) {
  if (path.size() < 2) throw std::invalid_argument("tanaka_terms: path needs at least two points");
  double ito = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) ito += sgn(path[i] - level) * (path[i + 1] - path[i]);
  const double local = std::abs(path.back() - level) - std::abs(path.front() - level) - ito;
  return {ito, std::max(0.0, local)};
}

double local_time_tanaka(std::span<const double> path, double level) { return tanaka_terms(path, level).local_time; }

double local_time_crossings(std::span<const double> path, double level) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double before = sgn(path[i] - level);
    const double after = sgn(path[i + 1] - level);
    if (before == 0.0) {
      total += std::abs(path[i + 1] - level);
    } else if (after != before) {
      total += 2.0 * std::abs(path[i + 1] - level);
    }
  }
  return total;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 64;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Estimate summarize(std::span<const double> values, int n_steps) {
  std::vector<double> kept;
  kept.reserve(values.size());
  for (double v : values) {
    if (std::isfinite(v)) kept.push_back(v);
  }
  Estimate e;
  e.n_steps = n_steps;
  e.n_paths = static_cast<std::int64_t>(kept.size());
  e.rejected = static_cast<std::int64_t>(values.size() - kept.size());
  if (kept.empty()) {
    e.mean = std::numeric_limits<double>::quiet_NaN();
    e.std_error = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  const double n = static_cast<double>(kept.size());
  e.mean = pairwise_sum(kept) / n;
  if (kept.size() > 1) {
    for (double& v : kept) v = (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(pairwise_sum(kept) / (n - 1.0) / n);
  }
  return e;
}

namespace detail {

void require_w_payoff(const TerminalPayoff& payoff) {
  if (!payoff.has_derivative()) throw std::invalid_argument("estimate_w: payoff " + payoff.name() + " has no phi'");
  if (!std::isfinite(payoff.center())) throw DomainError("estimate_w: payoff needs a finite center");
}

double unstopped_mean(const TerminalPayoff& payoff, double s, double k, double tau, double x, double side) {
  return heat_evolve([&](double y) { return payoff.derivative(y); }, tau, x + s * k * side * tau);
}

void check_rejections(const Estimate& e, const char* who) {
  const double total = static_cast<double>(e.n_paths + e.rejected);
  if (e.rejected > 0.001 * total) {
    std::ostringstream os;
    os << who << ": " << e.rejected << " of " << total << " path weights were not finite";
    throw NumericalError(os.str(), e.rejected / total, 0.001);
  }
}

}  // namespace detail

namespace {

struct YPath {
  double b_T;
  double local;
  double weight;
  double value;
};

// One path of the estimate_Y functional, streamed without storing the path.
YPath y_path(const TerminalPayoff& payoff, double s, double k, double tau, double c, double h, double sd, int n_steps,
             std::uint64_t seed, std::uint64_t index) {
  NormalStream normal(seed, index);
  double b = h;
  double ito = 0.0;
  for (int i = 0; i < n_steps; ++i) {
    const double next = b + sd * normal();
    ito += sgn(b - c) * (next - b);
    b = next;
  }
  const double local = std::isfinite(c) ? std::max(0.0, std::abs(b - c) - std::abs(h - c) - ito) : 0.0;
  const double weight = std::exp(detail::y_log_weight(s, k, tau, c, h, b, ito, local));
  return {b, local, weight, payoff(b) * weight};
}

struct WPath {
  double u;
  double coarse_kept;
  double fine_kept;
};

// Walks factor * n_steps fine steps; the coarse estimator only looks at every
// factor-th point. With factor = 1 both entries are the plain estimator.
WPath w_path(const TerminalPayoff& payoff, double s, double k, double tau, double c, double x, double sd, double dt,
             int n_fine, int factor, HitMonitor monitor, std::uint64_t seed, std::uint64_t index) {
  const double side = sgn(x - c);
  NormalStream normal(seed, index);
  double b = x;
  double survival = 1.0;
  bool coarse_alive = true;
  bool fine_alive = true;
  for (int i = 0; i < n_fine; ++i) {
    const double next = b + sd * normal();
    if (fine_alive && sgn(next - c) != side) {
      fine_alive = false;
      survival = 0.0;
    }
    if (coarse_alive && (i + 1) % factor == 0 && sgn(next - c) != side) coarse_alive = false;
    if (fine_alive && monitor == HitMonitor::BrownianBridge) survival *= detail::bridge_survival(b, next, c, dt);
    b = next;
  }
  // sum_i side (B_{i+1} - B_i) telescopes on the unstopped path
  const double u = std::exp(s * k * side * (b - x) - 0.5 * k * k * tau) * payoff.derivative(b);
  return {u, coarse_alive ? 1.0 : 0.0, survival};
}

}  // namespace

Estimate estimate_Y(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                    const PathConfig& cfg) {
  const double tau = model.horizon_from(t);
  const PathConfig run = cfg.with_horizon(tau);
  const double s = detail::drift_sign(payoff);
  const double c = payoff.center();
  const double sd = std::sqrt(run.dt());
  const std::int64_t n = run.n_paths;

  std::vector<double> values(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    values[i] = y_path(payoff, s, model.k(), tau, c, h, sd, run.n_steps, run.seed, static_cast<std::uint64_t>(i)).value;
  }
  Estimate e = summarize(values, run.n_steps);
  detail::check_rejections(e, "estimate_Y");
  return e;
}

std::vector<PathRecord> y_path_records(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                                       const PathConfig& cfg) {
  const double tau = model.horizon_from(t);
  const PathConfig run = cfg.with_horizon(tau);
  const double s = detail::drift_sign(payoff);
  const double c = payoff.center();
  const double sd = std::sqrt(run.dt());
  std::vector<PathRecord> out(static_cast<std::size_t>(run.n_paths));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < run.n_paths; ++i) {
    const auto p = y_path(payoff, s, model.k(), tau, c, h, sd, run.n_steps, run.seed, static_cast<std::uint64_t>(i));
    out[i] = {i, p.b_T, p.local, p.weight};
  }
  return out;
}

Estimate estimate_w(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double x,
                    const PathConfig& cfg, HitMonitor monitor, WVariance variance) {
  detail::require_w_payoff(payoff);
  const double tau = model.horizon_from(t);
  const PathConfig run = cfg.with_horizon(tau);
  const double s = detail::drift_sign(payoff);
  const double c = payoff.center();
  const double dt = run.dt();
  const double sd = std::sqrt(dt);
  const double side = sgn(x - c);
  if (side == 0.0) return summarize(std::vector<double>(static_cast<std::size_t>(run.n_paths), 0.0), run.n_steps);
  const double unstopped = detail::unstopped_mean(payoff, s, model.k(), tau, x, side);

  std::vector<double> values(static_cast<std::size_t>(run.n_paths));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < run.n_paths; ++i) {
    const auto p = w_path(payoff, s, model.k(), tau, c, x, sd, dt, run.n_steps, 1, monitor, run.seed,
                          static_cast<std::uint64_t>(i));
    values[i] = detail::w_value(p.u, p.fine_kept, variance, unstopped);
  }
  Estimate e = summarize(values, run.n_steps);
  detail::check_rejections(e, "estimate_w");
  return e;
}

RefinementPair estimate_w_refinement(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double x,
                                     const PathConfig& cfg, int factor, WVariance variance) {
  detail::require_w_payoff(payoff);
  if (factor < 2) throw ConfigError("estimate_w_refinement: factor must be >= 2");
  const double tau = model.horizon_from(t);
  const PathConfig run = cfg.with_horizon(tau);
  const double s = detail::drift_sign(payoff);
  const double c = payoff.center();
  const int n_fine = run.n_steps * factor;
  const double dt = tau / n_fine;
  const double sd = std::sqrt(dt);
  const auto n = static_cast<std::size_t>(run.n_paths);
  const double side = sgn(x - c);
  if (side == 0.0) {
    const auto zero = summarize(std::vector<double>(n, 0.0), run.n_steps);
    return {zero, zero, zero};
  }
  const double unstopped = detail::unstopped_mean(payoff, s, model.k(), tau, x, side);

  std::vector<double> coarse(n), fine(n), shift(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < run.n_paths; ++i) {
    const auto p = w_path(payoff, s, model.k(), tau, c, x, sd, dt, n_fine, factor, HitMonitor::GridPoints, run.seed,
                          static_cast<std::uint64_t>(i));
    coarse[i] = detail::w_value(p.u, p.coarse_kept, variance, unstopped);
    fine[i] = detail::w_value(p.u, p.fine_kept, variance, unstopped);
    shift[i] = fine[i] - coarse[i];
  }
  RefinementPair out{summarize(coarse, run.n_steps), summarize(fine, n_fine), summarize(shift, n_fine)};
  detail::check_rejections(out.fine, "estimate_w_refinement");
  return out;
}

}  // namespace kign
