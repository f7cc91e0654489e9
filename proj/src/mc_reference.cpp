// Serial, path-materializing versions of the estimators in mc.cpp. They share
// the random streams and the reduction, so results must match bit for bit.

#include <cmath>

#include "kign/core_math.hpp"
#include "kign/mc.hpp"
#include "mc_detail.hpp"

namespace kign::reference {

Estimate estimate_Y(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                    const PathConfig& cfg) {
  const double tau = model.horizon_from(t);
  const PathConfig run = cfg.with_horizon(tau);
  const double s = detail::drift_sign(payoff);
  const double c = payoff.center();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(run.n_paths));
  for (std::int64_t i = 0; i < run.n_paths; ++i) {
    const auto path = simulate_path(run, h, static_cast<std::uint64_t>(i));
    const double b_T = path.back();
    const auto terms = tanaka_terms(path, c);
    const double ito = terms.ito_sum;
    const double local = std::isfinite(c) ? terms.local_time : 0.0;
    const double weight = std::exp(detail::y_log_weight(s, model.k(), tau, c, h, b_T, ito, local));
    values.push_back(payoff(b_T) * weight);
  }
  Estimate e = summarize(values, run.n_steps);
  detail::check_rejections(e, "reference::estimate_Y");
  return e;
}

Estimate estimate_w(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double x,
                    const PathConfig& cfg, HitMonitor monitor, WVariance variance) {
  detail::require_w_payoff(payoff);
  const double tau = model.horizon_from(t);
  const PathConfig run = cfg.with_horizon(tau);
  const double s = detail::drift_sign(payoff);
  const double k = model.k();
  const double c = payoff.center();
  const double side = sgn(x - c);
  std::vector<double> values(static_cast<std::size_t>(run.n_paths), 0.0);
  if (side == 0.0) return summarize(values, run.n_steps);
  const double unstopped = detail::unstopped_mean(payoff, s, k, tau, x, side);
  for (std::int64_t i = 0; i < run.n_paths; ++i) {
    const auto path = simulate_path(run, x, static_cast<std::uint64_t>(i));
    double kept = 1.0;
    for (std::size_t j = 1; j < path.size(); ++j) {
      if (sgn(path[j] - c) != side) {
        kept = 0.0;
        break;
      }
      if (monitor == HitMonitor::BrownianBridge) kept *= detail::bridge_survival(path[j - 1], path[j], c, run.dt());
    }
    const double b = path.back();
    const double u = std::exp(s * k * side * (b - x) - 0.5 * k * k * tau) * payoff.derivative(b);
    values[i] = detail::w_value(u, kept, variance, unstopped);
  }
  Estimate e = summarize(values, run.n_steps);
  detail::check_rejections(e, "reference::estimate_w");
  return e;
}

}  // namespace kign::reference
