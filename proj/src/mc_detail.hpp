#pragma once

// Shared between the parallel kernels and the serial reference.

#include <cmath>
#include <limits>

#include "kign/core_math.hpp"
#include "kign/mc.hpp"

namespace kign::detail {

// Sign multiplying k in the linearized driver: +1 when the payoff increases
// away from its center, -1 when it decreases.
inline double drift_sign(const TerminalPayoff& payoff) { return direction_sign(payoff.direction()); }

// Exponent s k (|b_T - c| - |h - c| - L) - k^2 tau / 2; for an infinite center
// the Tanaka rewrite degenerates and the Ito sum is used directly.
inline double y_log_weight(double s, double k, double tau, double c, double h, double b_T, double ito, double local) {
  const double martingale = std::isfinite(c) ? std::abs(b_T - c) - std::abs(h - c) - local : ito;
  return s * k * martingale - 0.5 * k * k * tau;
}

inline double bridge_survival(double a, double b, double c, double dt) {
  return -std::expm1(-2.0 * (a - c) * (b - c) / dt);
}

// E[N phi'(B_tau + x)] without stopping: B drifts at s k sgn(x - c).
double unstopped_mean(const TerminalPayoff& payoff, double s, double k, double tau, double x, double side);

// U is the unstopped weight of a path, kept the fraction of U that survives.
inline double w_value(double u, double kept, WVariance variance, double unstopped) {
  return variance == WVariance::Plain ? u * kept : unstopped - u * (1.0 - kept);
}

void require_w_payoff(const TerminalPayoff& payoff);
void check_rejections(const Estimate& e, const char* who);

}  // namespace kign::detail
