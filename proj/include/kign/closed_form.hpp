#pragma once

#include "kign/model.hpp"

namespace kign {

struct YZ {
  double y;
  double z;
};

// One point of the solution: Y_t = u(T - t, B_t), Z_t = d/dx u(T - t, B_t).
struct SolutionSample {
  double t;
  double b;
  double y;
  double z;
};

// --- indicator family -------------------------------------------------------
// All require 0 <= t < T (DomainError otherwise); indicator needs a < b.

double indicator_Y(const KIgnoranceModel& model, double t, double h, double a, double b);
double indicator_Z(const KIgnoranceModel& model, double t, double h, double a, double b);
YZ digital_low_YZ(const KIgnoranceModel& model, double t, double h, double b);
YZ digital_high_YZ(const KIgnoranceModel& model, double t, double h, double a);

// --- quadratic payoff phi(x) = x^2 --------------------------------------------
// k > 0 required; for k = 0 the solution is Y = h^2 + (T - t), Z = 2h.
//
// quadratic_Y / quadratic_Z are the forms verified against the PDE and
// quadrature oracles. The *_printed variants keep the uncorrected
// expressions term for term; they disagree off h = 0 (docs/FORMULA_ERRATA.md).

double quadratic_Y(const KIgnoranceModel& model, double t, double h);
double quadratic_Z(const KIgnoranceModel& model, double t, double h);
double quadratic_Y_printed(const KIgnoranceModel& model, double t, double h);
double quadratic_Z_printed(const KIgnoranceModel& model, double t, double h);

// Solution of d_s v = 1/2 v_xx + k sgn(x) v_x, v(0, x) = x^2, at forward time s > 0.
double sign_drift_quadratic(double k, double s, double x);
// Uncorrected form of the same; it carries a stray horizon T in the last term.
double sign_drift_quadratic_printed(double k, double s, double x, double T);

// --- general symmetric-monotone payoffs -------------------------------------

struct QuadratureOptions {
  double rel_tol = 1e-10;
  unsigned max_depth = 15;
  // x range is +-(x_sigmas sqrt(tau) + |k| tau), y range (0, y_sigmas sqrt(tau) + |k| tau].
  double x_sigmas = 10.0;
  double y_sigmas = 12.0;
};

// H(h) = e^{-k^2 tau / 2} E[phi(B_tau + h) exp(+-k(|B_tau - c + h| - |c - h| - L_tau^{c-h}))]
// evaluated by quadrature against the joint law of (B_tau, L_tau^{c-h}),
// with the sign taken from the payoff's monotone direction. Works for any
// payoff with a finite center. Throws NumericalError if quadrature misses
// its tolerance.
double general_H(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                 const QuadratureOptions& opts = {});

// dH/dh by a once-Richardson-extrapolated central difference with step
// max(1e-5, 1e-7 |h|).
double general_Z(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                 const QuadratureOptions& opts = {});

// Y_0 = e^{-k^2 T / 2} int int phi(x) e^{+-(k|x - c| - k|c| - k y)} P(B_T in dx, L_T^c in dy).
double y0_integral(const KIgnoranceModel& model, const TerminalPayoff& payoff, const QuadratureOptions& opts = {});

// Closed form where one exists, quadrature otherwise.
SolutionSample solve(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h);

}  // namespace kign
