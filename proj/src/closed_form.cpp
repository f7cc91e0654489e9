#include "kign/closed_form.hpp"

#include <cmath>
#include <variant>

#include "kign/core_math.hpp"
#include "kign/errors.hpp"

namespace kign {

namespace {

void require_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw DomainError("indicator: requires finite a < b");
}

void require_positive_k(const KIgnoranceModel& model) {
  if (!(model.k() > 0.0)) {
    throw DomainError("quadratic closed form needs k > 0; for k = 0 use Y = h^2 + (T - t), Z = 2h");
  }
}

// Shared pieces of the quadratic forms, with m = |h| and s the elapsed
// forward time: A = m + k s, D = m - k s.
struct QuadTerms {
  double k, s, sq, m, A, D;

  QuadTerms(double k_, double s_, double h) : k(k_), s(s_), sq(std::sqrt(s_)), m(std::abs(h)) {
    A = m + k * s;
    D = m - k * s;
  }
  double head() const {
    return 1.0 / (2.0 * k * k) + sq * (A + 1.0 / k) * normal_pdf(A / sq) +
           (A * A + s - 1.0 / (2.0 * k * k)) * normal_cdf(A / sq);
  }
  double reflected_weight() const { return std::exp(-2.0 * k * m) * normal_cdf(-D / sq); }
};

}  // namespace

double indicator_Y(const KIgnoranceModel& model, double t, double h, double a, double b) {
  require_interval(a, b);
  const double tau = model.horizon_from(t);
  const double k = model.k();
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double m = std::abs(h - c);
  const double sq = std::sqrt(tau);
  return normal_cdf(-(m - k * tau - half) / sq) - std::exp(-k * (b - a)) * normal_cdf(-(m - k * tau + half) / sq);
}

double indicator_Z(const KIgnoranceModel& model, double t, double h, double a, double b) {
  require_interval(a, b);
  const double tau = model.horizon_from(t);
  const double k = model.k();
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double m = std::abs(h - c);
  const double near = m - k * tau - half;
  const double far = m - k * tau + half;
  const double bracket =
      std::exp(-near * near / (2.0 * tau)) - std::exp(-k * (b - a)) * std::exp(-far * far / (2.0 * tau));
  return -sgn(h - c) * kInvSqrt2Pi / std::sqrt(tau) * bracket;
}

YZ digital_low_YZ(const KIgnoranceModel& model, double t, double h, double b) {
  if (!std::isfinite(b)) throw DomainError("digital_low: barrier must be finite");
  const double tau = model.horizon_from(t);
  const double sq = std::sqrt(tau);
  const double arg = (h - model.k() * tau - b) / sq;
  return {normal_cdf(-arg), -normal_pdf(arg) / sq};
}

YZ digital_high_YZ(const KIgnoranceModel& model, double t, double h, double a) {
  if (!std::isfinite(a)) throw DomainError("digital_high: barrier must be finite");
  const double tau = model.horizon_from(t);
  const double sq = std::sqrt(tau);
  const double arg = (h + model.k() * tau - a) / sq;
  return {normal_cdf(arg), normal_pdf(arg) / sq};
}

double quadratic_Y(const KIgnoranceModel& model, double t, double h) {
  require_positive_k(model);
  return sign_drift_quadratic(model.k(), model.horizon_from(t), h);
}

double quadratic_Z(const KIgnoranceModel& model, double t, double h) {
  require_positive_k(model);
  const QuadTerms q(model.k(), model.horizon_from(t), h);
  return sgn(h) * 2.0 * (q.A * normal_cdf(q.A / q.sq) + q.D * q.reflected_weight());
}

double quadratic_Y_printed(const KIgnoranceModel& model, double t, double h) {
  require_positive_k(model);
  const double tau = model.horizon_from(t);
  const double k = model.k();
  const QuadTerms q(k, tau, h);
  return q.head() + (q.m + tau - 1.0 / (2.0 * k * k)) * q.reflected_weight();
}

double quadratic_Z_printed(const KIgnoranceModel& model, double t, double h) {
  require_positive_k(model);
  const double tau = model.horizon_from(t);
  const double k = model.k();
  const QuadTerms q(k, tau, h);
  const double sg = sgn(h);
  const double gauss_a = std::exp(-q.A * q.A / (2.0 * tau));
  const double gauss_d = std::exp(-q.D * q.D / (2.0 * tau));
  const double inv_2k2 = 1.0 / (2.0 * k * k);
  const double decay = std::exp(-2.0 * k * q.m);
  const double lead = q.m + tau - inv_2k2;
  return q.sq * kInvSqrt2Pi * sg * gauss_a * (1.0 + (q.A + 1.0 / k) * (-q.A / tau)) +
         2.0 * sg * q.A * normal_cdf(q.A / q.sq) +
         (q.A * q.A - k * tau - inv_2k2) * sg * kInvSqrt2Pi / q.sq * gauss_a +
         decay * sg * normal_cdf(-q.D / q.sq) * (-2.0 * k * lead + 1.0) -
         decay * lead * sg * kInvSqrt2Pi / q.sq * gauss_d;
}

double sign_drift_quadratic(double k, double s, double x) {
  if (!(k > 0.0)) throw DomainError("sign_drift_quadratic: needs k > 0");
  if (!(s > 0.0)) throw DomainError("sign_drift_quadratic: needs s > 0");
  const QuadTerms q(k, s, x);
  return q.head() + (s - q.m / k - 1.0 / (2.0 * k * k)) * q.reflected_weight();
}

double sign_drift_quadratic_printed(double k, double s, double x, double T) {
  if (!(k > 0.0)) throw DomainError("sign_drift_quadratic_printed: needs k > 0");
  if (!(s > 0.0)) throw DomainError("sign_drift_quadratic_printed: needs s > 0");
  const QuadTerms q(k, s, x);
  return q.head() + (q.m + T - s - 1.0 / (2.0 * k * k)) * q.reflected_weight();
}

SolutionSample solve(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h) {
  const double tau = model.horizon_from(t);
  const auto& kind = payoff.kind();
  if (std::holds_alternative<payoff::Quadratic>(kind)) {
    if (model.k() == 0.0) return {t, h, h * h + tau, 2.0 * h};
    if (model.k() > 0.0) return {t, h, quadratic_Y(model, t, h), quadratic_Z(model, t, h)};
  } else if (const auto* p = std::get_if<payoff::Indicator>(&kind)) {
    return {t, h, indicator_Y(model, t, h, p->a, p->b), indicator_Z(model, t, h, p->a, p->b)};
  } else if (const auto* p = std::get_if<payoff::DigitalLow>(&kind)) {
    const auto yz = digital_low_YZ(model, t, h, p->b);
    return {t, h, yz.y, yz.z};
  } else if (const auto* p = std::get_if<payoff::DigitalHigh>(&kind)) {
    const auto yz = digital_high_YZ(model, t, h, p->a);
    return {t, h, yz.y, yz.z};
  }
  return {t, h, general_H(model, payoff, t, h), general_Z(model, payoff, t, h)};
}

}  // namespace kign
