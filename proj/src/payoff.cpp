#include <cmath>
#include <limits>
#include <sstream>

#include "kign/core_math.hpp"
#include "kign/errors.hpp"
#include "kign/model.hpp"

namespace kign {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

KIgnoranceModel::KIgnoranceModel(double k, double T) : k_(k), T_(T) {
  if (!std::isfinite(k)) throw DomainError("KIgnoranceModel: k must be finite");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("KIgnoranceModel: T must be positive and finite");
}

double KIgnoranceModel::horizon_from(double t) const {
  if (!(t >= 0.0) || !(t < T_)) {
    std::ostringstream os;
    os << "time t=" << t << " outside [0, T) with T=" << T_ << "; at t = T the solution is the payoff itself";
    throw DomainError(os.str());
  }
  return T_ - t;
}

TerminalPayoff TerminalPayoff::quadratic() { return TerminalPayoff(payoff::Quadratic{}); }

TerminalPayoff TerminalPayoff::indicator(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("indicator: barriers must be finite");
  if (!(a < b)) throw DomainError("indicator: requires a < b");
  return TerminalPayoff(payoff::Indicator{a, b});
}

TerminalPayoff TerminalPayoff::digital_low(double b) {
  if (!std::isfinite(b)) throw DomainError("digital_low: barrier must be finite");
  return TerminalPayoff(payoff::DigitalLow{b});
}

TerminalPayoff TerminalPayoff::digital_high(double a) {
  if (!std::isfinite(a)) throw DomainError("digital_high: barrier must be finite");
  return TerminalPayoff(payoff::DigitalHigh{a});
}

TerminalPayoff TerminalPayoff::general(std::function<double(double)> value, std::function<double(double)> derivative,
                                       double center, Monotonicity direction, std::vector<double> kinks) {
  if (!value || !derivative) throw std::invalid_argument("general payoff: value and derivative are required");
  if (!std::isfinite(center)) throw DomainError("general payoff: center must be finite");

  const double s = direction_sign(direction);
  double prev = value(center);
  bool moved = false;
  for (int i = 1; i <= 400; ++i) {
    const double x = 0.025 * i;
    const double right = value(center + x);
    const double left = value(center - x);
    const double scale = std::max(1.0, std::abs(right));
    if (std::abs(right - left) > 1e-9 * scale) {
      std::ostringstream os;
      os << "general payoff: not symmetric about c=" << center << " at offset " << x;
      throw DomainError(os.str());
    }
    if (s * (right - prev) < -1e-12 * scale) {
      std::ostringstream os;
      os << "general payoff: not monotone in the declared direction on [c, inf) near x=" << center + x;
      throw DomainError(os.str());
    }
    if (right != prev) moved = true;
    prev = right;
  }
  if (!moved) throw DomainError("general payoff: constant on [c, inf), the sign of Z is undetermined");

  for (double k : kinks) {
    if (!std::isfinite(k)) throw DomainError("general payoff: kinks must be finite");
  }
  return TerminalPayoff(payoff::GeneralSymmetric{std::move(value), std::move(derivative), center, direction,
                                                 std::move(kinks)});
}

std::string TerminalPayoff::name() const {
  return std::visit(overloaded{
                        [](const payoff::Quadratic&) -> std::string { return "quadratic"; },
                        [](const payoff::Indicator&) -> std::string { return "indicator"; },
                        [](const payoff::DigitalLow&) -> std::string { return "digital-low"; },
                        [](const payoff::DigitalHigh&) -> std::string { return "digital-high"; },
                        [](const payoff::GeneralSymmetric&) -> std::string { return "general"; },
                    },
                    kind_);
}

double TerminalPayoff::operator()(double x) const {
  return std::visit(overloaded{
                        [x](const payoff::Quadratic&) { return x * x; },
                        [x](const payoff::Indicator& p) { return (p.a <= x && x <= p.b) ? 1.0 : 0.0; },
                        [x](const payoff::DigitalLow& p) { return x <= p.b ? 1.0 : 0.0; },
                        [x](const payoff::DigitalHigh& p) { return x >= p.a ? 1.0 : 0.0; },
                        [x](const payoff::GeneralSymmetric& p) { return p.value(x); },
                    },
                    kind_);
}

bool TerminalPayoff::has_derivative() const noexcept {
  return std::holds_alternative<payoff::Quadratic>(kind_) || std::holds_alternative<payoff::GeneralSymmetric>(kind_);
}

double TerminalPayoff::derivative(double x) const {
  if (const auto* g = std::get_if<payoff::GeneralSymmetric>(&kind_)) return g->derivative(x);
  if (std::holds_alternative<payoff::Quadratic>(kind_)) return 2.0 * x;
  throw std::invalid_argument("payoff " + name() + " has no pointwise derivative");
}

double TerminalPayoff::center() const noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{
                        [](const payoff::Quadratic&) { return 0.0; },
                        [](const payoff::Indicator& p) { return 0.5 * (p.a + p.b); },
                        [](const payoff::DigitalLow&) { return -inf; },
                        [](const payoff::DigitalHigh&) { return inf; },
                        [](const payoff::GeneralSymmetric& p) { return p.center; },
                    },
                    kind_);
}

Monotonicity TerminalPayoff::direction() const noexcept {
  if (std::holds_alternative<payoff::Quadratic>(kind_)) return Monotonicity::IncreasingOnRightHalf;
  if (const auto* g = std::get_if<payoff::GeneralSymmetric>(&kind_)) return g->direction;
  // Indicator and both digitals: nonincreasing away from the center, with
  // the digital centers at -inf (low) and +inf (high).
  return Monotonicity::DecreasingOnRightHalf;
}

std::vector<double> TerminalPayoff::kinks() const {
  return std::visit(overloaded{
                        [](const payoff::Quadratic&) { return std::vector<double>{}; },
                        [](const payoff::Indicator& p) { return std::vector<double>{p.a, p.b}; },
                        [](const payoff::DigitalLow& p) { return std::vector<double>{p.b}; },
                        [](const payoff::DigitalHigh& p) { return std::vector<double>{p.a}; },
                        [](const payoff::GeneralSymmetric& p) { return p.kinks; },
                    },
                    kind_);
}

std::function<double(double)> mollified_indicator(double a, double b, double eps) {
  if (!(a < b)) throw DomainError("mollified_indicator: requires a < b");
  if (!(eps > 0.0)) throw DomainError("mollified_indicator: eps must be positive");
  const double s = std::sqrt(eps);
  return [a, b, s](double x) { return normal_cdf((b - x) / s) - normal_cdf((a - x) / s); };
}

namespace {

// C^1 step from 0 at u <= 0 to 1 at u >= 1.
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

double smoothstep_slope(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 6.0 * u * (1.0 - u);
}

}  // namespace

TerminalPayoff smooth_ramp_indicator(double a, double b, double width) {
  if (!(a < b)) throw DomainError("smooth_ramp_indicator: requires a < b");
  if (!(width > 0.0) || 2.0 * width > b - a) throw DomainError("smooth_ramp_indicator: need 0 < width <= (b-a)/2");
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // Written in |x - c| so that symmetry about c holds bit for bit.
  auto value = [c, half, width](double x) {
    const double r = std::abs(x - c);
    return 1.0 - smoothstep((r - (half - width)) / (2.0 * width));
  };
  auto derivative = [c, half, width](double x) {
    const double r = std::abs(x - c);
    return -sgn(x - c) * smoothstep_slope((r - (half - width)) / (2.0 * width)) / (2.0 * width);
  };
  return TerminalPayoff::general(value, derivative, c, Monotonicity::DecreasingOnRightHalf,
                                 {a - width, a + width, b - width, b + width});
}

}  // namespace kign
