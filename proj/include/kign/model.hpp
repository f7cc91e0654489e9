#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace kign {

// Parameters of Y_t = xi + int_t^T k|Z_s| ds - int_t^T Z_s dB_s.
class KIgnoranceModel {
 public:
  // T > 0 and k finite; negative k gives the lower (ess inf) equation.
  KIgnoranceModel(double k, double T);

  double k() const noexcept { return k_; }
  double T() const noexcept { return T_; }
  // Remaining horizon T - t; DomainError unless 0 <= t < T.
  double horizon_from(double t) const;

 private:
  double k_;
  double T_;
};

// Shape of the payoff on [c, inf): this fixes the sign of Z, namely
// sgn(Z) = +sgn(h - c) when increasing and -sgn(h - c) when decreasing.
enum class Monotonicity { IncreasingOnRightHalf, DecreasingOnRightHalf };

constexpr double direction_sign(Monotonicity m) noexcept {
  return m == Monotonicity::IncreasingOnRightHalf ? 1.0 : -1.0;
}

namespace payoff {

struct Quadratic {};

// I{a <= x <= b}, symmetric about (a + b) / 2.
struct Indicator {
  double a;
  double b;
};

// I{x <= b}: the a = -inf limit of Indicator.
struct DigitalLow {
  double b;
};

// I{x >= a}: the b = +inf limit of Indicator.
struct DigitalHigh {
  double a;
};

struct GeneralSymmetric {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double center;
  Monotonicity direction;
  // Points where value or derivative is not smooth; used to split quadrature.
  std::vector<double> kinks;
};

}  // namespace payoff

// Terminal payoff phi of xi = phi(B_T). Immutable after construction.
class TerminalPayoff {
 public:
  using Kind = std::variant<payoff::Quadratic, payoff::Indicator, payoff::DigitalLow, payoff::DigitalHigh,
                            payoff::GeneralSymmetric>;

  static TerminalPayoff quadratic();
  static TerminalPayoff indicator(double a, double b);
  static TerminalPayoff digital_low(double b);
  static TerminalPayoff digital_high(double a);
  // Checks symmetry about center and monotonicity on [center, inf) by sampling.
  static TerminalPayoff general(std::function<double(double)> value, std::function<double(double)> derivative,
                                double center, Monotonicity direction, std::vector<double> kinks = {});

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  double operator()(double x) const;
  bool has_derivative() const noexcept;
  // phi'(x); std::invalid_argument for the indicator family.
  double derivative(double x) const;

  // Symmetry center c; -inf for DigitalLow and +inf for DigitalHigh.
  double center() const noexcept;
  Monotonicity direction() const noexcept;
  // Points where phi is not smooth (jumps or kinks).
  std::vector<double> kinks() const;

 private:
  explicit TerminalPayoff(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

// E[I{a <= x + sqrt(eps) xi <= b}] for standard normal xi: the Gaussian
// mollification of the indicator at variance eps.
std::function<double(double)> mollified_indicator(double a, double b, double eps);

// Smooth symmetric approximation of I{a <= x <= b}: equal to 1 on
// [a + width, b - width], 0 outside [a - width, b + width], C^1 in between.
TerminalPayoff smooth_ramp_indicator(double a, double b, double width);

}  // namespace kign
