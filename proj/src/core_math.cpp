#include "kign/core_math.hpp"

#include <algorithm>
#include <cmath>

#include "kign/errors.hpp"

namespace kign {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

}  // namespace

double normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double normal_pdf(double x) {
  require_finite(x, "normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

JointLaw::JointLaw(double t, double level) : t_(t), level_(level) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("JointLaw: t must be positive and finite");
  require_finite(level, "JointLaw level");
}

double JointLaw::continuous(double x, double y) const {
  require_finite(x, "JointLaw::continuous x");
  if (!(y > 0.0)) throw DomainError("JointLaw::continuous: y must be > 0 (use atom for y = 0)");
  const double s = y + std::abs(x - level_) + std::abs(level_);
  return kInvSqrt2Pi / std::sqrt(t_ * t_ * t_) * s * std::exp(-s * s / (2.0 * t_));
}

double JointLaw::atom(double x) const {
  require_finite(x, "JointLaw::atom x");
  // reflected >= |x| by the triangle inequality; the max enforces that
  // after rounding so the bracket is >= 0 and exactly 0 beyond the level.
  // -expm1 keeps precision when the two exponents are close.
  const double reflected = std::max(std::abs(x), std::abs(x - level_) + std::abs(level_));
  const double a = x * x / (2.0 * t_);
  const double b = reflected * reflected / (2.0 * t_);
  return kInvSqrt2Pi / std::sqrt(t_) * std::exp(-a) * -std::expm1(a - b);
}

double JointLaw::atom_mass() const {
  return 1.0 - 2.0 * normal_cdf(-std::abs(level_) / std::sqrt(t_));
}

double joint_density_continuous(const JointLaw& law, double x, double y) { return law.continuous(x, y); }
double joint_density_atom(const JointLaw& law, double x) { return law.atom(x); }

}  // namespace kign
