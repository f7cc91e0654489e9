#pragma once

// Scalar special functions and the joint law of Brownian motion and its
// local time.
//
// Density convention for JointLaw (started at B_0 = 0):
//   continuous(x, y)  is a density per unit dx dy on y > 0,
//   atom(x)           is a density per unit dx of the event {L_t = 0}.
// Integrating continuous over y > 0 and adding atom gives the N(0, t)
// density of B_t.

namespace kign {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

// Standard normal cdf, absolute error well below 1e-12 (libm erfc).
double normal_cdf(double x);

double normal_pdf(double x);

// sgn with sgn(0) = 0.
constexpr double sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

class JointLaw {
 public:
  // t > 0 and finite level, otherwise DomainError.
  JointLaw(double t, double level);

  double t() const noexcept { return t_; }
  double level() const noexcept { return level_; }

  // Density of (B_t in dx, L_t^level in dy) for y > 0. DomainError if y <= 0.
  double continuous(double x, double y) const;

  // Density of (B_t in dx, L_t^level = 0). Zero when level = 0 and when x
  // lies beyond the level on the far side from the origin.
  double atom(double x) const;

  // Mass of {L_t^level = 0} in closed form: P(B never reaches level by t).
  double atom_mass() const;

 private:
  double t_;
  double level_;
};

// Free-function spellings of the two branches.
double joint_density_continuous(const JointLaw& law, double x, double y);
double joint_density_atom(const JointLaw& law, double x);

}  // namespace kign
