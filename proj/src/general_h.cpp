#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "kign/closed_form.hpp"
#include "kign/core_math.hpp"
#include "kign/errors.hpp"

namespace kign {

namespace {

using boost::math::quadrature::gauss_kronrod;

template <class F>
double adaptive(F&& f, double lo, double hi, const QuadratureOptions& opts, const char* what) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 31>::integrate(f, lo, hi, opts.max_depth, opts.rel_tol, &error, &l1);
  // The tolerance is relative to the L1 norm; allow a little slack before
  // declaring failure since the estimate is pessimistic.
  const double budget = std::max(100.0 * opts.rel_tol * l1, 1e-15);
  if (!std::isfinite(value) || error > budget) {
    std::ostringstream os;
    os << what << ": quadrature on [" << lo << ", " << hi << "] reached error " << error << " (budget " << budget
       << ")";
    throw NumericalError(os.str(), error, budget);
  }
  return value;
}

// int_x f(x) e^{kappa(|x - l| - |l|)} [ int_{y>0} e^{-kappa y} p(x, y) dy + atom(x) ] dx
// over [-reach, reach] split at the given breakpoints.
template <class F>
double integrate_against_law(F&& f, const JointLaw& law, double kappa, std::vector<double> breaks,
                             const QuadratureOptions& opts) {
  const double sq = std::sqrt(law.t());
  const double reach = opts.x_sigmas * sq + std::abs(kappa) * law.t();
  const double y_max = opts.y_sigmas * sq + std::abs(kappa) * law.t();
  const double level = law.level();

  breaks.push_back(level);
  std::vector<double> nodes{-reach, reach};
  for (double b : breaks) {
    if (b > -reach && b < reach) nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto outer = [&](double x) {
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    auto inner = [&](double y) { return std::exp(-kappa * y) * law.continuous(x, y); };
    const double cont = adaptive(inner, 0.0, y_max, opts, "local-time integral");
    return fx * std::exp(kappa * (std::abs(x - level) - std::abs(level))) * (cont + law.atom(x));
  };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    total += adaptive(outer, nodes[i], nodes[i + 1], opts, "position integral");
  }
  return total;
}

double finite_center(const TerminalPayoff& payoff) {
  const double c = payoff.center();
  if (!std::isfinite(c)) throw DomainError("general_H: payoff " + payoff.name() + " has no finite center");
  return c;
}

}  // namespace

double general_H(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                 const QuadratureOptions& opts) {
  const double tau = model.horizon_from(t);
  const double c = finite_center(payoff);
  const double kappa = direction_sign(payoff.direction()) * model.k();
  const JointLaw law(tau, c - h);

  std::vector<double> breaks;
  for (double kink : payoff.kinks()) breaks.push_back(kink - h);

  const double integral = integrate_against_law([&](double x) { return payoff(x + h); }, law, kappa, breaks, opts);
  return std::exp(-0.5 * model.k() * model.k() * tau) * integral;
}

double general_Z(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                 const QuadratureOptions& opts) {
  const double step = std::max(1e-5, 1e-7 * std::abs(h));
  auto central = [&](double d) {
    return (general_H(model, payoff, t, h + d, opts) - general_H(model, payoff, t, h - d, opts)) / (2.0 * d);
  };
  const double fine = central(step);
  const double coarse = central(2.0 * step);
  return (4.0 * fine - coarse) / 3.0;
}

double y0_integral(const KIgnoranceModel& model, const TerminalPayoff& payoff, const QuadratureOptions& opts) {
  const double c = finite_center(payoff);
  const double kappa = direction_sign(payoff.direction()) * model.k();
  const JointLaw law(model.T(), c);
  const double integral = integrate_against_law([&](double x) { return payoff(x); }, law, kappa, payoff.kinks(), opts);
  return std::exp(-0.5 * model.k() * model.k() * model.T()) * integral;
}

}  // namespace kign
