#include "kign/pde.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "kign/core_math.hpp"
#include "kign/errors.hpp"

namespace kign {

void fill_w(PdeSolution& sol);

Grid1D::Grid1D(double x_min, double x_max, int nx, int nt, double T)
    : x_min_(x_min), x_max_(x_max), nx_(nx), nt_(nt), T_(T) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw ConfigError("Grid1D: need finite x_min < x_max");
  }
  if (nx < 3) throw ConfigError("Grid1D: need nx >= 3");
  if (nt < 1) throw ConfigError("Grid1D: need nt >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("Grid1D: need T > 0");
}

Grid1D Grid1D::refined(int space_factor, int time_factor) const {
  return Grid1D(x_min_, x_max_, (nx_ - 1) * space_factor + 1, nt_ * time_factor, T_);
}

Grid1D centered_grid(double c, double T, double support_radius, int nx, int nt) {
  if (!std::isfinite(c)) throw ConfigError("centered_grid: center must be finite");
  const double half = std::max(8.0 * std::sqrt(T), support_radius + 8.0 * std::sqrt(T));
  return Grid1D(c - half, c + half, nx, nt, T);
}

PdeSolution::PdeSolution(Grid1D grid, int stride) : grid_(grid), stride_(stride) {
  if (stride < 1 || grid.nt() % stride != 0) throw ConfigError("PdeSolution: nt must be a multiple of store_stride");
  rows_ = grid.nt() / stride + 1;
  u_.assign(static_cast<std::size_t>(rows_) * grid.nx(), 0.0);
  w_.assign(u_.size(), 0.0);
}

std::span<const double> PdeSolution::u_row(int row) const {
  return std::span<const double>(u_).subspan(static_cast<std::size_t>(row) * grid_.nx(), grid_.nx());
}
std::span<const double> PdeSolution::w_row(int row) const {
  return std::span<const double>(w_).subspan(static_cast<std::size_t>(row) * grid_.nx(), grid_.nx());
}
std::span<double> PdeSolution::u_row(int row) {
  return std::span<double>(u_).subspan(static_cast<std::size_t>(row) * grid_.nx(), grid_.nx());
}
std::span<double> PdeSolution::w_row(int row) {
  return std::span<double>(w_).subspan(static_cast<std::size_t>(row) * grid_.nx(), grid_.nx());
}

int PdeSolution::nearest(double x) const {
  const double pos = (x - grid_.x_min()) / grid_.dx();
  return std::clamp(static_cast<int>(std::lround(pos)), 0, grid_.nx() - 1);
}

namespace {

double interpolate(const Grid1D& g, std::span<const double> row, double x) {
  if (!(x >= g.x_min() && x <= g.x_max())) {
    std::ostringstream os;
    os << "PdeSolution: x=" << x << " outside [" << g.x_min() << ", " << g.x_max() << "]";
    throw DomainError(os.str());
  }
  const double pos = (x - g.x_min()) / g.dx();
  const int j = std::min(static_cast<int>(pos), g.nx() - 2);
  const double frac = pos - j;
  return (1.0 - frac) * row[j] + frac * row[j + 1];
}

void derivative_row(std::span<const double> u, std::span<double> w, double dx) {
  const std::size_t n = u.size();
  w[0] = (u[1] - u[0]) / dx;
  for (std::size_t j = 1; j + 1 < n; ++j) w[j] = (u[j + 1] - u[j - 1]) / (2.0 * dx);
  w[n - 1] = (u[n - 1] - u[n - 2]) / dx;
}

// max(D+, -D-, 0): the monotone estimate of |u_x| for terms nondecreasing
// in |u_x|; the mirrored max(-D+, D-, 0) for nonincreasing terms.
inline double upwind_magnitude(const double* u, std::size_t j, double inv_dx, DriverMonotonicity mono) {
  const double forward = (u[j + 1] - u[j]) * inv_dx;
  const double backward = (u[j] - u[j - 1]) * inv_dx;
  if (mono == DriverMonotonicity::NondecreasingInAbsZ) return std::max({forward, -backward, 0.0});
  return std::max({-forward, backward, 0.0});
}

void check_budget(double speed, const Grid1D& g, const char* who) {
  const double cfl = std::abs(speed) * g.dt() / g.dx();
  if (!(cfl <= 0.5)) {
    std::ostringstream os;
    os << who << ": transport budget violated, |k| dt/dx = " << cfl << " > 0.5 (dx=" << g.dx() << ", dt=" << g.dt()
       << ")";
    throw ConfigError(os.str());
  }
}

// Backward-Euler diffusion with constant coefficients and Dirichlet ends.
// term(t, u, j) returns the explicit first-order contribution at node j.
template <class Term>
PdeSolution march(const InitialCondition& phi, const Grid1D& g, const PdeOptions& opts, Term&& term) {
  PdeSolution sol(g, opts.store_stride);
  const int nx = g.nx();
  const double dt = g.dt();
  const double r = dt / (2.0 * g.dx() * g.dx());

  std::vector<double> u(nx), next(nx), rhs(nx);
  for (int j = 0; j < nx; ++j) u[j] = phi(g.x(j));

  // Thomas factorization of tridiag(-r, 1 + 2r, -r) on the interior nodes.
  const int m = nx - 2;
  std::vector<double> upper(m), inv_pivot(m);
  {
    double pivot = 1.0 + 2.0 * r;
    inv_pivot[0] = 1.0 / pivot;
    upper[0] = -r * inv_pivot[0];
    for (int i = 1; i < m; ++i) {
      pivot = (1.0 + 2.0 * r) + r * upper[i - 1];
      inv_pivot[i] = 1.0 / pivot;
      upper[i] = -r * inv_pivot[i];
    }
  }

  const double x_lo = g.x(0);
  const double x_hi = g.x(nx - 1);
  auto store = [&](int step) {
    if (step % opts.store_stride != 0) return;
    auto row = sol.u_row(step / opts.store_stride);
    std::copy(u.begin(), u.end(), row.begin());
  };
  store(0);

  for (int n = 0; n < g.nt(); ++n) {
    const double t = n * dt;
    for (int j = 1; j < nx - 1; ++j) rhs[j] = u[j] + dt * term(t, u.data(), static_cast<std::size_t>(j));

    const double t_next = (n + 1) * dt;
    next[0] = heat_evolve(phi, t_next, x_lo);
    next[nx - 1] = heat_evolve(phi, t_next, x_hi);
    rhs[1] += r * next[0];
    rhs[nx - 2] += r * next[nx - 1];

    // forward sweep on interior index i = j - 1
    double carry = rhs[1] * inv_pivot[0];
    next[1] = carry;
    for (int i = 1; i < m; ++i) {
      carry = (rhs[i + 1] + r * carry) * inv_pivot[i];
      next[i + 1] = carry;
    }
    for (int i = m - 2; i >= 0; --i) next[i + 1] -= upper[i] * next[i + 2];

    u.swap(next);
    store(n + 1);
  }

  fill_w(sol);
  return sol;
}

}  // namespace

void fill_w(PdeSolution& sol) {
  for (int row = 0; row < sol.rows_; ++row) derivative_row(sol.u_row(row), sol.w_row(row), sol.grid_.dx());
}

double PdeSolution::u_at(int row, double x) const { return interpolate(grid_, u_row(row), x); }
double PdeSolution::w_at(int row, double x) const { return interpolate(grid_, w_row(row), x); }

double heat_evolve(const InitialCondition& phi, double s, double x) {
  if (s <= 0.0) return phi(x);
  const double sq = std::sqrt(s);
  auto f = [&](double z) { return phi(x + sq * z) * normal_pdf(z); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -12.0, 12.0, 12, 1e-12);
}

PdeSolution solve_generic_symmetric_driver(const InitialCondition& phi, const DriverSpec& driver, const Grid1D& grid,
                                           const PdeOptions& opts) {
  if (!driver.g) throw ConfigError("solve_generic_symmetric_driver: driver is empty");
  check_budget(driver.lipschitz_z, grid, "solve_generic_symmetric_driver");
  const double inv_dx = 1.0 / grid.dx();
  const auto mono = driver.monotonicity;
  return march(phi, grid, opts, [&](double t, const double* u, std::size_t j) {
    return driver.g(t, u[j], upwind_magnitude(u, j, inv_dx, mono));
  });
}

PdeSolution solve_k_ignorance(const InitialCondition& phi, double k, const Grid1D& grid, const PdeOptions& opts) {
  if (!std::isfinite(k)) throw ConfigError("solve_k_ignorance: k must be finite");
  DriverSpec spec{[k](double, double, double z) { return k * std::abs(z); }, std::abs(k),
                  k >= 0.0 ? DriverMonotonicity::NondecreasingInAbsZ : DriverMonotonicity::NonincreasingInAbsZ};
  try {
    return solve_generic_symmetric_driver(phi, spec, grid, opts);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("solve_k_ignorance: ") + e.what());
  }
}

PdeSolution solve_sign_drift(const InitialCondition& phi, double k, double c, int drift_sign, const Grid1D& grid,
                             const PdeOptions& opts) {
  if (drift_sign != 1 && drift_sign != -1) throw ConfigError("solve_sign_drift: drift_sign must be +1 or -1");
  if (!std::isfinite(k) || !std::isfinite(c)) throw ConfigError("solve_sign_drift: k and c must be finite");
  check_budget(k, grid, "solve_sign_drift");
  const double inv_dx = 1.0 / grid.dx();
  std::vector<double> beta(grid.nx());
  for (int j = 0; j < grid.nx(); ++j) beta[j] = drift_sign * k * sgn(grid.x(j) - c);
  return march(phi, grid, opts, [&](double, const double* u, std::size_t j) {
    const double b = beta[j];
    if (b > 0.0) return b * ((u[j + 1] - u[j]) * inv_dx);
    if (b < 0.0) return b * ((u[j] - u[j - 1]) * inv_dx);
    return 0.0;
  });
}

std::vector<double> extract_w(const PdeSolution& sol) {
  std::vector<double> w(sol.u().size());
  const int nx = sol.grid().nx();
  for (int row = 0; row < sol.rows(); ++row) {
    derivative_row(sol.u_row(row), std::span<double>(w).subspan(static_cast<std::size_t>(row) * nx, nx),
                   sol.grid().dx());
  }
  return w;
}

std::vector<ExtrapolatedPoint> k_ignorance_extrapolated(const InitialCondition& phi, double k, const Grid1D& grid,
                                                        const std::vector<double>& xs) {
  const Grid1D fine = grid.refined(2, 4);
  const auto coarse_sol = solve_k_ignorance(phi, k, grid, {grid.nt()});
  const auto fine_sol = solve_k_ignorance(phi, k, fine, {fine.nt()});
  std::vector<ExtrapolatedPoint> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const double uc = coarse_sol.u_at(1, x);
    const double wc = coarse_sol.w_at(1, x);
    out.push_back({x, 2.0 * fine_sol.u_at(1, x) - uc, 2.0 * fine_sol.w_at(1, x) - wc, uc, wc});
  }
  return out;
}

double refinement_gap(const InitialCondition& phi, double k, const Grid1D& grid) {
  const Grid1D fine = grid.refined(2, 4);
  const auto coarse_sol = solve_k_ignorance(phi, k, grid, {grid.nt()});
  const auto fine_sol = solve_k_ignorance(phi, k, fine, {fine.nt()});
  const auto cu = coarse_sol.u_row(1);
  const auto fu = fine_sol.u_row(1);
  const double quarter = 0.25 * (grid.x_max() - grid.x_min());
  double gap = 0.0;
  for (int j = 0; j < grid.nx(); ++j) {
    if (std::abs(grid.x(j) - grid.mid()) > quarter) continue;
    gap = std::max(gap, std::abs(cu[j] - fu[2 * j]));
  }
  return gap;
}

}  // namespace kign
