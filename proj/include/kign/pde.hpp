#pragma once

// Finite-difference solver for d_t u = 1/2 u_xx + g(t, u, u_x) on a bounded
// interval, used as an independent oracle for the closed forms.
//
// Scheme: backward Euler for the diffusion (constant tridiagonal system,
// factored once) plus an explicit first-order upwind treatment of the
// first-order term built from the previous time level. Dirichlet data at
// both ends is the heat-kernel evolution of the initial condition.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kign {

class Grid1D {
 public:
  // x_min < x_max, nx >= 3, nt >= 1, T > 0; ConfigError otherwise.
  Grid1D(double x_min, double x_max, int nx, int nt, double T);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  int nx() const noexcept { return nx_; }
  int nt() const noexcept { return nt_; }
  double T() const noexcept { return T_; }
  double dx() const noexcept { return (x_max_ - x_min_) / (nx_ - 1); }
  double dt() const noexcept { return T_ / nt_; }
  double mid() const noexcept { return 0.5 * (x_min_ + x_max_); }
  // Node j, placed symmetrically about mid() so that mirrored nodes are exact
  // negatives of each other relative to the midpoint.
  double x(int j) const noexcept { return mid() + (j - 0.5 * (nx_ - 1)) * dx(); }

  Grid1D refined(int space_factor, int time_factor) const;

 private:
  double x_min_, x_max_;
  int nx_, nt_;
  double T_;
};

// Grid centered on c with half-width support_radius + 8 sqrt(T).
Grid1D centered_grid(double c, double T, double support_radius, int nx = 2001, int nt = 4000);

struct PdeOptions {
  // Keep every stride-th time level (nt must be a multiple). The last level
  // is always kept.
  int store_stride = 1;
};

class PdeSolution {
 public:
  PdeSolution(Grid1D grid, int stride);

  const Grid1D& grid() const noexcept { return grid_; }
  int stride() const noexcept { return stride_; }
  int rows() const noexcept { return rows_; }
  double time(int row) const noexcept { return row * stride_ * grid_.dt(); }

  std::span<const double> u_row(int row) const;
  std::span<const double> w_row(int row) const;
  std::span<double> u_row(int row);
  std::span<double> w_row(int row);
  std::span<const double> u() const noexcept { return u_; }
  std::span<const double> w() const noexcept { return w_; }

  // Linear interpolation in x at a stored time level; DomainError off-grid.
  double u_at(int row, double x) const;
  double w_at(int row, double x) const;
  // Index of the node nearest x.
  int nearest(double x) const;

 private:
  friend void fill_w(PdeSolution&);
  Grid1D grid_;
  int stride_;
  int rows_;
  std::vector<double> u_;
  std::vector<double> w_;
};

using InitialCondition = std::function<double(double)>;

// Which one-sided estimate of |u_x| keeps the scheme monotone.
enum class DriverMonotonicity { NondecreasingInAbsZ, NonincreasingInAbsZ };

struct DriverSpec {
  // g(t, y, z) with g(t, y, z) = g(t, y, -z) and g(t, y, 0) = 0; it is
  // evaluated at z = the upwinded magnitude of u_x (always >= 0).
  std::function<double(double, double, double)> g;
  double lipschitz_z;
  DriverMonotonicity monotonicity = DriverMonotonicity::NondecreasingInAbsZ;
};

// d_t u = 1/2 u_xx + k |u_x|. Requires |k| dt / dx <= 1/2 (ConfigError).
PdeSolution solve_k_ignorance(const InitialCondition& phi, double k, const Grid1D& grid, const PdeOptions& opts = {});

// Linear d_t v = 1/2 v_xx + drift_sign * k * sgn(x - c) v_x.
PdeSolution solve_sign_drift(const InitialCondition& phi, double k, double c, int drift_sign, const Grid1D& grid,
                             const PdeOptions& opts = {});

PdeSolution solve_generic_symmetric_driver(const InitialCondition& phi, const DriverSpec& driver, const Grid1D& grid,
                                           const PdeOptions& opts = {});

// w = u_x from stored u: central differences inside, one-sided at the ends.
std::vector<double> extract_w(const PdeSolution& sol);

// Sup-norm gap at the final time between the solve on `grid` and on the
// grid with dx/2 and dt/4, over the central half of the domain.
double refinement_gap(const InitialCondition& phi, double k, const Grid1D& grid);

// u and w at the final time on `grid` and extrapolated as 2 fine - coarse
// with the dx/2, dt/4 grid, which removes the leading O(dx) upwind error.
struct ExtrapolatedPoint {
  double x;
  double u;
  double w;
  double u_coarse;
  double w_coarse;
};
std::vector<ExtrapolatedPoint> k_ignorance_extrapolated(const InitialCondition& phi, double k, const Grid1D& grid,
                                                        const std::vector<double>& xs);

// E[phi(x + sqrt(s) xi)]: the k = 0 solution, used for boundary data.
double heat_evolve(const InitialCondition& phi, double s, double x);

}  // namespace kign
