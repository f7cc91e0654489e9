#pragma once

// Monte Carlo verification engine.
//
// Each path is driven by its own counter-based stream keyed by
// (seed, path index), and per-path values are reduced by a fixed pairwise
// tree, so estimates do not depend on the number of OpenMP threads. The
// namespace `reference` holds a serial implementation that materializes
// every path; the tests require it to agree with the parallel kernels bit
// for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "kign/model.hpp"

namespace kign {

struct PathConfig {
  int n_steps = 2000;
  std::int64_t n_paths = 200000;
  std::uint64_t seed = 20240601;
  double T = 1.0;

  // ConfigError unless all fields are positive.
  void validate() const;
  double dt() const noexcept { return T / n_steps; }
  PathConfig with_horizon(double horizon) const;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_paths = 0;
  int n_steps = 0;
  std::int64_t rejected = 0;
};

// Brownian path start + cumulative N(0, dt) increments, n_steps + 1 points.
std::vector<double> simulate_path(const PathConfig& cfg, double start, std::uint64_t path_index);

struct TanakaTerms {
  double ito_sum;     // sum_i sgn(B_i - level) (B_{i+1} - B_i)
  double local_time;  // |B_n - level| - |B_0 - level| - ito_sum, clamped at 0
};

TanakaTerms tanaka_terms(std::span<const double> path, double level);
double local_time_tanaka(std::span<const double> path, double level);
// The same quantity accumulated step by step from the level crossings:
// 2|B_{i+1} - level| on every step that changes side, |B_{i+1} - level| on
// steps starting exactly at the level.
double local_time_crossings(std::span<const double> path, double level);

// Y_t at B_t = h: mean of phi(B_T) exp(+-k(|B_T - c| - |h - c| - L_T^c) - k^2 (T-t)/2)
// over paths of length T - t started at h. NumericalError if more than 0.1%
// of path weights are non-finite.
Estimate estimate_Y(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                    const PathConfig& cfg);

enum class HitMonitor {
  // Killed only when a grid point lands on or across c (biased away from 0).
  GridPoints,
  // Additionally weights each surviving step by the Brownian-bridge
  // probability of not touching c in between.
  BrownianBridge,
};

enum class WVariance {
  Plain,
  // Uses the unstopped weight U = N phi'(B_{T-t} + x) as a control: its mean
  // is a heat-kernel integral, so only the stopped part is sampled,
  // E[U] - U 1{hit}. Same expectation, much smaller variance away from c.
  StoppedPartOnly,
};

// w(T - t, x) = E[N phi'(B_{T-t} + x) 1{no hit of c}] with
// N = exp(+-k sum sgn(B + x - c) dB - k^2 (T-t)/2). The payoff must have a
// pointwise derivative.
Estimate estimate_w(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double x,
                    const PathConfig& cfg, HitMonitor monitor = HitMonitor::GridPoints,
                    WVariance variance = WVariance::Plain);

// Grid-monitored estimate_w at cfg.n_steps and factor * cfg.n_steps from the
// same Brownian paths; `shift` is the pathwise fine - coarse difference.
struct RefinementPair {
  Estimate coarse;
  Estimate fine;
  Estimate shift;
};
RefinementPair estimate_w_refinement(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double x,
                                     const PathConfig& cfg, int factor = 4, WVariance variance = WVariance::Plain);

struct PathRecord {
  std::int64_t path;
  double b_T;
  double l_T;
  double weight;
};
// Per-path terminal state and weight behind estimate_Y, in path order.
std::vector<PathRecord> y_path_records(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                                       const PathConfig& cfg);

// Fixed-topology pairwise sum.
double pairwise_sum(std::span<const double> values);
// Mean and standard error of the finite entries; non-finite entries count as rejected.
Estimate summarize(std::span<const double> values, int n_steps);

namespace reference {

Estimate estimate_Y(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double h,
                    const PathConfig& cfg);
Estimate estimate_w(const KIgnoranceModel& model, const TerminalPayoff& payoff, double t, double x,
                    const PathConfig& cfg, HitMonitor monitor = HitMonitor::GridPoints,
                    WVariance variance = WVariance::Plain);

}  // namespace reference

}  // namespace kign
