#pragma once

// Invariant and cross-oracle batteries behind `kignorance verify`, plus the
// scanning helpers the acceptance tests share with them.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "kign/model.hpp"
#include "kign/pde.hpp"

namespace kign {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  // Inputs and achieved values; deterministic for fixed options.
  std::string detail;
};

struct VerifyOptions {
  // Reduced grids and path counts so that the whole battery stays well
  // under two minutes on one core.
  bool quick = false;
  std::uint64_t seed = 20240601;
};

// Suites: density, signs, oracles, pricing, all. ConfigError on an unknown name.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts);
const std::vector<std::string>& suite_names();

// "[PASS] suite/name: detail" per check; returns true iff every check passed.
bool print_report(std::ostream& out, const std::vector<CheckResult>& results);

// --- shared helpers ---------------------------------------------------------

struct DensityCheck {
  double continuous_mass;
  double atom_mass;
  double total_mass;
  // max over xs of |int_y continuous + atom - N(0,t) density|
  double marginal_error;
};
DensityCheck check_joint_law(double t, double level, const std::vector<double>& xs);

struct SignScan {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  // max |Z| over the points with h = c
  double max_nodal = 0.0;
  // first offending point, for reporting
  double bad_t = 0.0;
  double bad_h = 0.0;
};

// Z from closed_form::solve on t in {0, T/nt, ..., (nt-1)T/nt} and nh points
// spread evenly over [c - half_width, c + half_width] (nh odd puts one on c).
// For an infinite center the h points are spread around `anchor`.
SignScan scan_closed_form_signs(const KIgnoranceModel& model, const TerminalPayoff& payoff, int nt, int nh,
                                double half_width, double anchor = 0.0);

// Discrete sign law on PDE-extracted w: at every stored level with PDE time
// >= min_time and every node with 2 dx < |x - c| <= max_offset, w must be
// nonzero with sign direction * sgn(x - c). max_nodal reports |w| at the
// node nearest c.
SignScan scan_pde_signs(const PdeSolution& sol, double c, double direction, double min_time, double max_offset);

}  // namespace kign
