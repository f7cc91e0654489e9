// Regenerates docs/formula_errata.csv: the uncorrected quadratic-payoff Y and Z
// expressions next to the verified closed form and both numerical oracles.
//
//   errata_table [output.csv]

#include <cmath>
#include <fstream>
#include <iostream>

#include "kign/closed_form.hpp"
#include "kign/csv.hpp"
#include "kign/mc.hpp"
#include "kign/pde.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "formula_errata.csv";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "cannot open " << path << '\n';
    return 3;
  }
  kign::CsvWriter csv(out, {"k", "T", "t", "h", "printed_Y", "verified_Y", "pde_Y", "mc_Y", "mc_se", "printed_Z",
                            "verified_Z", "pde_w", "deviation_Y", "deviation_Z"});
  const kign::Grid1D grid = kign::centered_grid(0.0, 1.0, 1.0);
  const auto quadratic = kign::TerminalPayoff::quadratic();
  const kign::PathConfig cfg;
  for (double k : {0.25, 0.5, 1.0}) {
    const kign::KIgnoranceModel model(k, 1.0);
    const auto pde = kign::k_ignorance_extrapolated([](double x) { return x * x; }, k, grid, {0.0, 0.5, 1.0});
    for (const auto& p : pde) {
      const auto e = kign::estimate_Y(model, quadratic, 0.0, p.x, cfg);
      const double py = kign::quadratic_Y_printed(model, 0.0, p.x);
      const double pz = kign::quadratic_Z_printed(model, 0.0, p.x);
      csv.cell(k).cell(1.0).cell(0.0).cell(p.x);
      csv.cell(py).cell(kign::quadratic_Y(model, 0.0, p.x)).cell(p.u).cell(e.mean).cell(e.std_error);
      csv.cell(pz).cell(kign::quadratic_Z(model, 0.0, p.x)).cell(p.w);
      csv.cell(py - p.u).cell(pz - p.w);
      csv.end_row();
    }
  }
  return out ? 0 : 3;
}
