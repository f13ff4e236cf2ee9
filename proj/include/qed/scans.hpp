#pragma once
// Quantitative scans: infrared lattice sums against their continuum limit,
// the cutoff scan of the static-interaction norm under the trivializing
// coupling law, and the closed-form charge-renormalization flow.

#include <string>
#include <vector>

#include "qed/dressing.hpp"

namespace qed::scans {

// (1/V) sum of 1/|k|^2 over the nonzero momenta of the cubic grid with
// spacing 2 pi / length that lie in the closed ball |k| <= radius.
double ir_sum(double length, double radius);
// Same sum with every term weighted by the largest absolute component of the
// polarization vector at k, maximized over the two polarization labels.
// Each weight is at most 1, so the value never exceeds ir_sum term by term.
double polarization_ir_sum(double length, double radius);
// Continuum value of the unweighted sum: radius / (2 pi^2).
double ir_sum_analytic(double radius);

struct IrPoint {
  double length;      // box side L; volume = L^3
  double unweighted;  // ir_sum(L, radius)
  double weighted;    // polarization_ir_sum(L, radius)
};
// One row per box side, ascending; radius held fixed.
std::vector<IrPoint> ir_scan(const std::vector<double>& lengths, double radius);

// Charge-renormalization flow at one loop:
//   z3 = 1 - (coupling^2 / 12 pi^2) log(cutoff_scale / mass^2),
//   bare_coupling_squared = coupling^2 / z3.
// Throws std::domain_error at or past the pole (z3 <= 0), reporting the
// cutoff scale where the flow blows up; the division is never performed.
struct ChargeFlow {
  double z3;
  double bare_coupling_squared;
};
ChargeFlow charge_flow(double coupling, double cutoff_scale, double mass);
// Cutoff scale at which z3 crosses zero for the given coupling.
double charge_flow_pole(double coupling, double mass);

// Named small lattices for cutoff scans, keyed by point count:
//   3 -> the collinear triple {0, +e3, -e3},
//   7 -> the unit ball,  19 -> the sqrt(2) ball,  27 -> the unit box,
// all at box side 2 pi (unit momentum spacing).
Lattice scan_lattice(int size);

struct TrivialityPoint {
  int lattice_size;         // number of lattice points
  double coupling_squared;  // coupling^2 entering this row
  double static_norm;       // || coulomb - current-current energy ||
  double remainder_norm;    // || sum of the four truncation channels' difference ||
};
struct TrivialityScan {
  // Rows under the trivializing law coupling^2 = size^{-(1+epsilon)/3} e_ren^2
  // and rows at the fixed coupling e_ren, same grid.
  std::vector<TrivialityPoint> scaled;
  std::vector<TrivialityPoint> unscaled;
  std::string trend;  // "decreasing" | "non-decreasing" | "insufficient points"
};

// Evaluates the static-interaction norm across lattice sizes. Norms are
// spectral norms of the operator compressed onto the charge-0, momentum-0,
// particle-capped sector (the sector holding the vacuum); both runs reuse one
// unit-coupling assembly because every term carries an exact coupling^2
// prefactor. The trend label reports the scaled run.
TrivialityScan triviality_scan(const std::vector<int>& sizes, double e_ren,
                               double epsilon, double mass,
                               int max_particles = 6);

}  // namespace qed::scans
