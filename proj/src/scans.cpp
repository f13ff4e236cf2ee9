#include "qed/scans.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qed/eigensolve.hpp"

namespace qed::scans {

namespace {

// Enumerates the nonzero grid momenta inside the ball and accumulates
// weight(k) / |k|^2; the grid need not be materialized as a Lattice.
template <class Weight>
double ball_sum(double length, double radius, Weight weight) {
  if (length <= 0.0 || radius <= 0.0)
    throw std::invalid_argument("ball_sum: length and radius must be positive");
  const double f = 2.0 * M_PI / length;
  const double r2 = (radius / f) * (radius / f) * (1.0 + 1e-12);
  const int n = static_cast<int>(std::floor(std::sqrt(r2)));
  double total = 0.0;
  for (int a = -n; a <= n; ++a)
    for (int b = -n; b <= n; ++b)
      for (int c = -n; c <= n; ++c) {
        const double q = double(a) * a + double(b) * b + double(c) * c;
        if (q == 0.0 || q > r2) continue;
        const Vec3 k{f * a, f * b, f * c};
        total += weight(k) / (f * f * q);
      }
  return total / (length * length * length);
}

double max_abs_component(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

}  // namespace

double ir_sum(double length, double radius) {
  return ball_sum(length, radius, [](const Vec3&) { return 1.0; });
}

double polarization_ir_sum(double length, double radius) {
  double best = 0.0;
  for (int j = 0; j < 2; ++j) {
    double s = ball_sum(length, radius, [j](const Vec3& k) {
      return max_abs_component(polarization(k, j));
    });
    best = std::max(best, s);
  }
  return best;
}

double ir_sum_analytic(double radius) { return radius / (2.0 * M_PI * M_PI); }

std::vector<IrPoint> ir_scan(const std::vector<double>& lengths,
                             double radius) {
  std::vector<IrPoint> out;
  out.reserve(lengths.size());
  double prev = 0.0;
  for (double l : lengths) {
    if (l <= prev)
      throw std::invalid_argument("ir_scan: lengths must be ascending");
    prev = l;
    out.push_back({l, ir_sum(l, radius), polarization_ir_sum(l, radius)});
  }
  return out;
}

ChargeFlow charge_flow(double coupling, double cutoff_scale, double mass) {
  if (coupling <= 0.0 || cutoff_scale <= 0.0 || mass <= 0.0)
    throw std::invalid_argument("charge_flow: inputs must be positive");
  const double e2 = coupling * coupling;
  const double z3 =
      1.0 - e2 / (12.0 * M_PI * M_PI) * std::log(cutoff_scale / (mass * mass));
  if (z3 <= 0.0) {
    std::ostringstream msg;
    msg << "charge_flow: z3 = " << z3 << " <= 0 at cutoff scale "
        << cutoff_scale << "; the flow has a pole at scale "
        << charge_flow_pole(coupling, mass)
        << " and the bare coupling is undefined at or past it";
    throw std::domain_error(msg.str());
  }
  return {z3, e2 / z3};
}

double charge_flow_pole(double coupling, double mass) {
  return mass * mass * std::exp(12.0 * M_PI * M_PI / (coupling * coupling));
}

Lattice scan_lattice(int size) {
  const double length = 2.0 * M_PI;
  switch (size) {
    case 1:
      return Lattice::from_points(length, {{0, 0, 0}});
    case 3:
      return Lattice::from_points(length, {{0, 0, 0}, {0, 0, 1}, {0, 0, -1}});
    case 7:
      return Lattice::ball(length, 1.0 + 1e-9);
    case 19:
      return Lattice::ball(length, std::sqrt(2.0) + 1e-9);
    case 27:
      return Lattice::box(length, 1);
    default:
      throw std::invalid_argument(
          "scan_lattice: supported sizes are 1, 3, 7, 19, 27");
  }
}

namespace {

// Spectral norm (largest |eigenvalue|) of a hermitian operator compressed
// onto the given sector basis, by power iteration on the CSR form.
double sector_norm(const FermionOperator& op, const FermionBasis& basis) {
  CsrMatrix m = CsrMatrix::from(fermion_matrix(op, basis));
  PowerOptions opt;
  auto res = power_max_eigenvalue(m, opt);
  return std::abs(res.value);
}

}  // namespace

TrivialityScan triviality_scan(const std::vector<int>& sizes, double e_ren,
                               double epsilon, double mass,
                               int max_particles) {
  if (epsilon <= 0.0)
    throw std::invalid_argument("triviality_scan: epsilon must be positive");
  TrivialityScan out;
  for (int size : sizes) {
    const Lattice lat = scan_lattice(size);
    const FermionBasis basis = FermionBasis::filtered(
        lat, SectorFilter{0, Vec3i{0, 0, 0}, max_particles});
    const ModelParams unit{mass, 1.0};
    const double static_unit = sector_norm(static_interaction(lat, unit), basis);
    const auto cur = current_truncation_terms(lat, unit);
    const auto coul = coulomb_truncation_terms(lat, unit);
    FermionOperator remainder;
    for (int i = 0; i < 4; ++i) remainder += cur[i] - coul[i];
    const double remainder_unit = sector_norm(remainder, basis);

    // Every term of both operators carries coupling^2, so one unit-coupling
    // norm evaluation serves both runs exactly.
    const double e2_flat = e_ren * e_ren;
    const double e2_scaled =
        std::pow(static_cast<double>(size), -(1.0 + epsilon) / 3.0) * e2_flat;
    out.scaled.push_back(
        {size, e2_scaled, e2_scaled * static_unit, e2_scaled * remainder_unit});
    out.unscaled.push_back(
        {size, e2_flat, e2_flat * static_unit, e2_flat * remainder_unit});
  }
  if (out.scaled.size() < 2) {
    out.trend = "insufficient points";
  } else {
    bool dec = true;
    for (std::size_t i = 1; i < out.scaled.size(); ++i)
      dec = dec && out.scaled[i].static_norm < out.scaled[i - 1].static_norm;
    out.trend = dec ? "decreasing" : "non-decreasing";
  }
  return out;
}

}  // namespace qed::scans
