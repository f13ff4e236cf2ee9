#pragma once
// Diagonalization of quadratic fermion operators
//   F = sum_ij a_ij c+_i c_j + (1/2) sum_ij (b_ij c+_i c+_j + h.c.) + const
// with a hermitian and b antisymmetric. The doubled (Nambu) matrix
//   [[a, b], [-conj(b), -conj(a)]]
// is hermitian and particle-hole symmetric; selecting one eigenvector per
// symmetry pair with nonnegative eigenvalue yields quasiparticle energies
// lambda >= 0, transformation blocks (u, w) obeying the canonical identities
// u+u + w+w = 1 and u^T w + w^T u = 0, and the ground-state energy
//   mu = (tr a - sum lambda) / 2 + const.
// Zero modes are resolved by preferring, within the kernel, the combinations
// with the largest particle-block norm; an unresolvable tie throws.

#include <Eigen/Dense>

#include "qed/ladder.hpp"

namespace qed {

struct QuadraticFermion {
  Eigen::MatrixXcd a;  // hermitian hopping block
  Eigen::MatrixXcd b;  // antisymmetric pairing block
  cd constant{0.0, 0.0};
};

// Reads the coefficient blocks off a quadratic ladder polynomial over
// n_modes modes. Throws when the operator has terms of other degrees or
// violates hermiticity by more than herm_tol; the returned blocks are
// exactly hermitian/antisymmetric (violations within tolerance are averaged
// away).
QuadraticFermion extract_quadratic(const FermionOperator& op, int n_modes,
                                   double herm_tol = 1e-9);

struct BogoliubovResult {
  Eigen::VectorXd lambda;  // quasiparticle energies, ascending, all >= 0
  // Particle and hole blocks of the selected eigenvectors, one column per
  // quasiparticle mode.
  Eigen::MatrixXcd u, w;
  double ground_energy;     // mu as above
  double canonical_defect;  // worst violation of the canonical identities
};

BogoliubovResult diagonalize_quadratic(const QuadraticFermion& q);

}  // namespace qed
