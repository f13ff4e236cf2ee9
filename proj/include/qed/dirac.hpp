#pragma once
// Single-particle Dirac kinematics on the momentum lattice: alpha/beta
// matrices, positive/negative-energy spinor bases, transverse polarization
// frames, and the 16x16 kernel that couples two spinor-component bilinears in
// the static fermion-fermion interaction.
//
// Conventions frozen here (tests depend on them):
//  * u_1(0) = (1,0,0,0); the spinor quadruple {u_1,u_2,v_1,v_2} is orthonormal
//    and satisfies the completeness identity
//      sum_l u_l(p) u_l(p)^+  +  sum_l v_l(-p) v_l(-p)^+  =  1.
//  * Polarization frames are right-handed (det [e_1 e_2 k/|k|] = +1),
//    transverse, and on the +-e3 axis use e_1 = (0,-1,0). For k in the closed
//    all-nonpositive octant (off axis) the frame is defined by swapping the
//    frame at -k, which makes e_1(-k) = e_2(k), e_2(-k) = e_1(k) hold exactly
//    for k in the closed all-nonnegative octant off the e3 axis.

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "qed/lattice.hpp"

namespace qed {

using cd = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<cd, 16, 16>;

// Dirac matrices in the standard representation; a in {0,1,2}.
const Mat4& alpha(int a);
const Mat4& beta();
Mat4 alpha_dot(const Vec3& v);  // v[0]*alpha(0) + v[1]*alpha(1) + v[2]*alpha(2)

inline double omega(const Vec3& p, double mass) {
  return std::sqrt(dot(p, p) + mass * mass);
}

// Spinor bases; ell in {0,1}. u solves (alpha.p + beta m) u = omega u and
// v(-p) spans the -omega eigenspace of alpha.p + beta m.
Spinor u_spinor(int ell, const Vec3& p, double mass);
Spinor v_spinor(int ell, const Vec3& p, double mass);

// Transverse polarization pair for k != 0 (throws std::invalid_argument on 0).
std::array<Vec3, 2> polarization_pair(const Vec3& k);
inline Vec3 polarization(const Vec3& k, int j) { return polarization_pair(k)[j]; }

// Hermitian traceless 4x4 vertex combining both polarization labels,
//   (alpha.e_1(k) + alpha.e_2(k)) / (2 V |k|^2),
// the coefficient matrix of the quadratic remainder channels.
Mat4 vertex_matrix(const Vec3& k, double volume);

// 16x16 kernel  1 (x) 1 - (1/2) sum_j (alpha.e_j) (x) (alpha.e_j)  with row
// index 4*a+b and column index 4*a'+b'. Hermitian, positive semidefinite,
// eigenvalues {0 (x4), 1 (x8), 2 (x4)} independently of k.
Mat16 pair_interaction_kernel(const Vec3& k);

}  // namespace qed
