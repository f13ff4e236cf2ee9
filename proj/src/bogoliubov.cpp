#include "qed/bogoliubov.hpp"

#include <bit>
#include <stdexcept>

namespace qed {

QuadraticFermion extract_quadratic(const FermionOperator& op, int n_modes,
                                   double herm_tol) {
  QuadraticFermion q;
  q.a = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  q.b = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  Eigen::MatrixXcd b_conj = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  for (const auto& [m, c] : op.terms()) {
    const int nc = std::popcount(m.create);
    const int na = std::popcount(m.annihilate);
    if (nc == 0 && na == 0) {
      q.constant += c;
      continue;
    }
    if (nc == 1 && na == 1) {
      q.a(std::countr_zero(m.create), std::countr_zero(m.annihilate)) += c;
      continue;
    }
    if (nc == 2 && na == 0) {
      // c+_i c+_j with i < j contributes b_ij = coeff, b_ji = -coeff.
      int i = std::countr_zero(m.create);
      int j = 63 - std::countl_zero(m.create);
      q.b(i, j) += c;
      q.b(j, i) -= c;
      continue;
    }
    if (nc == 0 && na == 2) {
      // Canonical annihilation order is descending: mask {i < j} is c_j c_i,
      // the adjoint of c+_i c+_j.
      int i = std::countr_zero(m.annihilate);
      int j = 63 - std::countl_zero(m.annihilate);
      b_conj(i, j) += c;
      b_conj(j, i) -= c;
      continue;
    }
    throw std::invalid_argument(
        "extract_quadratic: operator has a term of degree != 0, 2");
  }
  if (std::abs(q.constant.imag()) > herm_tol)
    throw std::invalid_argument("extract_quadratic: constant is not real");
  if ((q.a - q.a.adjoint()).norm() > herm_tol)
    throw std::invalid_argument("extract_quadratic: hopping block not hermitian");
  if ((b_conj - q.b.conjugate()).norm() > herm_tol)
    throw std::invalid_argument(
        "extract_quadratic: pair annihilation block is not the conjugate of "
        "the pair creation block");
  q.a = 0.5 * (q.a + q.a.adjoint()).eval();
  return q;
}

BogoliubovResult diagonalize_quadratic(const QuadraticFermion& q) {
  const int n = static_cast<int>(q.a.rows());
  Eigen::MatrixXcd hn(2 * n, 2 * n);
  hn.topLeftCorner(n, n) = q.a;
  hn.topRightCorner(n, n) = q.b;
  hn.bottomLeftCorner(n, n) = -q.b.conjugate();
  hn.bottomRightCorner(n, n) = -q.a.conjugate();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hn);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const Eigen::MatrixXcd& vec = solver.eigenvectors();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double ztol = 1e-12 * scale;

  // One eigenvector per particle-hole pair: all strictly positive
  // eigenvalues, plus half of the kernel.
  Eigen::MatrixXcd half(2 * n, n);
  Eigen::VectorXd lambda(n);
  int filled = 0;
  std::vector<int> zero_cols;
  for (int i = 0; i < 2 * n; ++i) {
    if (ev[i] > ztol) {
      if (filled >= n)
        throw std::runtime_error("diagonalize_quadratic: spectrum not symmetric");
      half.col(filled) = vec.col(i);
      lambda[filled] = ev[i];
      ++filled;
    } else if (ev[i] >= -ztol) {
      zero_cols.push_back(i);
    }
  }
  const int need = n - filled;
  if (static_cast<int>(zero_cols.size()) != 2 * need)
    throw std::runtime_error("diagonalize_quadratic: kernel dimension mismatch");
  if (need > 0) {
    // Within the kernel, select the combinations with the largest
    // particle-block norm; the particle-hole image of such a combination has
    // the complementary norm, so distinct selected vectors stay compatible.
    Eigen::MatrixXcd z(2 * n, 2 * need);
    for (int i = 0; i < 2 * need; ++i) z.col(i) = vec.col(zero_cols[i]);
    Eigen::MatrixXcd overlap =
        z.topRows(n).adjoint() * z.topRows(n);  // = Z^+ P_particle Z
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sel(overlap);
    for (int i = 0; i < need; ++i) {
      double mu = sel.eigenvalues()[2 * need - 1 - i];
      if (mu < 0.5 + 1e-8)
        throw std::runtime_error(
            "diagonalize_quadratic: zero-mode tie cannot be resolved by the "
            "particle-block norm");
      half.col(filled + i) = z * sel.eigenvectors().col(2 * need - 1 - i);
      lambda[filled + i] = 0.0;
    }
  }

  // Sort ascending by quasiparticle energy.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lambda[a] < lambda[b]; });

  BogoliubovResult res;
  res.lambda.resize(n);
  res.u.resize(n, n);
  res.w.resize(n, n);
  for (int i = 0; i < n; ++i) {
    res.lambda[i] = lambda[order[i]];
    res.u.col(i) = half.topRows(n).col(order[i]);
    res.w.col(i) = half.bottomRows(n).col(order[i]);
  }
  const double c1 =
      (res.u.adjoint() * res.u + res.w.adjoint() * res.w -
       Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  const double c2 = (res.u.transpose() * res.w + res.w.transpose() * res.u)
                        .cwiseAbs()
                        .maxCoeff();
  res.canonical_defect = std::max(c1, c2);
  res.ground_energy =
      0.5 * (q.a.real().trace() - res.lambda.sum()) + q.constant.real();
  return res;
}

}  // namespace qed
