#include "qed/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qed {

namespace {

using kernels::active_ops;

Eigen::VectorXcd random_unit(std::int64_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (std::int64_t i = 0; i < n; ++i) v[i] = cd{g(rng), g(rng)};
  v /= v.norm();
  return v;
}

double true_residual(const LinearMap& a, const Eigen::VectorXcd& y,
                     double theta) {
  Eigen::VectorXcd r(y.size());
  a.apply(y.data(), r.data());
  r -= theta * y;
  return r.norm();
}

}  // namespace

Eigen::VectorXd dense_spectrum(const DenseOp& m) {
  Eigen::SelfAdjointEigenSolver<DenseOp> solver(m,
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double dense_min_eigenvalue(const DenseOp& m) {
  if (m.rows() == 0) return 0.0;
  return dense_spectrum(m)[0];
}

IterativeResult lanczos_min_eigenvalue(const LinearMap& a,
                                       const LanczosOptions& opt) {
  IterativeResult res;
  const std::int64_t n = a.dim;
  if (n == 0) return {0.0, 0.0, 0, true};
  if (n <= opt.cycle) {
    // The Krylov basis would span the whole space; solve densely instead.
    DenseOp dense = DenseOp::Zero(n, n);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd col(n);
    for (std::int64_t j = 0; j < n; ++j) {
      e[j] = 1.0;
      a.apply(e.data(), col.data());
      dense.col(j) = col;
      e[j] = 0.0;
    }
    res.value = dense_min_eigenvalue(dense);
    res.matvecs = static_cast<int>(n);
    res.converged = true;
    return res;
  }
  const int m = opt.cycle;
  const int keep = std::min(opt.keep, std::max(1, m - 2));
  std::mt19937_64 rng(opt.seed);

  Eigen::MatrixXcd v(n, m + 1);       // Lanczos/Ritz basis columns
  Eigen::VectorXd diag(m);            // projected-matrix diagonal
  Eigen::VectorXd offdiag(m);         // tridiagonal couplings
  Eigen::VectorXd arrow(m);           // couplings of kept Ritz pairs to v_k
  Eigen::VectorXcd w(n);

  v.col(0) = random_unit(n, rng);
  int k = 0;  // number of kept Ritz vectors at the cycle start

  for (int cycle = 0; cycle < opt.max_cycles; ++cycle) {
    // Grow columns k .. m-1 by the Lanczos recurrence with full
    // reorthogonalization against everything kept so far.
    for (int j = k; j < m; ++j) {
      a.apply(v.col(j).data(), w.data());
      ++res.matvecs;
      if (j == k && k > 0)
        for (int i = 0; i < k; ++i) w -= arrow[i] * v.col(i);
      double alpha =
          std::real(active_ops().dot(v.col(j).data(), w.data(), n));
      diag[j] = alpha;
      w -= alpha * v.col(j);
      if (j > k) w -= offdiag[j - 1] * v.col(j - 1);
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          cd c = active_ops().dot(v.col(i).data(), w.data(), n);
          active_ops().axpy(-c, v.col(i).data(), w.data(), n);
        }
      double beta = w.norm();
      if (beta < 1e-14) {
        // Invariant subspace hit: continue in a fresh random direction.
        w = random_unit(n, rng);
        for (int pass = 0; pass < 2; ++pass)
          for (int i = 0; i <= j; ++i) {
            cd c = active_ops().dot(v.col(i).data(), w.data(), n);
            active_ops().axpy(-c, v.col(i).data(), w.data(), n);
          }
        double wn = w.norm();
        if (wn < 1e-14) {
          // Basis spans the whole space; the projection is exact.
          beta = 0.0;
          w.setZero();
        } else {
          beta = 0.0;
          w /= wn;
        }
        offdiag[j] = 0.0;
        v.col(j + 1) = w;
        continue;
      }
      offdiag[j] = beta;
      v.col(j + 1) = w / beta;
    }

    // Projected matrix: arrowhead from the kept pairs, tridiagonal tail.
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) proj(i, i) = diag[i];
    for (int i = 0; i < k; ++i) proj(i, k) = proj(k, i) = arrow[i];
    for (int i = k; i + 1 < m; ++i)
      proj(i, i + 1) = proj(i + 1, i) = offdiag[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(proj);
    const Eigen::VectorXd& theta = small.eigenvalues();
    const Eigen::MatrixXd& s = small.eigenvectors();

    const double beta_m = offdiag[m - 1];
    const double rayleigh_residual = std::abs(beta_m * s(m - 1, 0));
    const bool done =
        rayleigh_residual <= opt.tol * std::max(1.0, std::abs(theta[0])) ||
        cycle + 1 == opt.max_cycles;

    const int take = done ? 1 : keep;
    Eigen::MatrixXcd y = v.leftCols(m) * s.leftCols(take);
    for (int i = 0; i < take; ++i) {
      v.col(i) = y.col(i);
      diag[i] = theta[i];
      arrow[i] = beta_m * s(m - 1, i);
    }
    if (done) {
      res.value = theta[0];
      res.residual = true_residual(a, v.col(0), theta[0]);
      ++res.matvecs;
      res.converged =
          res.residual <= opt.tol * std::max(1.0, std::abs(theta[0])) * 10;
      return res;
    }
    v.col(take) = v.col(m);
    k = take;
  }
  return res;
}

IterativeResult power_max_eigenvalue(const LinearMap& a,
                                     const PowerOptions& opt) {
  IterativeResult res;
  const std::int64_t n = a.dim;
  if (n == 0) return {0.0, 0.0, 0, true};
  std::mt19937_64 rng(opt.seed);
  Eigen::VectorXcd v = random_unit(n, rng);
  Eigen::VectorXcd w(n);
  double theta = 0.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    a.apply(v.data(), w.data());
    ++res.matvecs;
    double next = std::real(active_ops().dot(v.data(), w.data(), n));
    double wn = w.norm();
    if (wn == 0.0) {
      // v is in the kernel; the operator may still be nonzero elsewhere, so
      // restart from a fresh direction.
      v = random_unit(n, rng);
      continue;
    }
    v = w / wn;
    if (it > 0 &&
        std::abs(next - theta) <= opt.rel_tol * std::max(1.0, std::abs(next))) {
      theta = next;
      res.converged = true;
      break;
    }
    theta = next;
  }
  res.value = theta;
  res.residual = true_residual(a, v, theta);
  ++res.matvecs;
  return res;
}

}  // namespace qed
