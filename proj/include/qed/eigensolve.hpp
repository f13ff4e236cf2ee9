#pragma once
// Eigenvalue routines. Small problems go through Eigen's dense self-adjoint
// solver; large sparse problems use thick-restart Lanczos (smallest
// eigenvalue) and power iteration (largest eigenvalue / norm of a positive
// semidefinite operator). Sparse matrix-vector products run through the
// runtime-dispatched CSR kernel.
//
// Iterative results carry the true residual norm ||A y - theta y|| of the
// returned Ritz pair: some eigenvalue of A lies within that distance of
// theta, and theta is always an upper bound for the smallest eigenvalue
// (a lower bound for the largest). Identifying theta with the extreme
// eigenvalue itself additionally relies on Krylov convergence from a random
// start; tests cross-check against dense spectra.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "qed/operators.hpp"

namespace qed {

// Ascending eigenvalues of a hermitian matrix.
Eigen::VectorXd dense_spectrum(const DenseOp& m);
double dense_min_eigenvalue(const DenseOp& m);

// Hermitian operator given by its action y = A x; lets the iterative solvers
// run on matrix-free operators (e.g. Kronecker-structured product-space
// Hamiltonians). Wrappers capture the operator by reference: the map must not
// outlive it.
struct LinearMap {
  std::int64_t dim = 0;
  std::function<void(const cd* x, cd* y)> apply;
};

template <class Op>
LinearMap as_map(const Op& a) {
  return {a.dim(), [&a](const cd* x, cd* y) { a.apply(x, y); }};
}

struct LanczosOptions {
  int cycle = 80;        // Krylov columns per restart cycle
  int keep = 20;         // Ritz pairs retained at restart
  int max_cycles = 200;
  double tol = 1e-10;    // residual tolerance, relative to max(1, |theta|)
  std::uint64_t seed = 12345;
};

struct IterativeResult {
  double value = 0.0;
  double residual = 0.0;  // ||A y - value * y|| of the returned pair
  int matvecs = 0;
  bool converged = false;
};

IterativeResult lanczos_min_eigenvalue(const LinearMap& a,
                                       const LanczosOptions& opt = {});
inline IterativeResult lanczos_min_eigenvalue(const CsrMatrix& a,
                                              const LanczosOptions& opt = {}) {
  return lanczos_min_eigenvalue(as_map(a), opt);
}

struct PowerOptions {
  int max_iter = 20000;
  double rel_tol = 1e-6;  // stop on relative change of the Rayleigh quotient
  std::uint64_t seed = 12345;
};

// Dominant eigenvalue of a hermitian operator (the largest in modulus; for a
// positive semidefinite operator this is the norm).
IterativeResult power_max_eigenvalue(const LinearMap& a,
                                     const PowerOptions& opt = {});
inline IterativeResult power_max_eigenvalue(const CsrMatrix& a,
                                            const PowerOptions& opt = {}) {
  return power_max_eigenvalue(as_map(a), opt);
}

}  // namespace qed
