// Quadratic fermion diagonalization: block extraction, the doubled-matrix
// transform with its canonical identities, quasiparticle spectra checked
// against brute-force many-body spectra, and the zero-mode rules.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qed/bogoliubov.hpp"
#include "qed/eigensolve.hpp"
#include "qed/operators.hpp"

using namespace qed;

namespace {

std::mt19937_64 rng(321);

// Random hermitian hopping block and antisymmetric pairing block.
QuadraticFermion random_quadratic(int n, bool with_pairing) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd a(n, n), b = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd{u(rng), u(rng)};
  a = 0.5 * (a + a.adjoint()).eval();
  if (with_pairing)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        b(i, j) = cd{u(rng), u(rng)};
        b(j, i) = -b(i, j);
      }
  QuadraticFermion q;
  q.a = a;
  q.b = b;
  q.constant = cd{u(rng), 0.0};
  return q;
}

// The ladder polynomial with the given blocks.
FermionOperator operator_of(const QuadraticFermion& q) {
  const int n = static_cast<int>(q.a.rows());
  FermionOperator op;
  LadderMonomial scalar;
  op.add_term(scalar, q.constant);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (q.a(i, j) == cd{0.0, 0.0}) continue;
      LadderMonomial hop;
      hop.create = 1ULL << i;
      hop.annihilate = 1ULL << j;
      op.add_term(hop, q.a(i, j));
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (q.b(i, j) == cd{0.0, 0.0}) continue;
      LadderMonomial pair;
      pair.create = (1ULL << i) | (1ULL << j);
      op.add_term(pair, q.b(i, j));
      LadderMonomial anti;
      anti.annihilate = (1ULL << i) | (1ULL << j);
      op.add_term(anti, std::conj(q.b(i, j)));
    }
  return op;
}

// All 2^n sums ground + sum of a subset of quasiparticle energies.
std::vector<double> quasiparticle_sums(const BogoliubovResult& r) {
  const int n = static_cast<int>(r.lambda.size());
  std::vector<double> sums;
  sums.reserve(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    double e = r.ground_energy;
    for (int i = 0; i < n; ++i)
      if (s & (1ULL << i)) e += r.lambda[i];
    sums.push_back(e);
  }
  std::sort(sums.begin(), sums.end());
  return sums;
}

double eigen_equation_defect(const QuadraticFermion& q,
                             const BogoliubovResult& r) {
  const Eigen::MatrixXcd lam = r.lambda.cast<cd>().asDiagonal();
  const double d1 = (q.a * r.u + q.b * r.w - r.u * lam).cwiseAbs().maxCoeff();
  const double d2 = (-q.b.conjugate() * r.u - q.a.conjugate() * r.w -
                     r.w * lam)
                        .cwiseAbs()
                        .maxCoeff();
  return std::max(d1, d2);
}

}  // namespace

TEST_CASE("extract_quadratic reads the blocks back") {
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const auto q = random_quadratic(n, true);
    const auto back = extract_quadratic(operator_of(q), n);
    CHECK((back.a - q.a).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((back.b - q.b).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(back.constant - q.constant) < 1e-14);
  }
}

TEST_CASE("extract_quadratic validates degree and hermiticity") {
  FermionOperator cubic;
  LadderMonomial m;
  m.create = 0b111;
  cubic.add_term(m, 1.0);
  CHECK_THROWS_AS(extract_quadratic(cubic, 3), std::invalid_argument);

  // Non-hermitian hopping: a_01 without its mirror image.
  FermionOperator skew;
  LadderMonomial hop;
  hop.create = 1ULL << 0;
  hop.annihilate = 1ULL << 1;
  skew.add_term(hop, 1.0);
  CHECK_THROWS_AS(extract_quadratic(skew, 2), std::invalid_argument);

  // Pair creation without matching annihilation.
  FermionOperator lop;
  LadderMonomial pair;
  pair.create = 0b11;
  lop.add_term(pair, 0.5);
  CHECK_THROWS_AS(extract_quadratic(lop, 2), std::invalid_argument);

  // Imaginary constant.
  FermionOperator imc;
  imc.add_term(LadderMonomial{}, cd{0.0, 1.0});
  CHECK_THROWS_AS(extract_quadratic(imc, 2), std::invalid_argument);
}

TEST_CASE("diagonal hopping gives back its entries") {
  QuadraticFermion q;
  q.a = Eigen::MatrixXcd::Zero(3, 3);
  q.a(0, 0) = 0.5;
  q.a(1, 1) = 2.0;
  q.a(2, 2) = 1.25;
  q.b = Eigen::MatrixXcd::Zero(3, 3);
  const auto r = diagonalize_quadratic(q);
  CHECK(r.lambda[0] == doctest::Approx(0.5));
  CHECK(r.lambda[1] == doctest::Approx(1.25));
  CHECK(r.lambda[2] == doctest::Approx(2.0));
  CHECK(r.ground_energy == doctest::Approx(0.0));
  CHECK(r.canonical_defect < 1e-12);
  CHECK(r.w.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("negative single-mode energy is absorbed into the ground state") {
  QuadraticFermion q;
  q.a = Eigen::MatrixXcd::Constant(1, 1, cd{-2.0, 0.0});
  q.b = Eigen::MatrixXcd::Zero(1, 1);
  const auto r = diagonalize_quadratic(q);
  REQUIRE(r.lambda.size() == 1);
  CHECK(r.lambda[0] == doctest::Approx(2.0));
  CHECK(r.ground_energy == doctest::Approx(-2.0));
  // The quasiparticle is the hole: u = 0, |w| = 1.
  CHECK(std::abs(r.u(0, 0)) < 1e-12);
  CHECK(std::abs(r.w(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("pure pairing splits into unit quasiparticles") {
  QuadraticFermion q;
  q.a = Eigen::MatrixXcd::Zero(2, 2);
  q.b = Eigen::MatrixXcd::Zero(2, 2);
  q.b(0, 1) = 1.0;
  q.b(1, 0) = -1.0;
  const auto r = diagonalize_quadratic(q);
  CHECK(r.lambda[0] == doctest::Approx(1.0));
  CHECK(r.lambda[1] == doctest::Approx(1.0));
  CHECK(r.ground_energy == doctest::Approx(-1.0));
  CHECK(r.canonical_defect < 1e-12);
}

TEST_CASE("quasiparticle sums reproduce the many-body spectrum") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;  // modes 2..8
    const auto q = random_quadratic(n, trial % 3 != 0);
    const auto r = diagonalize_quadratic(q);
    CAPTURE(n);
    CHECK(r.lambda.minCoeff() >= 0.0);
    CHECK(r.canonical_defect < 1e-10);
    CHECK(eigen_equation_defect(q, r) < 1e-10);

    const auto sums = quasiparticle_sums(r);
    const DenseOp m = densify(fermion_matrix(operator_of(q), n));
    const Eigen::VectorXd spec = dense_spectrum(m);
    REQUIRE(spec.size() == static_cast<Eigen::Index>(sums.size()));
    double defect = 0.0;
    for (Eigen::Index i = 0; i < spec.size(); ++i)
      defect = std::max(defect, std::abs(spec[i] - sums[i]));
    CHECK(defect < 1e-10);
    CHECK(std::abs(r.ground_energy - spec[0]) < 1e-10);
  }
}

TEST_CASE("vanishing blocks resolve zero modes toward the particle side") {
  QuadraticFermion q;
  q.a = Eigen::MatrixXcd::Zero(3, 3);
  q.b = Eigen::MatrixXcd::Zero(3, 3);
  const auto r = diagonalize_quadratic(q);
  CHECK(r.lambda.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.ground_energy == doctest::Approx(0.0));
  CHECK(r.canonical_defect < 1e-12);
  // Particle-block norm 1 per selected column.
  CHECK((r.u.adjoint() * r.u - Eigen::MatrixXcd::Identity(3, 3)).norm() <
        1e-12);
  CHECK(r.w.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("a balanced zero-mode tie is reported, not silently resolved") {
  // This Nambu matrix has a two-dimensional kernel whose vectors all carry
  // equal particle and hole weight, so no canonical choice exists.
  QuadraticFermion q;
  q.a = Eigen::MatrixXcd::Zero(2, 2);
  q.a(0, 1) = 1.0;
  q.a(1, 0) = 1.0;
  q.b = Eigen::MatrixXcd::Zero(2, 2);
  q.b(0, 1) = 1.0;
  q.b(1, 0) = -1.0;
  CHECK_THROWS_AS(diagonalize_quadratic(q), std::runtime_error);
}
