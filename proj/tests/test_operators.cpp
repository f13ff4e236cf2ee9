// Matrix assembly and the structural operators: bit-basis representation of
// the ladder algebra, free energies, conserved quantities, momentum-space
// bilinears, the Coulomb energy, and the product-space machinery.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "qed/dressing.hpp"
#include "qed/eigensolve.hpp"
#include "qed/operators.hpp"

using namespace qed;

namespace {

const Lattice& collinear3() {
  static const Lattice lat =
      Lattice::from_points(2.0 * M_PI, {{0, 0, -1}, {0, 0, 0}, {0, 0, 1}});
  return lat;
}

double op_norm_inf(const SparseOp& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseOp::InnerIterator it(m, k); it; ++it)
      r = std::max(r, std::abs(it.value()));
  return r;
}

Eigen::VectorXcd random_state(std::mt19937_64& rng, std::int64_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (std::int64_t i = 0; i < n; ++i) v[i] = cd{u(rng), u(rng)};
  return v;
}

}  // namespace

TEST_CASE("fermion_matrix represents the anticommutation relations exactly") {
  const int n = 4;  // one lattice point: 16-dimensional bit basis
  const auto id = Eigen::MatrixXcd::Identity(16, 16);
  for (int i = 0; i < n; ++i) {
    const DenseOp ci =
        densify(fermion_matrix(FermionOperator::annihilation(i), n));
    const DenseOp cdi = densify(fermion_matrix(FermionOperator::creation(i), n));
    CHECK((ci.adjoint() - cdi).norm() < 1e-15);
    for (int j = 0; j < n; ++j) {
      const DenseOp cj =
          densify(fermion_matrix(FermionOperator::annihilation(j), n));
      const DenseOp cdj =
          densify(fermion_matrix(FermionOperator::creation(j), n));
      const double target = (i == j) ? 1.0 : 0.0;
      CHECK((ci * cdj + cdj * ci - target * id).norm() < 1e-14);
      CHECK((ci * cj + cj * ci).norm() < 1e-14);
    }
  }
}

TEST_CASE("matrix of a product equals the product of matrices") {
  const int n = 6;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> mode(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    LadderSeq seq;
    const int len = 1 + trial % 4;
    for (int t = 0; t < len; ++t)
      seq.push_back({coin(rng) == 1, mode(rng)});
    const auto op = FermionOperator::from_sequence(seq, 1.0);
    DenseOp direct = DenseOp::Identity(1 << n, 1 << n);
    for (const auto& l : seq) {
      const auto factor = l.create ? FermionOperator::creation(l.mode)
                                   : FermionOperator::annihilation(l.mode);
      direct = direct * densify(fermion_matrix(factor, n));
    }
    CHECK((densify(fermion_matrix(op, n)) - direct).norm() < 1e-13);
  }
}

TEST_CASE("free hamiltonian is diagonal with single-particle energies") {
  const auto& lat = collinear3();
  const double mass = 0.75;
  const auto h = free_fermion_hamiltonian(lat, mass);
  const auto basis = FermionBasis::full(lat);
  const SparseOp m = fermion_matrix(h, basis);

  // Diagonal, and the vacuum has energy zero.
  CHECK(op_norm_inf(SparseOp(m - SparseOp(m.adjoint()))) < 1e-15);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t mask = rng() & 0xFFF;
    double expect = 0.0;
    for (int mode = 0; mode < 12; ++mode)
      if (mask & (1ULL << mode))
        expect += omega(lat.k_of(mode_point(mode)), mass);
    CHECK(std::abs(m.coeff(static_cast<int>(mask), static_cast<int>(mask)) -
                   expect) < 1e-12);
  }
}

TEST_CASE("charge and momentum operators commute with the free evolution") {
  const auto& lat = collinear3();
  const auto basis = FermionBasis::full(lat);
  const SparseOp h = fermion_matrix(free_fermion_hamiltonian(lat, 1.0), basis);
  const SparseOp q = fermion_matrix(charge_operator(lat), basis);
  const SparseOp p3 = fermion_matrix(momentum_component(lat, 2), basis);
  CHECK(op_norm_inf(SparseOp(SparseOp(h * q) - SparseOp(q * h))) < 1e-13);
  CHECK(op_norm_inf(SparseOp(SparseOp(h * p3) - SparseOp(p3 * h))) < 1e-13);

  // Eigenvalues on bit states count charge and integer momentum.
  const std::uint64_t mask =
      (1ULL << fermion_mode(2, 0, 0)) | (1ULL << fermion_mode(1, 1, 1));
  CHECK(std::abs(q.coeff(static_cast<int>(mask), static_cast<int>(mask)) -
                 cd{0.0, 0.0}) < 1e-15);  // particle + antiparticle
  CHECK(std::abs(p3.coeff(static_cast<int>(mask), static_cast<int>(mask)) -
                 cd{1.0, 0.0}) < 1e-15);  // nu3 = +1 from point 2
}

TEST_CASE("current bilinear: adjoint equals the bilinear at -k") {
  const auto& lat = collinear3();
  const double mass = 1.3;
  for (const Vec3i k : {Vec3i{0, 0, 1}, Vec3i{0, 0, 2}}) {
    for (int which = 0; which < 2; ++which) {
      const Mat4 vertex = which == 0 ? Mat4(Mat4::Identity()) : Mat4(alpha(2));
      const auto fwd = current_bilinear(lat, mass, k, vertex);
      const auto bwd = current_bilinear(lat, mass, neg(k), vertex);
      FermionOperator diff = fwd.adjoint() - bwd;
      diff.compress(1e-14);
      CHECK(diff.empty());
    }
  }
}

TEST_CASE("charge density at k = 0 is charge over sqrt(volume)") {
  const auto& lat = collinear3();
  const auto rho0 = current_bilinear(lat, 1.0, {0, 0, 0}, Mat4::Identity());
  const auto basis = FermionBasis::full(lat);
  const SparseOp m = fermion_matrix(rho0, basis);
  const SparseOp q = fermion_matrix(charge_operator(lat), basis);
  const double scale = 1.0 / std::sqrt(lat.volume());
  // rho(0) = (Q + n_antiparticle_modes) / sqrt(V); the constant comes from
  // the d d+ block, whose exact ordering is 1 - d+ d per mode.
  const double c0 = 6.0 * scale;
  const SparseOp diff = SparseOp(m - SparseOp(scale * q));
  double defect = 0.0;
  for (int row = 0; row < diff.outerSize(); ++row)
    for (SparseOp::InnerIterator it(diff, row); it; ++it) {
      const cd expect = (it.row() == it.col()) ? cd{c0, 0.0} : cd{0.0, 0.0};
      defect = std::max(defect, std::abs(it.value() - expect));
    }
  CHECK(defect < 1e-12);
  CHECK(std::abs(diff.coeff(0, 0) - cd{c0, 0.0}) < 1e-12);
}

TEST_CASE("coulomb energy is hermitian, charge- and momentum-conserving") {
  const auto& lat = collinear3();
  const auto hc = coulomb_energy(lat, 1.0, 0.6);
  FermionOperator herm = hc - hc.adjoint();
  herm.compress(1e-14);
  CHECK(herm.empty());

  const auto basis = FermionBasis::full(lat);
  const SparseOp m = fermion_matrix(hc, basis);
  const SparseOp q = fermion_matrix(charge_operator(lat), basis);
  const SparseOp p3 = fermion_matrix(momentum_component(lat, 2), basis);
  CHECK(op_norm_inf(SparseOp(SparseOp(m * q) - SparseOp(q * m))) < 1e-12);
  CHECK(op_norm_inf(SparseOp(SparseOp(m * p3) - SparseOp(p3 * m))) < 1e-12);

  // The coupling enters squared.
  const auto hc2 = coulomb_energy(lat, 1.0, 1.2);
  FermionOperator scaled_diff = hc2 - 4.0 * hc;
  scaled_diff.compress(1e-12);
  CHECK(scaled_diff.empty());
}

TEST_CASE("coulomb potential is real and reflection symmetric") {
  const auto lat = Lattice::box(2.0 * M_PI, 1);
  const Vec3 x{0.3, -0.8, 1.1};
  const double v = coulomb_potential(lat, x);
  const double vm = coulomb_potential(lat, minus(x));
  CHECK(v == doctest::Approx(vm).epsilon(1e-12));
  // Direct evaluation of the defining sum.
  double expect = 0.0;
  for (int i = 0; i < lat.n_points(); ++i) {
    if (qed::is_zero(lat.point(i))) continue;
    const Vec3 k = lat.k_of(i);
    expect += std::cos(dot(k, x)) / dot(k, k);
  }
  expect /= lat.volume();
  CHECK(v == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("csr apply agrees with eigen sparse multiplication") {
  const auto& lat = collinear3();
  const auto basis = FermionBasis::full(lat);
  const SparseOp m = fermion_matrix(coulomb_energy(lat, 1.0, 0.9), basis);
  const CsrMatrix csr = CsrMatrix::from(m);
  REQUIRE(csr.dim() == m.rows());
  std::mt19937_64 rng(99);
  const Eigen::VectorXcd x = random_state(rng, m.rows());
  Eigen::VectorXcd y(m.rows());
  csr.apply(x.data(), y.data());
  CHECK((y - m * x).norm() < 1e-12 * std::max(1.0, x.norm()));
}

TEST_CASE("photon factor matrices implement the truncated ladder algebra") {
  const BosonBasis bb(2, 3);
  const DenseOp a0 =
      photon_factor_matrix({PhotonFactor::Kind::annihilate, 0}, bb);
  const DenseOp c0 = photon_factor_matrix({PhotonFactor::Kind::create, 0}, bb);
  const DenseOp n0 = photon_factor_matrix({PhotonFactor::Kind::number, 0}, bb);
  const DenseOp id = photon_factor_matrix({PhotonFactor::Kind::identity, 0}, bb);
  CHECK((id - DenseOp::Identity(bb.dim(), bb.dim())).norm() < 1e-15);
  CHECK((c0 - a0.adjoint()).norm() < 1e-14);
  CHECK((n0 - c0 * a0).norm() < 1e-13);
  // On states below the cap the commutator [a, a+] = 1; at the top level the
  // creation is truncated away, leaving -occupation.
  const DenseOp comm = a0 * c0 - c0 * a0;
  for (std::size_t s = 0; s < bb.dim(); ++s) {
    const double expected = bb.total_occupation(s) < 3
                                ? 1.0
                                : -static_cast<double>(bb.occupation(s, 0));
    CHECK(std::abs(comm(s, s) - expected) < 1e-13);
  }
}

TEST_CASE("product_matrix and ProductOperator act identically") {
  const auto& lat = collinear3();
  const ModelParams p{1.0, 0.5};
  SectorFilter f;
  f.charge = 0;
  const auto fb = FermionBasis::filtered(lat, f);
  const BosonBasis bb(lat.n_photon_modes(), 1);
  const auto terms = total_hamiltonian_terms(lat, p);

  const SparseOp m = product_matrix(terms, fb, bb);
  const ProductOperator op(terms, fb, bb);
  REQUIRE(op.dim() == m.rows());

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::VectorXcd x = random_state(rng, op.dim());
    Eigen::VectorXcd y(op.dim());
    op.apply(x.data(), y.data());
    CHECK((y - m * x).norm() < 1e-11 * x.norm());
  }
  CHECK(op_norm_inf(SparseOp(m - SparseOp(m.adjoint()))) < 1e-12);
}

TEST_CASE("free photon hamiltonian counts photon energies") {
  const auto& lat = collinear3();
  const auto terms = free_photon_hamiltonian(lat);
  SectorFilter f;
  f.charge = 0;
  f.max_particles = 0;
  const auto fb = FermionBasis::filtered(lat, f);  // vacuum only
  REQUIRE(fb.dim() == 1);
  const BosonBasis bb(lat.n_photon_modes(), 2);
  const DenseOp m = densify(product_matrix(terms, fb, bb));
  for (std::size_t s = 0; s < bb.dim(); ++s) {
    double expect = 0.0;
    for (int mode = 0; mode < bb.n_modes(); ++mode)
      expect += bb.occupation(s, mode) *
                lat.k_norm(lat.photon_mode_point(mode));
    CHECK(std::abs(m(s, s) - expect) < 1e-12);
  }
}
