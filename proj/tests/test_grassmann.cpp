// Grassmann algebra and its Fock-space correspondence: anticommuting
// products, the pinned Berezin integration conventions, the weighted pairing
// reproducing the Fock inner product, and the normal-form operator action.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qed/grassmann.hpp"
#include "qed/operators.hpp"

using namespace qed;

namespace {

std::mt19937_64 rng(987654321);

Eigen::VectorXcd random_state(std::int64_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd v(n);
  for (std::int64_t i = 0; i < n; ++i) v[i] = cd{u(rng), u(rng)};
  return v;
}

GrassmannAlgebra::Element random_element(const GrassmannAlgebra& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto e = g.zero();
  for (auto& c : e) c = cd{u(rng), u(rng)};
  return e;
}

double max_abs_diff(const GrassmannAlgebra::Element& a,
                    const GrassmannAlgebra::Element& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

FermionOperator random_operator(int n_modes, int n_terms, int max_len) {
  std::uniform_int_distribution<int> mode(0, n_modes - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FermionOperator op;
  for (int t = 0; t < n_terms; ++t) {
    LadderSeq seq;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) seq.push_back({coin(rng) == 1, mode(rng)});
    op += FermionOperator::from_sequence(seq, cd{u(rng), u(rng)});
  }
  return op;
}

}  // namespace

TEST_CASE("generators anticommute and square to zero") {
  const GrassmannAlgebra g(3);
  REQUIRE(g.dim() == 64);
  for (int s = 0; s < g.n_symbols(); ++s) {
    const auto gs = g.monomial(1u << s);
    CHECK(max_abs_diff(g.product(gs, gs), g.zero()) == 0.0);
    for (int t = 0; t < s; ++t) {
      const auto gt = g.monomial(1u << t);
      auto anti = g.product(gs, gt);
      const auto ts = g.product(gt, gs);
      for (std::size_t i = 0; i < anti.size(); ++i) anti[i] += ts[i];
      CHECK(max_abs_diff(anti, g.zero()) == 0.0);
    }
  }
}

TEST_CASE("product is associative and bilinear on random elements") {
  const GrassmannAlgebra g(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_element(g);
    const auto b = random_element(g);
    const auto c = random_element(g);
    const auto left = g.product(g.product(a, b), c);
    const auto right = g.product(a, g.product(b, c));
    CHECK(max_abs_diff(left, right) < 1e-12);
  }
}

TEST_CASE("conjugation is an antilinear antiautomorphism") {
  const GrassmannAlgebra g(3);
  // Swaps plain and conjugate generators.
  for (int m = 0; m < 3; ++m) {
    const auto plain = g.monomial(1u << g.plain_symbol(m));
    const auto conj = g.monomial(1u << g.conj_symbol(m));
    CHECK(max_abs_diff(g.conjugate(plain), conj) == 0.0);
    CHECK(max_abs_diff(g.conjugate(conj), plain) == 0.0);
  }
  // Antilinear: conj(i x) = -i conj(x).
  const auto x = g.monomial(1u << g.plain_symbol(1), cd{0.0, 1.0});
  const auto cx = g.conjugate(x);
  CHECK(std::abs(cx[1u << g.conj_symbol(1)] - cd{0.0, -1.0}) == 0.0);
  // Antiautomorphism: conj(a b) = conj(b) conj(a); involution.
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_element(g);
    const auto b = random_element(g);
    CHECK(max_abs_diff(g.conjugate(g.product(a, b)),
                       g.product(g.conjugate(b), g.conjugate(a))) < 1e-12);
    CHECK(max_abs_diff(g.conjugate(g.conjugate(a)), a) == 0.0);
  }
}

TEST_CASE("berezin integration extracts from the right") {
  const GrassmannAlgebra g(2);
  const int c0 = g.plain_symbol(0);
  const int c1 = g.plain_symbol(1);

  // integrate(s) on g*s returns g: here on the generator itself.
  const auto single = g.integrate(g.monomial(1u << c0), c0);
  CHECK(std::abs(single[0] - cd{1.0, 0.0}) == 0.0);

  // The pinned sign: integrating first in c0, then in c1, against the
  // canonical monomial c0 c1 yields -1.
  const auto mono = g.monomial((1u << c0) | (1u << c1));
  const auto step1 = g.integrate(mono, c0);  // c0 c1 = -c1 c0 -> -c1
  CHECK(std::abs(step1[1u << c1] - cd{-1.0, 0.0}) == 0.0);
  const auto step2 = g.integrate(step1, c1);
  CHECK(std::abs(step2[0] - cd{-1.0, 0.0}) == 0.0);

  // Integrating a symbol that is absent gives zero.
  CHECK(max_abs_diff(g.integrate(g.monomial(1u << c0), c1), g.zero()) == 0.0);
}

TEST_CASE("full-measure functional evaluates the top monomial to one") {
  for (int n : {1, 2, 3, 4}) {
    const GrassmannAlgebra g(n);
    // Top monomial in canonical symbol order: c_0 cbar_0 c_1 cbar_1 ...
    const auto top = g.monomial(static_cast<std::uint32_t>(g.dim() - 1));
    CHECK(std::abs(g.full_integral(top) - cd{1.0, 0.0}) < 1e-15);
    // Everything of lower degree integrates to zero.
    CHECK(std::abs(g.full_integral(g.monomial(0))) == 0.0);
    if (n >= 2)
      CHECK(std::abs(g.full_integral(
                g.monomial(1u << g.plain_symbol(0)))) == 0.0);
  }
}

TEST_CASE("weight is the product of one plus mode top monomials") {
  const GrassmannAlgebra g(2);
  const auto w = g.weight();
  // Expected nonzero coefficients: 1, c0 cbar0, c1 cbar1, c0 cbar0 c1 cbar1.
  const std::uint32_t m0 = (1u << g.plain_symbol(0)) | (1u << g.conj_symbol(0));
  const std::uint32_t m1 = (1u << g.plain_symbol(1)) | (1u << g.conj_symbol(1));
  for (std::uint32_t mask = 0; mask < g.dim(); ++mask) {
    const bool expected = mask == 0 || mask == m0 || mask == m1 ||
                          mask == (m0 | m1);
    CHECK(std::abs(w[mask] - (expected ? cd{1.0, 0.0} : cd{0.0, 0.0})) <
          1e-15);
  }
}

TEST_CASE("pairing reproduces the fock inner product") {
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;  // modes 2..5
    const GrassmannAlgebra g(n);
    const auto psi = random_state(std::int64_t{1} << n);
    const auto phi = random_state(std::int64_t{1} << n);
    const cd fock = psi.dot(phi);  // conj(psi) . phi
    const cd berezin = g.pairing(g.from_fock(psi), g.from_fock(phi));
    CHECK(std::abs(fock - berezin) < 1e-12 * std::max(1.0, std::abs(fock)));
  }
}

TEST_CASE("fock coefficient map round-trips") {
  const GrassmannAlgebra g(4);
  const auto psi = random_state(16);
  const auto back = g.to_fock(g.from_fock(psi));
  CHECK((back - psi).norm() < 1e-15);

  // Basis-aware variant over a lattice basis agrees with the plain map.
  const auto lat = Lattice::from_points(2.0 * M_PI, {{0, 0, 0}});
  const auto basis = FermionBasis::full(lat);
  REQUIRE(basis.dim() == 16);
  const auto e1 = g.from_fock(psi, basis);
  const auto e2 = g.from_fock(psi);
  CHECK(max_abs_diff(e1, e2) == 0.0);
  CHECK((g.to_fock(e1, basis) - psi).norm() < 1e-15);
}

TEST_CASE("operator action matches the bit-basis matrix") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;  // modes 2..4
    const GrassmannAlgebra g(n);
    const auto op = random_operator(n, 3, 4);
    const SparseOp m = fermion_matrix(op, n);
    const auto psi = random_state(std::int64_t{1} << n);
    const Eigen::VectorXcd direct = m * psi;
    const Eigen::VectorXcd via = g.to_fock(g.apply(op, g.from_fock(psi)));
    CHECK((via - direct).norm() < 1e-12 * std::max(1.0, psi.norm()));
  }
}

TEST_CASE("creation acts by conjugate multiplication, annihilation by derivative") {
  const GrassmannAlgebra g(2);
  const auto vac = g.monomial(0);
  const auto raised = g.apply(FermionOperator::creation(1), vac);
  CHECK(std::abs(raised[1u << g.conj_symbol(1)] - cd{1.0, 0.0}) == 0.0);
  const auto lowered = g.apply(FermionOperator::annihilation(1), raised);
  CHECK(std::abs(lowered[0] - cd{1.0, 0.0}) == 0.0);
  CHECK(max_abs_diff(g.apply(FermionOperator::annihilation(0), vac), g.zero()) ==
        0.0);

  const auto d1 = g.derivative(g.conj_symbol(1),
                               g.monomial(1u << g.conj_symbol(1)));
  CHECK(std::abs(d1[0] - cd{1.0, 0.0}) == 0.0);
  const auto prod = g.multiply_symbol(g.plain_symbol(0),
                                      g.monomial(1u << g.plain_symbol(1)));
  CHECK(std::abs(prod[(1u << g.plain_symbol(0)) | (1u << g.plain_symbol(1))] -
                 cd{1.0, 0.0}) == 0.0);
}
