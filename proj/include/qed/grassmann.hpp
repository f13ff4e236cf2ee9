#pragma once
// Finite-dimensional Grassmann algebra over 2n anticommuting generators: a
// plain generator and a conjugate generator per fermion mode, interleaved as
// symbol 2*mode (plain) and 2*mode + 1 (conjugate). Elements are coefficient
// vectors over canonical monomials (symbols multiplied in ascending order),
// indexed by symbol bitmask.
//
// Frozen conventions, which the Fock-space correspondence tests pin down:
//  * Berezin integration in a single symbol extracts from the right:
//    integrating s in g*s yields g; iterated integrals apply the rightmost
//    differential first, so integrating the symbol list (c2, c1) against
//    c1*c2 gives -1.
//  * The full-measure functional integrates, for each mode in ascending
//    order, the conjugate generator and then the plain generator; on the
//    top monomial c_1 cbar_1 ... c_n cbar_n it evaluates to +1.
//  * The pairing is <f, g> = full_integral(conjugate(f) * g * weight()) with
//    weight = prod_i (1 + c_i cbar_i); under the coefficient map from Fock
//    space it reproduces the Fock inner product exactly.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qed/fock.hpp"
#include "qed/ladder.hpp"

namespace qed {

class GrassmannAlgebra {
 public:
  using Element = std::vector<cd>;  // size 4^n_modes

  explicit GrassmannAlgebra(int n_modes);

  int n_modes() const { return n_; }
  int n_symbols() const { return 2 * n_; }
  std::size_t dim() const { return std::size_t{1} << (2 * n_); }

  int plain_symbol(int mode) const { return 2 * mode; }
  int conj_symbol(int mode) const { return 2 * mode + 1; }

  Element zero() const { return Element(dim(), cd{0.0, 0.0}); }
  Element monomial(std::uint32_t symbol_mask, cd coeff = 1.0) const;

  Element product(const Element& a, const Element& b) const;
  // Antilinear antiautomorphism: conjugates coefficients and swaps each
  // plain generator with its conjugate.
  Element conjugate(const Element& a) const;
  // Berezin integral in one symbol (right extraction).
  Element integrate(const Element& a, int symbol) const;
  // Pinned full-measure functional (see header comment).
  cd full_integral(const Element& a) const;
  Element weight() const;
  cd pairing(const Element& f, const Element& g) const;

  Element multiply_symbol(int symbol, const Element& a) const;  // from the left
  Element derivative(int symbol, const Element& a) const;       // from the left

  // Normal-form action of a ladder polynomial: creation in a mode acts as
  // left multiplication by the conjugate generator, annihilation as the left
  // derivative in it.
  Element apply(const FermionOperator& op, const Element& a) const;

  // Coefficient-identity map between Fock vectors over a full fermion basis
  // and polynomials in the conjugate generators.
  Element from_fock(const Eigen::VectorXcd& psi, const FermionBasis& basis) const;
  Eigen::VectorXcd to_fock(const Element& a, const FermionBasis& basis) const;
  // Same over the plain full basis of n_modes() modes (state index = bitmask).
  Element from_fock(const Eigen::VectorXcd& psi) const;
  Eigen::VectorXcd to_fock(const Element& a) const;

 private:
  int n_;
};

}  // namespace qed
