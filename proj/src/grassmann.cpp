#include "qed/grassmann.hpp"

#include <bit>
#include <stdexcept>

namespace qed {

namespace {

// Parity of crossings when the monomial b is merged into a from the right:
// one crossing per pair (i in a, j in b) with i > j.
int merge_sign(std::uint32_t a, std::uint32_t b) {
  int crossings = 0;
  for (std::uint32_t rest = b; rest;) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    crossings += std::popcount(a >> (j + 1));
  }
  return (crossings & 1) ? -1 : 1;
}

}  // namespace

GrassmannAlgebra::GrassmannAlgebra(int n_modes) : n_(n_modes) {
  if (n_modes < 0 || n_modes > 8)
    throw std::invalid_argument("grassmann: need 0 <= n_modes <= 8");
}

GrassmannAlgebra::Element GrassmannAlgebra::monomial(std::uint32_t symbol_mask,
                                                     cd coeff) const {
  if (symbol_mask >= dim())
    throw std::invalid_argument("grassmann: symbol mask out of range");
  Element e = zero();
  e[symbol_mask] = coeff;
  return e;
}

GrassmannAlgebra::Element GrassmannAlgebra::product(const Element& a,
                                                    const Element& b) const {
  Element out = zero();
  for (std::uint32_t ma = 0; ma < a.size(); ++ma) {
    if (a[ma] == 0.0) continue;
    for (std::uint32_t mb = 0; mb < b.size(); ++mb) {
      if (b[mb] == 0.0 || (ma & mb)) continue;
      out[ma | mb] += a[ma] * b[mb] * static_cast<double>(merge_sign(ma, mb));
    }
  }
  return out;
}

GrassmannAlgebra::Element GrassmannAlgebra::conjugate(const Element& a) const {
  Element out = zero();
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0) continue;
    // Swapping each symbol with its partner maps canonical monomials to
    // canonical monomials up to (i) the order reversal of the
    // antiautomorphism and (ii) one transposition per mode whose two symbols
    // are both present.
    std::uint32_t swapped = ((m & 0x55555555u) << 1) | ((m & 0xaaaaaaaau) >> 1);
    int deg = std::popcount(m);
    int both = std::popcount(m & (m >> 1) & 0x55555555u);
    int sign = (((deg * (deg - 1) / 2) + both) & 1) ? -1 : 1;
    out[swapped] = std::conj(a[m]) * static_cast<double>(sign);
  }
  return out;
}

GrassmannAlgebra::Element GrassmannAlgebra::integrate(const Element& a,
                                                      int symbol) const {
  Element out = zero();
  const std::uint32_t bit = std::uint32_t{1} << symbol;
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0 || !(m & bit)) continue;
    // Move the symbol to the rightmost slot, then extract it.
    int after = std::popcount(m >> (symbol + 1));
    out[m & ~bit] += a[m] * ((after & 1) ? -1.0 : 1.0);
  }
  return out;
}

cd GrassmannAlgebra::full_integral(const Element& a) const {
  // Iterating integrate() over (conjugate, plain) per mode in ascending mode
  // order removes symbols from the top monomial with even crossing counts at
  // every step, so the functional is plain top-coefficient extraction.
  return a[dim() - 1];
}

GrassmannAlgebra::Element GrassmannAlgebra::weight() const {
  Element w = monomial(0);
  for (int mode = 0; mode < n_; ++mode) {
    std::uint32_t pair_mask = (std::uint32_t{1} << plain_symbol(mode)) |
                              (std::uint32_t{1} << conj_symbol(mode));
    Element factor = monomial(0);
    factor[pair_mask] = 1.0;  // 1 + c cbar (already in canonical order)
    w = product(w, factor);
  }
  return w;
}

cd GrassmannAlgebra::pairing(const Element& f, const Element& g) const {
  return full_integral(product(product(conjugate(f), g), weight()));
}

GrassmannAlgebra::Element GrassmannAlgebra::multiply_symbol(
    int symbol, const Element& a) const {
  Element out = zero();
  const std::uint32_t bit = std::uint32_t{1} << symbol;
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0 || (m & bit)) continue;
    int below = std::popcount(m & (bit - 1));
    out[m | bit] += a[m] * ((below & 1) ? -1.0 : 1.0);
  }
  return out;
}

GrassmannAlgebra::Element GrassmannAlgebra::derivative(int symbol,
                                                       const Element& a) const {
  Element out = zero();
  const std::uint32_t bit = std::uint32_t{1} << symbol;
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0 || !(m & bit)) continue;
    int before = std::popcount(m & (bit - 1));
    out[m & ~bit] += a[m] * ((before & 1) ? -1.0 : 1.0);
  }
  return out;
}

GrassmannAlgebra::Element GrassmannAlgebra::apply(const FermionOperator& op,
                                                  const Element& a) const {
  Element out = zero();
  for (const auto& [mono, coeff] : op.terms()) {
    Element cur = a;
    // Rightmost ladder factor acts first: annihilations by ascending mode,
    // then creations by descending mode.
    for (std::uint64_t ann = mono.annihilate; ann; ann &= ann - 1)
      cur = derivative(conj_symbol(std::countr_zero(ann)), cur);
    for (std::uint64_t cre = mono.create; cre;) {
      int mode = 63 - std::countl_zero(cre);
      cre &= ~(std::uint64_t{1} << mode);
      cur = multiply_symbol(conj_symbol(mode), cur);
    }
    for (std::size_t m = 0; m < out.size(); ++m) out[m] += coeff * cur[m];
  }
  return out;
}

GrassmannAlgebra::Element GrassmannAlgebra::from_fock(
    const Eigen::VectorXcd& psi, const FermionBasis& basis) const {
  if (basis.n_modes() != n_ ||
      static_cast<std::size_t>(psi.size()) != basis.dim())
    throw std::invalid_argument("grassmann: basis/vector size mismatch");
  Element out = zero();
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    if (psi[static_cast<Eigen::Index>(i)] == 0.0) continue;
    std::uint64_t state = basis.state(i);
    std::uint32_t mask = 0;
    for (std::uint64_t s = state; s; s &= s - 1)
      mask |= std::uint32_t{1} << conj_symbol(std::countr_zero(s));
    out[mask] = psi[static_cast<Eigen::Index>(i)];
  }
  return out;
}

Eigen::VectorXcd GrassmannAlgebra::to_fock(const Element& a,
                                           const FermionBasis& basis) const {
  if (basis.n_modes() != n_)
    throw std::invalid_argument("grassmann: basis size mismatch");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0) continue;
    if (m & 0x55555555u)
      throw std::invalid_argument(
          "grassmann: element involves plain generators, not a state polynomial");
    std::uint64_t state = 0;
    for (std::uint32_t s = m; s; s &= s - 1)
      state |= std::uint64_t{1} << (std::countr_zero(s) / 2);
    std::ptrdiff_t idx = basis.index_of(state);
    if (idx < 0) throw std::invalid_argument("grassmann: state outside basis");
    psi[idx] = a[m];
  }
  return psi;
}

GrassmannAlgebra::Element GrassmannAlgebra::from_fock(
    const Eigen::VectorXcd& psi) const {
  if (psi.size() != Eigen::Index{1} << n_)
    throw std::invalid_argument("grassmann: vector size mismatch");
  Element out = zero();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (psi[i] == 0.0) continue;
    std::uint32_t mask = 0;
    for (std::uint64_t s = static_cast<std::uint64_t>(i); s; s &= s - 1)
      mask |= std::uint32_t{1} << conj_symbol(std::countr_zero(s));
    out[mask] = psi[i];
  }
  return out;
}

Eigen::VectorXcd GrassmannAlgebra::to_fock(const Element& a) const {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_);
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0) continue;
    if (m & 0x55555555u)
      throw std::invalid_argument(
          "grassmann: element involves plain generators, not a state polynomial");
    std::uint64_t state = 0;
    for (std::uint32_t s = m; s; s &= s - 1)
      state |= std::uint64_t{1} << (std::countr_zero(s) / 2);
    psi[static_cast<Eigen::Index>(state)] = a[m];
  }
  return psi;
}

}  // namespace qed
