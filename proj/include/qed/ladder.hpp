#pragma once
// Symbolic algebra of fermionic ladder operators under the canonical
// anticommutation relations. An operator is a linear combination of canonical
// monomials: creation operators with ascending mode index, followed by
// annihilation operators with descending mode index. Products are normal
// ordered exactly (contraction terms included); a separate entry point
// performs the signed reordering that drops every contraction, which is the
// normal-ordering map on products written in a fixed operator order.

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace qed {

using cd = std::complex<double>;

struct LadderOp {
  bool create;
  int mode;
  auto operator<=>(const LadderOp&) const = default;
};
using LadderSeq = std::vector<LadderOp>;

// Creation/annihilation mode sets of one canonical monomial.
struct LadderMonomial {
  std::uint64_t create = 0;
  std::uint64_t annihilate = 0;
  auto operator<=>(const LadderMonomial&) const = default;
};

class FermionOperator {
 public:
  FermionOperator() = default;

  static FermionOperator identity();
  static FermionOperator creation(int mode);
  static FermionOperator annihilation(int mode);
  static FermionOperator number(int mode);  // c+_m c_m
  // Exact normal ordering of an operator sequence (all contractions kept).
  static FermionOperator from_sequence(const LadderSeq& seq, cd coeff);
  // Signed reordering to canonical form with all contractions dropped; zero
  // when the sequence repeats a creation or an annihilation mode.
  static FermionOperator wick_from_sequence(const LadderSeq& seq, cd coeff);

  const std::map<LadderMonomial, cd>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator-=(const FermionOperator& o);
  FermionOperator& operator*=(cd s);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) {
    return a += b;
  }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) {
    return a -= b;
  }
  friend FermionOperator operator*(FermionOperator a, cd s) { return a *= s; }
  friend FermionOperator operator*(cd s, FermionOperator a) { return a *= s; }
  FermionOperator operator*(const FermionOperator& o) const;

  FermionOperator adjoint() const;
  // Drop terms with |coefficient| <= tol.
  FermionOperator& compress(double tol = 0.0);
  void add_term(const LadderMonomial& m, cd coeff);

  // Largest mode index appearing, or -1 for a scalar operator.
  int max_mode() const;

 private:
  std::map<LadderMonomial, cd> terms_;
};

// Canonical ladder sequence of a monomial (creations ascending, then
// annihilations descending).
LadderSeq sequence_of(const LadderMonomial& m);

// Action of a canonical monomial on an occupation bitmask, with the
// Jordan-Wigner sign convention (sign = parity of occupied modes below the
// target mode; annihilations act smallest index first, creations largest
// first). Empty result when the state is killed.
std::optional<std::pair<std::uint64_t, double>> apply_monomial(
    const LadderMonomial& m, std::uint64_t mask);

}  // namespace qed
