#pragma once
// Matrix assembly on the occupation bases and the structural operators of the
// model: free fermion/photon energies, conserved charge and momentum, the
// momentum-space charge/current bilinears, and the static Coulomb energy.
//
// Matrix convention: entry (i, j) is the amplitude from basis state j to
// basis state i. Product-space index = fermion_index * boson_dim +
// boson_index.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "qed/dirac.hpp"
#include "qed/fock.hpp"
#include "qed/kernels.hpp"
#include "qed/ladder.hpp"

namespace qed {

using SparseOp = Eigen::SparseMatrix<cd, Eigen::RowMajor, std::int32_t>;
using DenseOp = Eigen::MatrixXcd;

// CSR copy of a sparse operator in the layout the runtime-dispatched kernels
// consume; the hot loop of the iterative eigensolvers runs on this.
struct CsrMatrix {
  std::int64_t rows = 0;
  std::vector<std::int64_t> rowptr;
  std::vector<std::int32_t> col;
  std::vector<cd> val;

  static CsrMatrix from(const SparseOp& m);
  std::int64_t dim() const { return rows; }
  void apply(const cd* x, cd* y) const {
    kernels::active_ops().csr_apply(rowptr.data(), col.data(), val.data(), x,
                                    y, static_cast<std::size_t>(rows));
  }
};

// Matrix of a ladder-operator polynomial on a fermion basis. States mapped
// outside the basis are dropped, which is exact when the basis is closed
// under the operator (e.g. a conserved-sector basis) and defines the
// compression onto the subspace otherwise.
SparseOp fermion_matrix(const FermionOperator& op, const FermionBasis& basis);
// Same over the plain full basis of n_modes modes (state index = bitmask).
SparseOp fermion_matrix(const FermionOperator& op, int n_modes);

// One tensor-product term F (x) P where P acts on a single photon mode.
struct PhotonFactor {
  enum class Kind { identity, annihilate, create, number };
  Kind kind = Kind::identity;
  int mode = 0;
};
struct ProductTerm {
  FermionOperator fermion;
  PhotonFactor photon;
};

SparseOp product_matrix(const std::vector<ProductTerm>& terms,
                        const FermionBasis& fb, const BosonBasis& bb);

inline DenseOp densify(const SparseOp& m) { return DenseOp(m); }

// sum_p omega(p) (particle + antiparticle number at p)
FermionOperator free_fermion_hamiltonian(const Lattice& lat, double mass);
// sum_modes |k_mode| a+_mode a_mode as product terms (fermion factor = 1)
std::vector<ProductTerm> free_photon_hamiltonian(const Lattice& lat);
// particle count minus antiparticle count
FermionOperator charge_operator(const Lattice& lat);
// integer momentum component (sum of nu[axis] over occupied modes)
FermionOperator momentum_component(const Lattice& lat, int axis);

// One ladder-operator pair of a bilinear, kept in written order so that the
// normal-ordering map (which is order-sensitive) can act on products.
struct BilinearTerm {
  LadderSeq ops;
  cd coeff;
};

// Momentum-space bilinear with spinor vertex V and momentum transfer -k:
//   V^{-1/2} sum_p [ <u(p), V u(p+k)> b+ b  +  <u(p), V v(-k-p)> b+ d+
//                  + <v(p), V u(k-p)> d b   +  <v(p), V v(p-k)> d d+ ],
// spin sums implied; momenta outside the lattice are dropped. The charge
// density is the vertex = identity case; current components use alpha
// matrices. The adjoint equals the same bilinear at -k.
std::vector<BilinearTerm> current_terms(const Lattice& lat, double mass,
                                        const Vec3i& k, const Mat4& vertex);
FermionOperator current_bilinear(const Lattice& lat, double mass,
                                 const Vec3i& k, const Mat4& vertex);

// coupling^2 sum_{k != 0} |k|^-2 rho(k) rho(-k)
FermionOperator coulomb_energy(const Lattice& lat, double mass,
                               double coupling);

// (1/V) sum_{k != 0} exp(i k.x) / |k|^2 (real by reflection symmetry)
double coulomb_potential(const Lattice& lat, const Vec3& x);

// Dense matrix of one photon ladder factor on the boson basis, with the same
// truncation behavior as product_matrix (creation out of the top occupation
// level is dropped).
DenseOp photon_factor_matrix(const PhotonFactor& f, const BosonBasis& bb);

// Matrix-free form of sum_t F_t (x) B_t on the product space, for iterative
// solvers at dimensions where assembling the full product matrix is wasteful.
// A vector x is viewed as a (boson_dim x fermion_dim) column-major matrix X
// (product index = fermion_index * boson_dim + boson_index), and each term
// contributes B X F^T. Terms sharing a photon factor are merged; identity
// photon factors skip their dense multiply.
class ProductOperator {
 public:
  ProductOperator(const std::vector<ProductTerm>& terms, const FermionBasis& fb,
                  const BosonBasis& bb);

  std::int64_t dim() const { return df_ * db_; }
  void apply(const cd* x, cd* y) const;

 private:
  struct Part {
    Eigen::SparseMatrix<cd, Eigen::ColMajor, std::int32_t> ft;  // F^T
    DenseOp b;
    bool identity;
  };
  std::vector<Part> parts_;
  std::int64_t df_ = 0, db_ = 0;
};

}  // namespace qed
