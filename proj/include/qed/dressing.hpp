#pragma once
// Current-photon coupling and everything derived from it: the transverse
// current components, the photon-dressing operators and dressed annihilators,
// the interaction Hamiltonian, the current-current and Coulomb energies with
// their normal-ordered images, the quadratic remainder channels produced by
// normal ordering, the static fermion-fermion interaction (assembled by two
// independent routes), the modified quadratic fermion Hamiltonian, and the
// full Hamiltonian on the fermion-photon product space.

#include <array>
#include <vector>

#include "qed/operators.hpp"

namespace qed {

struct ModelParams {
  double mass = 1.0;
  double coupling = 1.0;
};

// J(k) . e_j(k): current bilinear with vertex alpha . e_j(k); j in {0,1}.
std::vector<BilinearTerm> transverse_current_terms(const Lattice& lat,
                                                   double mass, const Vec3i& k,
                                                   int j);
FermionOperator transverse_current(const Lattice& lat, double mass,
                                   const Vec3i& k, int j);

// s_j(k) = -coupling * (J(k) . e_j(k)) / sqrt(2 |k|^3)
FermionOperator dressing_operator(const Lattice& lat, const ModelParams& p,
                                  const Vec3i& k, int j);

// Dressed annihilator 1 (x) a_j(k) + s_j(k) (x) 1.
std::vector<ProductTerm> dressed_annihilator_terms(const Lattice& lat,
                                                   const ModelParams& p,
                                                   const Vec3i& k, int j);

// -coupling * sum_{k != 0, j} (2|k|)^{-1/2} [ (J(-k).e_j(k)) (x) a_j(k)
//                                           + (J(k).e_j(k)) (x) a+_j(k) ]
std::vector<ProductTerm> interaction_terms(const Lattice& lat,
                                           const ModelParams& p);

// (coupling^2/2) sum_{k != 0, j} |k|^-2 (J(k).e_j(k)) (J(-k).e_j(k))
FermionOperator current_current_energy(const Lattice& lat,
                                       const ModelParams& p);
// Images under the normal-ordering map, taken on the written operator order
// of the bilinear products.
FermionOperator current_current_energy_ordered(const Lattice& lat,
                                               const ModelParams& p);
FermionOperator coulomb_energy_ordered(const Lattice& lat,
                                       const ModelParams& p);

// Quadratic remainder channels: the energy minus its normal-ordered image
// splits into four conserved-structure buckets (particle hopping, pair
// creation, pair annihilation, antiparticle hopping plus the contraction
// scalar). Summing the four reproduces the remainder exactly.
std::array<FermionOperator, 4> current_truncation_terms(const Lattice& lat,
                                                        const ModelParams& p);
std::array<FermionOperator, 4> coulomb_truncation_terms(const Lattice& lat,
                                                        const ModelParams& p);

// Static interaction: Coulomb energy minus current-current energy. The
// second route assembles the same operator through the 16x16 pair kernel
// contracted against spinor-component bilinears; the two must agree.
FermionOperator static_interaction(const Lattice& lat, const ModelParams& p);
FermionOperator static_interaction_kernel_route(const Lattice& lat,
                                                const ModelParams& p);

// Free fermion energy plus the difference of the two remainder-channel sums;
// quadratic, charge- and momentum-conserving.
FermionOperator modified_fermion_hamiltonian(const Lattice& lat,
                                             const ModelParams& p);

// Full Hamiltonian: free photon + free fermion energies, the photon-fermion
// coupling, and the order-preserving image of the Coulomb energy acting on
// the fermion factor alone. The current-current energy is not a term here:
// it emerges from this Hamiltonian by completing the square in the photon
// ladder operators.
std::vector<ProductTerm> total_hamiltonian_terms(const Lattice& lat,
                                                 const ModelParams& p);

}  // namespace qed
