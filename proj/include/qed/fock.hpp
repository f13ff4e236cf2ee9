#pragma once
// Occupation-number bases. Fermions live in a bit basis over 4 modes per
// lattice point (mode = 4*point + 2*species + spin, species 0 = particle,
// 1 = antiparticle); states are bitmasks listed in ascending order. Bosons
// live in a truncated occupation basis over the photon modes (two per nonzero
// lattice point) capped by total occupation; states are ordered by total
// occupation, then lexicographically. Product-space index = fermion_index *
// boson_dim + boson_index.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qed/lattice.hpp"

namespace qed {

constexpr int fermion_mode(int point, int species, int spin) {
  return 4 * point + 2 * species + spin;
}
constexpr int mode_point(int mode) { return mode / 4; }
constexpr int mode_species(int mode) { return (mode / 2) % 2; }
constexpr int mode_spin(int mode) { return mode % 2; }

// Particle count minus antiparticle count.
int charge_of(std::uint64_t mask);
// Total integer momentum (sum of nu over occupied modes).
Vec3i momentum_of(std::uint64_t mask, const Lattice& lat);
int particle_count(std::uint64_t mask);

// Restriction of the fermion basis to a joint eigenspace of the conserved
// quantities, optionally capped in total particle number.
struct SectorFilter {
  std::optional<int> charge;
  std::optional<Vec3i> momentum;
  std::optional<int> max_particles;

  bool admits(std::uint64_t mask, const Lattice& lat) const;
};

class FermionBasis {
 public:
  // All 2^(4 |lattice|) bitmasks; refuses above the dimension limit.
  static FermionBasis full(const Lattice& lat,
                           std::uint64_t limit = std::uint64_t{1} << 20);
  static FermionBasis filtered(const Lattice& lat, const SectorFilter& filter);

  const Lattice& lattice() const { return *lat_; }
  int n_modes() const { return n_modes_; }
  std::size_t dim() const { return full_ ? full_dim_ : states_.size(); }
  std::uint64_t state(std::size_t i) const {
    return full_ ? static_cast<std::uint64_t>(i) : states_[i];
  }
  // Position of the mask in this basis, or -1 when absent.
  std::ptrdiff_t index_of(std::uint64_t mask) const;

 private:
  FermionBasis(const Lattice& lat) : lat_(&lat), n_modes_(4 * lat.n_points()) {}

  const Lattice* lat_;
  int n_modes_;
  bool full_ = false;
  std::uint64_t full_dim_ = 0;
  std::vector<std::uint64_t> states_;  // ascending, used when !full_
};

class BosonBasis {
 public:
  // Occupation vectors over n_modes modes with total occupation <= max_total.
  // Bounds: n_modes <= 16 and max_total <= 15 (occupations are packed four
  // bits per mode for indexing).
  BosonBasis(int n_modes, int max_total);

  int n_modes() const { return n_modes_; }
  int max_total() const { return max_total_; }
  std::size_t dim() const { return dim_; }
  int occupation(std::size_t state, int mode) const {
    return occ_[state * n_modes_ + mode];
  }
  int total_occupation(std::size_t state) const;
  // Position of an occupation vector, or -1 when it is outside the truncation.
  std::ptrdiff_t index_of(const std::vector<int>& occ) const;
  std::ptrdiff_t shifted_index(std::size_t state, int mode, int delta) const;

 private:
  std::uint64_t key_of(std::size_t state) const;

  int n_modes_;
  int max_total_;
  std::size_t dim_;
  std::vector<std::uint8_t> occ_;  // dim * n_modes, row-major
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace qed
