#include "qed/fock.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qed {

namespace {

// Species-0 (particle) modes occupy bit positions 0,1 mod 4.
constexpr std::uint64_t kParticleBits = 0x3333333333333333ull;
constexpr std::uint64_t kAntiparticleBits = ~kParticleBits;

std::uint64_t mode_bits(int n_modes) {
  return n_modes == 64 ? ~std::uint64_t{0}
                       : (std::uint64_t{1} << n_modes) - 1;
}

}  // namespace

int charge_of(std::uint64_t mask) {
  return std::popcount(mask & kParticleBits) -
         std::popcount(mask & kAntiparticleBits);
}

Vec3i momentum_of(std::uint64_t mask, const Lattice& lat) {
  Vec3i total{0, 0, 0};
  while (mask) {
    int mode = std::countr_zero(mask);
    total = add(total, lat.point(mode_point(mode)));
    mask &= mask - 1;
  }
  return total;
}

int particle_count(std::uint64_t mask) { return std::popcount(mask); }

bool SectorFilter::admits(std::uint64_t mask, const Lattice& lat) const {
  if (charge && charge_of(mask) != *charge) return false;
  if (momentum && momentum_of(mask, lat) != *momentum) return false;
  if (max_particles && particle_count(mask) > *max_particles) return false;
  return true;
}

FermionBasis FermionBasis::full(const Lattice& lat, std::uint64_t limit) {
  FermionBasis basis(lat);
  if (basis.n_modes_ > 62)
    throw std::invalid_argument("fermion basis: more than 62 modes");
  std::uint64_t dim = std::uint64_t{1} << basis.n_modes_;
  if (dim > limit)
    throw std::invalid_argument(
        "fermion basis: full enumeration would need " + std::to_string(dim) +
        " states (limit " + std::to_string(limit) +
        "); use a sector filter or raise the limit explicitly");
  basis.full_ = true;
  basis.full_dim_ = dim;
  return basis;
}

FermionBasis FermionBasis::filtered(const Lattice& lat,
                                    const SectorFilter& filter) {
  FermionBasis basis(lat);
  const int n = basis.n_modes_;
  if (n > 62) throw std::invalid_argument("fermion basis: more than 62 modes");

  if (filter.charge && filter.momentum) {
    // Meet in the middle: enumerate the two halves of the mode range and pair
    // them through the conserved quantities, so the filtered basis is built
    // without visiting all 2^n masks.
    const int h = n / 2;
    struct Entry {
      std::uint32_t mask;
      std::uint8_t particles;
    };
    auto pack = [](int q, const Vec3i& p) {
      auto b = [](int v) { return static_cast<std::uint64_t>(v + 512) & 0x3ff; };
      return b(q) | (b(p[0]) << 10) | (b(p[1]) << 20) | (b(p[2]) << 30);
    };
    std::unordered_map<std::uint64_t, std::vector<Entry>> high;
    const std::uint64_t n_high = std::uint64_t{1} << (n - h);
    for (std::uint64_t m = 0; m < n_high; ++m) {
      std::uint64_t shifted = m << h;
      high[pack(charge_of(shifted), momentum_of(shifted, lat))].push_back(
          {static_cast<std::uint32_t>(m),
           static_cast<std::uint8_t>(std::popcount(m))});
    }
    const int cap = filter.max_particles ? *filter.max_particles : n;
    const std::uint64_t n_low = std::uint64_t{1} << h;
    for (std::uint64_t m = 0; m < n_low; ++m) {
      int lo_particles = std::popcount(m);
      if (lo_particles > cap) continue;
      std::uint64_t key = pack(*filter.charge - charge_of(m),
                               sub(*filter.momentum, momentum_of(m, lat)));
      auto it = high.find(key);
      if (it == high.end()) continue;
      for (const Entry& e : it->second)
        if (lo_particles + e.particles <= cap)
          basis.states_.push_back((std::uint64_t{e.mask} << h) | m);
    }
    std::sort(basis.states_.begin(), basis.states_.end());
    return basis;
  }

  // Partially constrained filters fall back to a direct scan, which is only
  // viable for small mode counts.
  if (n > 20)
    throw std::invalid_argument(
        "fermion basis: filters must fix both charge and momentum beyond 20 "
        "modes (direct scan of 2^" +
        std::to_string(n) + " states refused)");
  for (std::uint64_t m = 0; m <= mode_bits(n); ++m)
    if (filter.admits(m, lat)) basis.states_.push_back(m);
  return basis;
}

std::ptrdiff_t FermionBasis::index_of(std::uint64_t mask) const {
  if (full_)
    return mask < full_dim_ ? static_cast<std::ptrdiff_t>(mask) : -1;
  auto it = std::lower_bound(states_.begin(), states_.end(), mask);
  if (it == states_.end() || *it != mask) return -1;
  return it - states_.begin();
}

BosonBasis::BosonBasis(int n_modes, int max_total)
    : n_modes_(n_modes), max_total_(max_total) {
  if (n_modes < 0 || n_modes > 16)
    throw std::invalid_argument("boson basis: need 0 <= n_modes <= 16");
  if (max_total < 0 || max_total > 15)
    throw std::invalid_argument("boson basis: need 0 <= max_total <= 15");
  std::vector<int> occ(n_modes, 0);
  // States ordered by total occupation, then lexicographically ascending.
  auto emit = [&] {
    for (int v : occ) occ_.push_back(static_cast<std::uint8_t>(v));
  };
  for (int total = 0; total <= max_total; ++total) {
    auto gen = [&](auto&& self, int mode, int remaining) -> void {
      if (mode == n_modes_) {
        if (remaining == 0) emit();
        return;
      }
      if (mode == n_modes_ - 1) {
        occ[mode] = remaining;
        emit();
        occ[mode] = 0;
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        occ[mode] = v;
        self(self, mode + 1, remaining - v);
        occ[mode] = 0;
      }
    };
    if (n_modes_ == 0) {
      if (total == 0) emit();
    } else {
      gen(gen, 0, total);
    }
  }
  dim_ = n_modes_ == 0 ? 1 : occ_.size() / n_modes_;
  index_.reserve(dim_);
  for (std::size_t s = 0; s < dim_; ++s) index_.emplace(key_of(s), s);
}

int BosonBasis::total_occupation(std::size_t state) const {
  int t = 0;
  for (int m = 0; m < n_modes_; ++m) t += occupation(state, m);
  return t;
}

std::uint64_t BosonBasis::key_of(std::size_t state) const {
  std::uint64_t key = 0;
  for (int m = 0; m < n_modes_; ++m)
    key |= std::uint64_t(occ_[state * n_modes_ + m]) << (4 * m);
  return key;
}

std::ptrdiff_t BosonBasis::index_of(const std::vector<int>& occ) const {
  if (static_cast<int>(occ.size()) != n_modes_)
    throw std::invalid_argument("boson basis: occupation vector length mismatch");
  std::uint64_t key = 0;
  int total = 0;
  for (int m = 0; m < n_modes_; ++m) {
    if (occ[m] < 0) return -1;
    total += occ[m];
    key |= std::uint64_t(occ[m]) << (4 * m);
  }
  if (total > max_total_) return -1;
  auto it = index_.find(key);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::ptrdiff_t BosonBasis::shifted_index(std::size_t state, int mode,
                                         int delta) const {
  int occ = occupation(state, mode);
  if (occ + delta < 0) return -1;
  if (delta > 0 && total_occupation(state) + delta > max_total_) return -1;
  std::uint64_t key = key_of(state) +
                      (delta >= 0 ? std::uint64_t(delta) << (4 * mode)
                                  : -(std::uint64_t(-delta) << (4 * mode)));
  auto it = index_.find(key);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

}  // namespace qed
