// Occupation-number bases: fermion mode numbering, conserved quantities of
// bitmasks, sector filtering, and the truncated boson basis.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qed/fock.hpp"

using namespace qed;

TEST_CASE("fermion mode numbering round-trips") {
  int expected = 0;
  for (int point = 0; point < 5; ++point)
    for (int species = 0; species < 2; ++species)
      for (int spin = 0; spin < 2; ++spin) {
        const int m = fermion_mode(point, species, spin);
        CHECK(m == expected++);
        CHECK(mode_point(m) == point);
        CHECK(mode_species(m) == species);
        CHECK(mode_spin(m) == spin);
      }
}

TEST_CASE("charge, momentum, and particle count of bitmasks") {
  const auto lat =
      Lattice::from_points(2.0 * M_PI, {{0, 0, -1}, {0, 0, 0}, {0, 0, 1}});
  // point 0 = (0,0,-1), point 1 = origin, point 2 = (0,0,1)
  CHECK(charge_of(0) == 0);
  CHECK(particle_count(0) == 0);
  CHECK(momentum_of(0, lat) == Vec3i{0, 0, 0});

  // particle at point 2 spin 0, antiparticle at point 0 spin 1
  const std::uint64_t mask = (1ULL << fermion_mode(2, 0, 0)) |
                             (1ULL << fermion_mode(0, 1, 1));
  CHECK(charge_of(mask) == 0);
  CHECK(particle_count(mask) == 2);
  CHECK(momentum_of(mask, lat) == Vec3i{0, 0, 0});

  const std::uint64_t charged = (1ULL << fermion_mode(2, 0, 0)) |
                                (1ULL << fermion_mode(2, 0, 1));
  CHECK(charge_of(charged) == 2);
  CHECK(momentum_of(charged, lat) == Vec3i{0, 0, 2});
}

TEST_CASE("full fermion basis enumerates all bitmasks in order") {
  const auto lat =
      Lattice::from_points(2.0 * M_PI, {{0, 0, -1}, {0, 0, 0}, {0, 0, 1}});
  const auto basis = FermionBasis::full(lat);
  CHECK(basis.n_modes() == 12);
  REQUIRE(basis.dim() == std::size_t{1} << 12);
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{100},
                        std::size_t{4095}}) {
    CHECK(basis.state(i) == i);
    CHECK(basis.index_of(i) == static_cast<std::ptrdiff_t>(i));
  }
}

TEST_CASE("full basis refuses dimensions beyond the limit") {
  const auto lat = Lattice::box(2.0 * M_PI, 1);  // 27 points, 108 modes
  CHECK_THROWS_AS(FermionBasis::full(lat), std::invalid_argument);
  const auto lat7 = Lattice::ball(2.0 * M_PI, 1.0);  // 28 modes
  CHECK_THROWS_AS(FermionBasis::full(lat7), std::invalid_argument);
  CHECK(FermionBasis::full(lat7, std::uint64_t{1} << 28).dim() ==
        std::uint64_t{1} << 28);
}

TEST_CASE("filtered basis keeps exactly the states the filter admits") {
  const auto lat =
      Lattice::from_points(2.0 * M_PI, {{0, 0, -1}, {0, 0, 0}, {0, 0, 1}});
  SectorFilter f;
  f.charge = 0;
  f.momentum = Vec3i{0, 0, 0};
  const auto sector = FermionBasis::filtered(lat, f);
  CHECK(sector.dim() > 0);
  CHECK(sector.index_of(0) == 0);  // vacuum is admitted and comes first

  std::size_t admitted = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << 12); ++mask) {
    const bool ok = f.admits(mask, lat);
    if (ok) ++admitted;
    CHECK((sector.index_of(mask) >= 0) == ok);
  }
  CHECK(admitted == sector.dim());

  // States are stored ascending; index_of inverts state().
  for (std::size_t i = 0; i + 1 < sector.dim(); ++i)
    CHECK(sector.state(i) < sector.state(i + 1));
  for (std::size_t i = 0; i < sector.dim(); ++i)
    CHECK(sector.index_of(sector.state(i)) == static_cast<std::ptrdiff_t>(i));

  SectorFilter capped = f;
  capped.max_particles = 2;
  const auto small = FermionBasis::filtered(lat, capped);
  CHECK(small.dim() < sector.dim());
  for (std::size_t i = 0; i < small.dim(); ++i)
    CHECK(particle_count(small.state(i)) <= 2);
}

TEST_CASE("boson basis dimension, ordering, and indexing") {
  const BosonBasis bb(4, 2);
  // totals 0, 1, 2 over 4 modes: 1 + 4 + 10
  REQUIRE(bb.dim() == 15);
  CHECK(bb.n_modes() == 4);
  CHECK(bb.max_total() == 2);
  CHECK(bb.total_occupation(0) == 0);

  // Ordered by total occupation, then lexicographically by occupation vector.
  for (std::size_t s = 0; s + 1 < bb.dim(); ++s)
    CHECK(bb.total_occupation(s) <= bb.total_occupation(s + 1));
  CHECK(bb.index_of({0, 0, 0, 0}) == 0);
  CHECK(bb.index_of({2, 0, 0, 0}) > 4);

  for (std::size_t s = 0; s < bb.dim(); ++s) {
    std::vector<int> occ(4);
    int total = 0;
    for (int m = 0; m < 4; ++m) {
      occ[m] = bb.occupation(s, m);
      total += occ[m];
    }
    CHECK(total == bb.total_occupation(s));
    CHECK(total <= 2);
    CHECK(bb.index_of(occ) == static_cast<std::ptrdiff_t>(s));
  }
  CHECK(bb.index_of({1, 1, 1, 0}) == -1);  // beyond the truncation
}

TEST_CASE("shifted_index walks the occupation lattice") {
  const BosonBasis bb(3, 2);
  const auto vac = bb.index_of({0, 0, 0});
  REQUIRE(vac == 0);
  const auto one = bb.shifted_index(0, 1, +1);
  REQUIRE(one >= 0);
  CHECK(bb.occupation(one, 1) == 1);
  const auto two = bb.shifted_index(one, 1, +1);
  REQUIRE(two >= 0);
  CHECK(bb.occupation(two, 1) == 2);
  CHECK(bb.shifted_index(two, 1, +1) == -1);   // over the cap
  CHECK(bb.shifted_index(0, 0, -1) == -1);     // below zero
  CHECK(bb.shifted_index(two, 1, -1) == one);  // inverse step
}

TEST_CASE("boson basis bounds are enforced") {
  CHECK_THROWS_AS(BosonBasis(17, 1), std::invalid_argument);
  CHECK_THROWS_AS(BosonBasis(2, 16), std::invalid_argument);
  CHECK_THROWS_AS(BosonBasis(-1, 1), std::invalid_argument);
  CHECK(BosonBasis(0, 0).dim() == 1);  // no modes: just the vacuum
  CHECK(BosonBasis(16, 1).dim() == 17);
}

TEST_CASE("boson dimensions match the stars-and-bars count") {
  auto choose = [](int n, int r) {
    double v = 1.0;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return static_cast<std::size_t>(std::llround(v));
  };
  for (int modes : {1, 2, 4, 6}) {
    for (int cap : {0, 1, 2, 3}) {
      std::size_t expect = 0;
      for (int t = 0; t <= cap; ++t) expect += choose(modes + t - 1, t);
      CHECK(BosonBasis(modes, cap).dim() == expect);
    }
  }
}
