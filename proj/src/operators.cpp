#include "qed/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace qed {

CsrMatrix CsrMatrix::from(const SparseOp& m) {
  SparseOp c = m;
  c.makeCompressed();
  CsrMatrix out;
  out.rows = c.rows();
  out.rowptr.assign(c.outerIndexPtr(), c.outerIndexPtr() + c.rows() + 1);
  out.col.assign(c.innerIndexPtr(), c.innerIndexPtr() + c.nonZeros());
  out.val.assign(c.valuePtr(), c.valuePtr() + c.nonZeros());
  return out;
}

SparseOp fermion_matrix(const FermionOperator& op, const FermionBasis& basis) {
  const auto dim = static_cast<std::int32_t>(basis.dim());
  std::vector<Eigen::Triplet<cd, std::int32_t>> trips;
  for (std::int32_t j = 0; j < dim; ++j) {
    const std::uint64_t state = basis.state(j);
    for (const auto& [mono, coeff] : op.terms()) {
      auto hit = apply_monomial(mono, state);
      if (!hit) continue;
      std::ptrdiff_t i = basis.index_of(hit->first);
      if (i < 0) continue;
      trips.emplace_back(static_cast<std::int32_t>(i), j, coeff * hit->second);
    }
  }
  SparseOp m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseOp fermion_matrix(const FermionOperator& op, int n_modes) {
  if (n_modes < 0 || n_modes > 20)
    throw std::invalid_argument("fermion_matrix: plain basis limited to 20 modes");
  const std::int32_t dim = std::int32_t{1} << n_modes;
  std::vector<Eigen::Triplet<cd, std::int32_t>> trips;
  for (std::int32_t j = 0; j < dim; ++j)
    for (const auto& [mono, coeff] : op.terms()) {
      auto hit = apply_monomial(mono, static_cast<std::uint64_t>(j));
      if (!hit || hit->first >= static_cast<std::uint64_t>(dim)) continue;
      trips.emplace_back(static_cast<std::int32_t>(hit->first), j,
                         coeff * hit->second);
    }
  SparseOp m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseOp product_matrix(const std::vector<ProductTerm>& terms,
                        const FermionBasis& fb, const BosonBasis& bb) {
  const auto df = static_cast<std::int64_t>(fb.dim());
  const auto db = static_cast<std::int64_t>(bb.dim());
  if (df * db > std::int64_t{1} << 31)
    throw std::invalid_argument("product_matrix: space too large for 32-bit indexing");
  const auto dim = static_cast<std::int32_t>(df * db);
  std::vector<Eigen::Triplet<cd, std::int32_t>> trips;
  for (const ProductTerm& term : terms) {
    for (std::int64_t jf = 0; jf < df; ++jf) {
      const std::uint64_t state = fb.state(jf);
      for (const auto& [mono, coeff] : term.fermion.terms()) {
        auto hit = apply_monomial(mono, state);
        if (!hit) continue;
        std::ptrdiff_t ifr = fb.index_of(hit->first);
        if (ifr < 0) continue;
        const cd amp = coeff * hit->second;
        const std::int64_t row0 = ifr * db;
        const std::int64_t col0 = jf * db;
        const int m = term.photon.mode;
        for (std::int64_t jb = 0; jb < db; ++jb) {
          std::int64_t ib = jb;
          cd f = amp;
          switch (term.photon.kind) {
            case PhotonFactor::Kind::identity:
              break;
            case PhotonFactor::Kind::number: {
              int occ = bb.occupation(jb, m);
              if (occ == 0) continue;
              f *= static_cast<double>(occ);
              break;
            }
            case PhotonFactor::Kind::annihilate: {
              int occ = bb.occupation(jb, m);
              if (occ == 0) continue;
              ib = bb.shifted_index(jb, m, -1);
              f *= std::sqrt(static_cast<double>(occ));
              break;
            }
            case PhotonFactor::Kind::create: {
              ib = bb.shifted_index(jb, m, +1);
              if (ib < 0) continue;  // outside the truncation
              f *= std::sqrt(static_cast<double>(bb.occupation(jb, m) + 1));
              break;
            }
          }
          trips.emplace_back(static_cast<std::int32_t>(row0 + ib),
                             static_cast<std::int32_t>(col0 + jb), f);
        }
      }
    }
  }
  SparseOp out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

FermionOperator free_fermion_hamiltonian(const Lattice& lat, double mass) {
  FermionOperator h;
  for (int p = 0; p < lat.n_points(); ++p) {
    const double w = omega(lat.k_of(p), mass);
    for (int species = 0; species < 2; ++species)
      for (int spin = 0; spin < 2; ++spin)
        h += w * FermionOperator::number(fermion_mode(p, species, spin));
  }
  return h;
}

std::vector<ProductTerm> free_photon_hamiltonian(const Lattice& lat) {
  std::vector<ProductTerm> terms;
  for (int m = 0; m < lat.n_photon_modes(); ++m) {
    const double w = lat.k_norm(lat.photon_mode_point(m));
    terms.push_back({w * FermionOperator::identity(),
                     {PhotonFactor::Kind::number, m}});
  }
  return terms;
}

FermionOperator charge_operator(const Lattice& lat) {
  FermionOperator q;
  for (int p = 0; p < lat.n_points(); ++p)
    for (int spin = 0; spin < 2; ++spin) {
      q += FermionOperator::number(fermion_mode(p, 0, spin));
      q -= FermionOperator::number(fermion_mode(p, 1, spin));
    }
  return q;
}

FermionOperator momentum_component(const Lattice& lat, int axis) {
  FermionOperator p;
  for (int i = 0; i < lat.n_points(); ++i) {
    const double nu = lat.point(i)[axis];
    if (nu == 0.0) continue;
    for (int species = 0; species < 2; ++species)
      for (int spin = 0; spin < 2; ++spin)
        p += nu * FermionOperator::number(fermion_mode(i, species, spin));
  }
  return p;
}

std::vector<BilinearTerm> current_terms(const Lattice& lat, double mass,
                                        const Vec3i& k, const Mat4& vertex) {
  std::vector<BilinearTerm> out;
  const double vol_factor = 1.0 / std::sqrt(lat.volume());
  auto push = [&](LadderOp a, LadderOp b, cd amp) {
    if (amp != 0.0) out.push_back({{a, b}, vol_factor * amp});
  };
  for (int ip = 0; ip < lat.n_points(); ++ip) {
    const Vec3i p = lat.point(ip);
    const Vec3 kp = lat.k_of(ip);
    // particle -> particle, momentum p+k -> p
    if (int iq = lat.index_of(add(p, k)); iq >= 0) {
      const Vec3 kq = lat.k_of(iq);
      for (int l = 0; l < 2; ++l)
        for (int lp = 0; lp < 2; ++lp)
          push({true, fermion_mode(ip, 0, l)}, {false, fermion_mode(iq, 0, lp)},
               u_spinor(l, kp, mass).dot(vertex * u_spinor(lp, kq, mass)));
    }
    // pair creation: particle at p, antiparticle at -k-p
    if (int iq = lat.index_of(neg(add(k, p))); iq >= 0) {
      const Vec3 kq = lat.k_of(iq);
      for (int l = 0; l < 2; ++l)
        for (int lp = 0; lp < 2; ++lp)
          push({true, fermion_mode(ip, 0, l)}, {true, fermion_mode(iq, 1, lp)},
               u_spinor(l, kp, mass).dot(vertex * v_spinor(lp, kq, mass)));
    }
    // pair annihilation: antiparticle at p, particle at k-p
    if (int iq = lat.index_of(sub(k, p)); iq >= 0) {
      const Vec3 kq = lat.k_of(iq);
      for (int l = 0; l < 2; ++l)
        for (int lp = 0; lp < 2; ++lp)
          push({false, fermion_mode(ip, 1, l)}, {false, fermion_mode(iq, 0, lp)},
               v_spinor(l, kp, mass).dot(vertex * u_spinor(lp, kq, mass)));
    }
    // antiparticle -> antiparticle, written in d d+ order, momentum p -> p-k
    if (int iq = lat.index_of(sub(p, k)); iq >= 0) {
      const Vec3 kq = lat.k_of(iq);
      for (int l = 0; l < 2; ++l)
        for (int lp = 0; lp < 2; ++lp)
          push({false, fermion_mode(ip, 1, l)}, {true, fermion_mode(iq, 1, lp)},
               v_spinor(l, kp, mass).dot(vertex * v_spinor(lp, kq, mass)));
    }
  }
  return out;
}

FermionOperator current_bilinear(const Lattice& lat, double mass,
                                 const Vec3i& k, const Mat4& vertex) {
  FermionOperator op;
  for (const BilinearTerm& t : current_terms(lat, mass, k, vertex))
    op += FermionOperator::from_sequence(t.ops, t.coeff);
  return op;
}

FermionOperator coulomb_energy(const Lattice& lat, double mass,
                               double coupling) {
  FermionOperator h;
  const Mat4 one = Mat4::Identity();
  for (int ik : lat.nonzero_points()) {
    const Vec3i k = lat.point(ik);
    const double w = coupling * coupling / dot(lat.k_of(ik), lat.k_of(ik));
    h += w * (current_bilinear(lat, mass, k, one) *
              current_bilinear(lat, mass, neg(k), one));
  }
  return h;
}

double coulomb_potential(const Lattice& lat, const Vec3& x) {
  double sum = 0.0;
  for (int ik : lat.nonzero_points()) {
    const Vec3 k = lat.k_of(ik);
    sum += std::cos(dot(k, x)) / dot(k, k);
  }
  return sum / lat.volume();
}

DenseOp photon_factor_matrix(const PhotonFactor& f, const BosonBasis& bb) {
  const auto db = static_cast<std::int64_t>(bb.dim());
  DenseOp out = DenseOp::Zero(db, db);
  const int m = f.mode;
  for (std::int64_t j = 0; j < db; ++j) {
    const int occ = bb.occupation(j, m);
    switch (f.kind) {
      case PhotonFactor::Kind::identity:
        out(j, j) = 1.0;
        break;
      case PhotonFactor::Kind::number:
        out(j, j) = static_cast<double>(occ);
        break;
      case PhotonFactor::Kind::annihilate:
        if (occ > 0)
          out(bb.shifted_index(j, m, -1), j) = std::sqrt(double(occ));
        break;
      case PhotonFactor::Kind::create: {
        const std::ptrdiff_t i = bb.shifted_index(j, m, +1);
        if (i >= 0) out(i, j) = std::sqrt(double(occ) + 1.0);
        break;
      }
    }
  }
  return out;
}

ProductOperator::ProductOperator(const std::vector<ProductTerm>& terms,
                                 const FermionBasis& fb, const BosonBasis& bb)
    : df_(static_cast<std::int64_t>(fb.dim())),
      db_(static_cast<std::int64_t>(bb.dim())) {
  // Merge fermion factors that share a photon factor before building any
  // matrices; the sparse products dominate apply().
  std::map<std::pair<int, int>, FermionOperator> merged;
  for (const ProductTerm& t : terms) {
    const bool id = t.photon.kind == PhotonFactor::Kind::identity;
    merged[{static_cast<int>(t.photon.kind), id ? 0 : t.photon.mode}] +=
        t.fermion;
  }
  for (const auto& [key, fop] : merged) {
    Part p;
    p.identity = key.first == static_cast<int>(PhotonFactor::Kind::identity);
    PhotonFactor pf{static_cast<PhotonFactor::Kind>(key.first), key.second};
    if (!p.identity) p.b = photon_factor_matrix(pf, bb);
    p.ft = fermion_matrix(fop, fb).transpose();
    parts_.push_back(std::move(p));
  }
}

void ProductOperator::apply(const cd* x, cd* y) const {
  Eigen::Map<const DenseOp> xm(x, db_, df_);
  Eigen::Map<DenseOp> ym(y, db_, df_);
  ym.setZero();
  DenseOp t(db_, df_);
  for (const Part& p : parts_) {
    t.noalias() = xm * p.ft;
    if (p.identity)
      ym += t;
    else
      ym.noalias() += p.b * t;
  }
}

}  // namespace qed
