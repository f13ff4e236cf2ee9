#include "qed/dressing.hpp"

#include <cmath>
#include <optional>

namespace qed {

namespace {

using Mat2 = Eigen::Matrix2cd;

Mat4 unit_matrix(int a, int b) {
  Mat4 m = Mat4::Zero();
  m(a, b) = 1.0;
  return m;
}

// Spinor-pair coefficient blocks of a bilinear with vertex X and momentum
// transfer -k, one 2x2 spin matrix per block and momentum argument. Empty
// when a momentum falls outside the lattice.
struct Blocks {
  const Lattice& lat;
  double mass;
  Mat4 vertex;
  double vol;

  Mat2 fill(const Vec3& p, const Vec3& q, bool left_v, bool right_v) const {
    Mat2 m;
    for (int l = 0; l < 2; ++l)
      for (int lp = 0; lp < 2; ++lp) {
        Spinor x = left_v ? v_spinor(l, p, mass) : u_spinor(l, p, mass);
        Spinor y = right_v ? v_spinor(lp, q, mass) : u_spinor(lp, q, mass);
        m(l, lp) = x.dot(vertex * y) / std::sqrt(vol);
      }
    return m;
  }
  // <u(q), X u(q+k)>
  std::optional<Mat2> a(const Vec3i& q, const Vec3i& k) const {
    if (!lat.contains(q) || !lat.contains(add(q, k))) return std::nullopt;
    return fill(lat.k_of(q), lat.k_of(add(q, k)), false, false);
  }
  // <u(q), X v(-k-q)>
  std::optional<Mat2> b(const Vec3i& q, const Vec3i& k) const {
    if (!lat.contains(q) || !lat.contains(neg(add(k, q)))) return std::nullopt;
    return fill(lat.k_of(q), lat.k_of(neg(add(k, q))), false, true);
  }
  // <v(q), X u(k-q)>
  std::optional<Mat2> c(const Vec3i& q, const Vec3i& k) const {
    if (!lat.contains(q) || !lat.contains(sub(k, q))) return std::nullopt;
    return fill(lat.k_of(q), lat.k_of(sub(k, q)), true, false);
  }
  // <v(q), X v(q-k)>
  std::optional<Mat2> d(const Vec3i& q, const Vec3i& k) const {
    if (!lat.contains(q) || !lat.contains(sub(q, k))) return std::nullopt;
    return fill(lat.k_of(q), lat.k_of(sub(q, k)), true, true);
  }
};

// Accumulates the four remainder channels for one momentum k and one vertex,
// weighted by w. Channel layout:
//   0: particle -> particle   1: pair creation
//   2: pair annihilation      3: antiparticle -> antiparticle (+ scalar)
void accumulate_channels(std::array<FermionOperator, 4>& e, const Lattice& lat,
                         double mass, const Vec3i& k, const Mat4& vertex,
                         double w) {
  Blocks blk{lat, mass, vertex, lat.volume()};
  const Vec3i mk = neg(k);
  auto term = [&](FermionOperator& dst, std::initializer_list<LadderOp> ops,
                  cd coeff) {
    if (coeff != 0.0) dst += FermionOperator::from_sequence(LadderSeq(ops), w * coeff);
  };
  for (int iq = 0; iq < lat.n_points(); ++iq) {
    const Vec3i q = lat.point(iq);
    // Channel 0a: A(q) A'(q+k) on particle modes at q.
    if (auto A = blk.a(q, k)) {
      Mat2 m = *A * *blk.a(add(q, k), mk);
      for (int l1 = 0; l1 < 2; ++l1)
        for (int l4 = 0; l4 < 2; ++l4)
          term(e[0],
               {{true, fermion_mode(iq, 0, l1)}, {false, fermion_mode(iq, 0, l4)}},
               m(l1, l4));
    }
    // Channels using C(q) (pair annihilation block), all supported on k-q.
    if (auto C = blk.c(q, k)) {
      const int ikq = lat.index_of(sub(k, q));
      const int imq = lat.index_of(neg(q));
      // 0b: -B'(k-q) C(q) on particle modes at k-q.
      if (auto Bp = blk.b(sub(k, q), mk)) {
        Mat2 m = *Bp * *C;
        for (int l3 = 0; l3 < 2; ++l3)
          for (int l2 = 0; l2 < 2; ++l2)
            term(e[0],
                 {{true, fermion_mode(ikq, 0, l3)},
                  {false, fermion_mode(ikq, 0, l2)}},
                 -m(l3, l2));
        // 3a: C(q) B'(k-q), written d d+ so normal ordering of this channel
        // also carries the contraction scalar.
        Mat2 n = *C * *Bp;
        for (int l1 = 0; l1 < 2; ++l1)
          for (int l4 = 0; l4 < 2; ++l4)
            term(e[3],
                 {{false, fermion_mode(iq, 1, l1)},
                  {true, fermion_mode(iq, 1, l4)}},
                 n(l1, l4));
      }
      // 2a: C(q) A'(k-q): annihilates the pair (d at q, b at -q).
      if (auto Ap = blk.a(sub(k, q), mk)) {
        Mat2 m = *C * *Ap;
        for (int l1 = 0; l1 < 2; ++l1)
          for (int l4 = 0; l4 < 2; ++l4)
            term(e[2],
                 {{false, fermion_mode(iq, 1, l1)},
                  {false, fermion_mode(imq, 0, l4)}},
                 m(l1, l4));
      }
      // 2b: -D'(q-k) C(q): annihilates (d at q-k, b at k-q).
      if (auto Dp = blk.d(sub(q, k), mk)) {
        const int iqk = lat.index_of(sub(q, k));
        Mat2 m = *Dp * *C;
        for (int l3 = 0; l3 < 2; ++l3)
          for (int l2 = 0; l2 < 2; ++l2)
            term(e[2],
                 {{false, fermion_mode(iqk, 1, l3)},
                  {false, fermion_mode(ikq, 0, l2)}},
                 -m(l3, l2));
      }
    }
    // Channel 1a: A(q) B'(q+k): creates the pair (b at q, d at -q).
    if (auto A = blk.a(q, k)) {
      if (auto Bp = blk.b(add(q, k), mk)) {
        const int imq = lat.index_of(neg(q));
        Mat2 m = *A * *Bp;
        for (int l1 = 0; l1 < 2; ++l1)
          for (int l4 = 0; l4 < 2; ++l4)
            term(e[1],
                 {{true, fermion_mode(iq, 0, l1)},
                  {true, fermion_mode(imq, 1, l4)}},
                 m(l1, l4));
      }
    }
    if (auto D = blk.d(q, k)) {
      const int iqk = lat.index_of(sub(q, k));
      // 1b: -B'(k-q) D(q): creates (b at k-q, d at q-k).
      if (auto Bp = blk.b(sub(k, q), mk)) {
        const int ikq = lat.index_of(sub(k, q));
        Mat2 m = *Bp * *D;
        for (int l3 = 0; l3 < 2; ++l3)
          for (int l2 = 0; l2 < 2; ++l2)
            term(e[1],
                 {{true, fermion_mode(ikq, 0, l3)},
                  {true, fermion_mode(iqk, 1, l2)}},
                 -m(l3, l2));
      }
      // 3b: D'(q-k) D(q) on antiparticle modes at q-k.
      if (auto Dp = blk.d(sub(q, k), mk)) {
        Mat2 m = *Dp * *D;
        for (int l3 = 0; l3 < 2; ++l3)
          for (int l2 = 0; l2 < 2; ++l2)
            term(e[3],
                 {{true, fermion_mode(iqk, 1, l2)},
                  {false, fermion_mode(iqk, 1, l3)}},
                 m(l3, l2));
      }
    }
  }
}

// Shared driver for the energy sums over nonzero k: plain product, ordered
// product, or remainder channels, for either the transverse-current vertex
// pair or the charge-density vertex.
enum class VertexSet { transverse, charge };

double vertex_weight(VertexSet set, const ModelParams& p, double k2) {
  const double e2 = p.coupling * p.coupling;
  return set == VertexSet::transverse ? e2 / (2.0 * k2) : e2 / k2;
}

std::vector<Mat4> vertices_for(VertexSet set, const Lattice& lat, int ik) {
  if (set == VertexSet::charge) return {Mat4::Identity()};
  auto frame = polarization_pair(lat.k_of(ik));
  return {alpha_dot(frame[0]), alpha_dot(frame[1])};
}

FermionOperator energy_sum(const Lattice& lat, const ModelParams& p,
                           VertexSet set, bool ordered) {
  FermionOperator h;
  for (int ik : lat.nonzero_points()) {
    const Vec3i k = lat.point(ik);
    const double w = vertex_weight(set, p, dot(lat.k_of(ik), lat.k_of(ik)));
    for (const Mat4& x : vertices_for(set, lat, ik)) {
      auto f = current_terms(lat, p.mass, k, x);
      auto g = current_terms(lat, p.mass, neg(k), x);
      for (const BilinearTerm& tf : f)
        for (const BilinearTerm& tg : g) {
          LadderSeq seq = tf.ops;
          seq.insert(seq.end(), tg.ops.begin(), tg.ops.end());
          cd c = w * tf.coeff * tg.coeff;
          h += ordered ? FermionOperator::wick_from_sequence(seq, c)
                       : FermionOperator::from_sequence(seq, c);
        }
    }
  }
  return h;
}

std::array<FermionOperator, 4> channel_sum(const Lattice& lat,
                                           const ModelParams& p,
                                           VertexSet set) {
  std::array<FermionOperator, 4> e;
  for (int ik : lat.nonzero_points()) {
    const Vec3i k = lat.point(ik);
    const double w = vertex_weight(set, p, dot(lat.k_of(ik), lat.k_of(ik)));
    for (const Mat4& x : vertices_for(set, lat, ik))
      accumulate_channels(e, lat, p.mass, k, x, w);
  }
  return e;
}

}  // namespace

std::vector<BilinearTerm> transverse_current_terms(const Lattice& lat,
                                                   double mass, const Vec3i& k,
                                                   int j) {
  int ik = lat.index_of(k);
  if (ik < 0 || is_zero(k))
    throw std::invalid_argument("transverse current: k must be a nonzero lattice point");
  return current_terms(lat, mass, k, alpha_dot(polarization_pair(lat.k_of(ik))[j]));
}

FermionOperator transverse_current(const Lattice& lat, double mass,
                                   const Vec3i& k, int j) {
  FermionOperator op;
  for (const BilinearTerm& t : transverse_current_terms(lat, mass, k, j))
    op += FermionOperator::from_sequence(t.ops, t.coeff);
  return op;
}

FermionOperator dressing_operator(const Lattice& lat, const ModelParams& p,
                                  const Vec3i& k, int j) {
  const double kn = norm(lat.k_of(k));
  return transverse_current(lat, p.mass, k, j) *
         cd{-p.coupling / std::sqrt(2.0 * kn * kn * kn), 0.0};
}

std::vector<ProductTerm> dressed_annihilator_terms(const Lattice& lat,
                                                   const ModelParams& p,
                                                   const Vec3i& k, int j) {
  const int mode = lat.photon_mode(lat.index_of(k), j);
  std::vector<ProductTerm> terms;
  terms.push_back({FermionOperator::identity(),
                   {PhotonFactor::Kind::annihilate, mode}});
  terms.push_back({dressing_operator(lat, p, k, j),
                   {PhotonFactor::Kind::identity, 0}});
  return terms;
}

std::vector<ProductTerm> interaction_terms(const Lattice& lat,
                                           const ModelParams& p) {
  std::vector<ProductTerm> terms;
  for (int ik : lat.nonzero_points()) {
    const Vec3i k = lat.point(ik);
    const double c = -p.coupling / std::sqrt(2.0 * norm(lat.k_of(ik)));
    auto frame = polarization_pair(lat.k_of(ik));
    for (int j = 0; j < 2; ++j) {
      const Mat4 x = alpha_dot(frame[j]);
      const int mode = lat.photon_mode(ik, j);
      terms.push_back({c * current_bilinear(lat, p.mass, neg(k), x),
                       {PhotonFactor::Kind::annihilate, mode}});
      terms.push_back({c * current_bilinear(lat, p.mass, k, x),
                       {PhotonFactor::Kind::create, mode}});
    }
  }
  return terms;
}

FermionOperator current_current_energy(const Lattice& lat,
                                       const ModelParams& p) {
  return energy_sum(lat, p, VertexSet::transverse, false);
}

FermionOperator current_current_energy_ordered(const Lattice& lat,
                                               const ModelParams& p) {
  return energy_sum(lat, p, VertexSet::transverse, true);
}

FermionOperator coulomb_energy_ordered(const Lattice& lat,
                                       const ModelParams& p) {
  return energy_sum(lat, p, VertexSet::charge, true);
}

std::array<FermionOperator, 4> current_truncation_terms(const Lattice& lat,
                                                        const ModelParams& p) {
  return channel_sum(lat, p, VertexSet::transverse);
}

std::array<FermionOperator, 4> coulomb_truncation_terms(const Lattice& lat,
                                                        const ModelParams& p) {
  return channel_sum(lat, p, VertexSet::charge);
}

FermionOperator static_interaction(const Lattice& lat, const ModelParams& p) {
  FermionOperator h = coulomb_energy(lat, p.mass, p.coupling);
  h -= current_current_energy(lat, p);
  return h;
}

FermionOperator static_interaction_kernel_route(const Lattice& lat,
                                                const ModelParams& p) {
  FermionOperator h;
  const double e2 = p.coupling * p.coupling;
  for (int ik : lat.nonzero_points()) {
    const Vec3i k = lat.point(ik);
    const Vec3 kv = lat.k_of(ik);
    const Mat16 kernel = pair_interaction_kernel(kv);
    const double w = e2 / dot(kv, kv);
    // Component bilinears rho_{a a'}(+-k) with vertex = matrix unit.
    std::array<FermionOperator, 16> plus, minus;
    for (int a = 0; a < 4; ++a)
      for (int ap = 0; ap < 4; ++ap) {
        plus[4 * a + ap] = current_bilinear(lat, p.mass, k, unit_matrix(a, ap));
        minus[4 * a + ap] =
            current_bilinear(lat, p.mass, neg(k), unit_matrix(a, ap));
      }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int ap = 0; ap < 4; ++ap)
          for (int bp = 0; bp < 4; ++bp) {
            cd m = kernel(4 * a + b, 4 * ap + bp);
            if (m == 0.0) continue;
            h += (w * m) * (plus[4 * a + ap] * minus[4 * b + bp]);
          }
  }
  return h;
}

FermionOperator modified_fermion_hamiltonian(const Lattice& lat,
                                             const ModelParams& p) {
  FermionOperator h = free_fermion_hamiltonian(lat, p.mass);
  auto cur = current_truncation_terms(lat, p);
  auto coul = coulomb_truncation_terms(lat, p);
  for (int i = 0; i < 4; ++i) {
    h += cur[i];
    h -= coul[i];
  }
  return h;
}

std::vector<ProductTerm> total_hamiltonian_terms(const Lattice& lat,
                                                 const ModelParams& p) {
  std::vector<ProductTerm> terms = free_photon_hamiltonian(lat);
  FermionOperator static_part = free_fermion_hamiltonian(lat, p.mass);
  static_part += coulomb_energy_ordered(lat, p);
  terms.push_back({static_part, {PhotonFactor::Kind::identity, 0}});
  auto inter = interaction_terms(lat, p);
  terms.insert(terms.end(), inter.begin(), inter.end());
  return terms;
}

}  // namespace qed
