#pragma once
// Finite momentum lattice for a periodic box of edge length L. Points are
// integer triples nu with physical momentum k = 2*pi*nu / L. The point set
// must contain the origin and be closed under the three coordinate-plane
// reflections; construction validates this and freezes a lexicographic
// ordering that all mode bookkeeping downstream relies on.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace qed {

using Vec3i = std::array<int, 3>;
using Vec3 = std::array<double, 3>;

inline Vec3i add(const Vec3i& a, const Vec3i& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3i sub(const Vec3i& a, const Vec3i& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3i neg(const Vec3i& a) { return {-a[0], -a[1], -a[2]}; }
inline bool is_zero(const Vec3i& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }
inline long norm_squared(const Vec3i& a) {
  return static_cast<long>(a[0]) * a[0] + static_cast<long>(a[1]) * a[1] +
         static_cast<long>(a[2]) * a[2];
}

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 scaled(double t, const Vec3& a) { return {t * a[0], t * a[1], t * a[2]}; }
inline Vec3 minus(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

class Lattice {
 public:
  // Euclidean momentum ball: all nu with |2*pi*nu/L| <= radius.
  static Lattice ball(double length, double radius);
  // Sup-norm box: all nu with max_i |nu_i| <= extent.
  static Lattice box(double length, int extent);
  // Explicit point set (validated, then sorted).
  static Lattice from_points(double length, std::vector<Vec3i> points);

  double length() const { return length_; }
  double volume() const { return length_ * length_ * length_; }

  int n_points() const { return static_cast<int>(points_.size()); }
  const std::vector<Vec3i>& points() const { return points_; }
  const Vec3i& point(int i) const { return points_[i]; }

  // Index of nu in the frozen ordering, or -1 when nu is not in the set.
  int index_of(const Vec3i& nu) const;
  bool contains(const Vec3i& nu) const { return index_of(nu) >= 0; }

  Vec3 k_of(int i) const { return k_of(points_[i]); }
  Vec3 k_of(const Vec3i& nu) const {
    const double f = 2.0 * M_PI / length_;
    return {f * nu[0], f * nu[1], f * nu[2]};
  }
  double k_norm(int i) const { return norm(k_of(i)); }

  // Nonzero points carry two photon polarization modes each. Photon modes are
  // numbered 2*r + j, where r is the rank of the point among the nonzero
  // points (in lattice order) and j in {0,1} labels the polarization.
  int n_photon_modes() const { return 2 * static_cast<int>(nonzero_.size()); }
  const std::vector<int>& nonzero_points() const { return nonzero_; }
  int photon_mode(int point_index, int j) const {
    return 2 * nonzero_rank_[point_index] + j;
  }
  int photon_mode_point(int mode) const { return nonzero_[mode / 2]; }
  int photon_mode_polarization(int mode) const { return mode % 2; }

 private:
  Lattice(double length, std::vector<Vec3i> points);

  double length_;
  std::vector<Vec3i> points_;   // sorted lexicographically
  std::vector<int> nonzero_;    // indices of nonzero points, ascending
  std::vector<int> nonzero_rank_;  // per point: rank among nonzero, or -1
};

}  // namespace qed
