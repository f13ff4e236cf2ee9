#include "qed/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace qed {

Lattice Lattice::ball(double length, double radius) {
  if (length <= 0.0 || radius < 0.0)
    throw std::invalid_argument("lattice ball: need length > 0 and radius >= 0");
  // |2 pi nu / L| <= radius  <=>  |nu|^2 <= (radius L / 2 pi)^2
  const double t = radius * length / (2.0 * M_PI);
  const double t2 = t * t + 1e-9;  // absorb boundary roundoff
  const int ext = static_cast<int>(std::floor(t + 1e-9));
  std::vector<Vec3i> pts;
  for (int a = -ext; a <= ext; ++a)
    for (int b = -ext; b <= ext; ++b)
      for (int c = -ext; c <= ext; ++c) {
        Vec3i nu{a, b, c};
        if (static_cast<double>(norm_squared(nu)) <= t2) pts.push_back(nu);
      }
  return Lattice(length, std::move(pts));
}

Lattice Lattice::box(double length, int extent) {
  if (length <= 0.0 || extent < 0)
    throw std::invalid_argument("lattice box: need length > 0 and extent >= 0");
  std::vector<Vec3i> pts;
  for (int a = -extent; a <= extent; ++a)
    for (int b = -extent; b <= extent; ++b)
      for (int c = -extent; c <= extent; ++c) pts.push_back({a, b, c});
  return Lattice(length, std::move(pts));
}

Lattice Lattice::from_points(double length, std::vector<Vec3i> points) {
  if (length <= 0.0) throw std::invalid_argument("lattice: need length > 0");
  return Lattice(length, std::move(points));
}

Lattice::Lattice(double length, std::vector<Vec3i> points)
    : length_(length), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (points_.empty()) throw std::invalid_argument("lattice: empty point set");
  if (!std::binary_search(points_.begin(), points_.end(), Vec3i{0, 0, 0}))
    throw std::invalid_argument("lattice: point set must contain the origin");
  // Closure under the three coordinate-plane reflections (which generate all
  // sign flips, in particular nu -> -nu).
  for (const Vec3i& nu : points_)
    for (int axis = 0; axis < 3; ++axis) {
      Vec3i r = nu;
      r[axis] = -r[axis];
      if (!std::binary_search(points_.begin(), points_.end(), r))
        throw std::invalid_argument(
            "lattice: point set is not reflection symmetric");
    }
  nonzero_rank_.assign(points_.size(), -1);
  for (int i = 0; i < n_points(); ++i)
    if (!is_zero(points_[i])) {
      nonzero_rank_[i] = static_cast<int>(nonzero_.size());
      nonzero_.push_back(i);
    }
}

int Lattice::index_of(const Vec3i& nu) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), nu);
  if (it == points_.end() || *it != nu) return -1;
  return static_cast<int>(it - points_.begin());
}

}  // namespace qed
