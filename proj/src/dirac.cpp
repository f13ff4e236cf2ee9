#include "qed/dirac.hpp"

#include <stdexcept>

namespace qed {

namespace {

Mat4 make_alpha(int a) {
  const cd I{0.0, 1.0};
  Eigen::Matrix2cd sigma;
  switch (a) {
    case 0: sigma << 0, 1, 1, 0; break;
    case 1: sigma << 0, -I, I, 0; break;
    case 2: sigma << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("alpha: index must be 0, 1 or 2");
  }
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 2) = sigma;
  m.block<2, 2>(2, 0) = sigma;
  return m;
}

}  // namespace

const Mat4& alpha(int a) {
  static const std::array<Mat4, 3> mats{make_alpha(0), make_alpha(1),
                                        make_alpha(2)};
  if (a < 0 || a > 2) throw std::invalid_argument("alpha: index must be 0, 1 or 2");
  return mats[a];
}

const Mat4& beta() {
  static const Mat4 b = [] {
    Mat4 m = Mat4::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = -1.0;
    m(3, 3) = -1.0;
    return m;
  }();
  return b;
}

Mat4 alpha_dot(const Vec3& v) {
  return v[0] * alpha(0) + v[1] * alpha(1) + v[2] * alpha(2);
}

Spinor u_spinor(int ell, const Vec3& p, double mass) {
  const double w = omega(p, mass);
  const double n = std::sqrt(2.0 * w * (w + mass));
  const cd I{0.0, 1.0};
  Spinor s;
  if (ell == 0)
    s << w + mass, 0.0, p[2], p[0] + I * p[1];
  else if (ell == 1)
    s << 0.0, w + mass, p[0] - I * p[1], -p[2];
  else
    throw std::invalid_argument("u_spinor: ell must be 0 or 1");
  return s / n;
}

Spinor v_spinor(int ell, const Vec3& p, double mass) {
  const double w = omega(p, mass);
  const double n = std::sqrt(2.0 * w * (w + mass));
  const cd I{0.0, 1.0};
  Spinor s;
  if (ell == 0)
    s << -p[0] + I * p[1], p[2], 0.0, -(w + mass);
  else if (ell == 1)
    s << p[2], p[0] + I * p[1], w + mass, 0.0;
  else
    throw std::invalid_argument("v_spinor: ell must be 0 or 1");
  return s / n;
}

std::array<Vec3, 2> polarization_pair(const Vec3& k) {
  const double perp2 = k[0] * k[0] + k[1] * k[1];
  const double kn = norm(k);
  if (kn == 0.0)
    throw std::invalid_argument("polarization_pair: k must be nonzero");
  if (perp2 == 0.0) {
    // k on the +-e3 axis.
    Vec3 e1{0.0, -1.0, 0.0};
    Vec3 e2 = cross(scaled(1.0 / kn, k), e1);
    return {e1, e2};
  }
  if (k[0] <= 0.0 && k[1] <= 0.0 && k[2] <= 0.0) {
    // Closed all-nonpositive octant, off axis: frame defined by swapping the
    // frame at -k (which lands in the region handled below).
    auto swapped = polarization_pair(minus(k));
    return {swapped[1], swapped[0]};
  }
  Vec3 e1 = scaled(1.0 / std::sqrt(perp2), Vec3{k[1], -k[0], 0.0});
  Vec3 e2 = cross(scaled(1.0 / kn, k), e1);
  return {e1, e2};
}

Mat4 vertex_matrix(const Vec3& k, double volume) {
  auto frame = polarization_pair(k);
  return (alpha_dot(frame[0]) + alpha_dot(frame[1])) /
         (2.0 * volume * dot(k, k));
}

Mat16 pair_interaction_kernel(const Vec3& k) {
  auto frame = polarization_pair(k);
  Mat16 m = Mat16::Identity();
  for (int j = 0; j < 2; ++j) {
    Mat4 x = alpha_dot(frame[j]);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int ap = 0; ap < 4; ++ap)
          for (int bp = 0; bp < 4; ++bp)
            m(4 * a + b, 4 * ap + bp) -= 0.5 * x(a, ap) * x(b, bp);
  }
  return m;
}

}  // namespace qed
