// The scalar kernels are the reference; the AVX2 variant must agree with them
// on every operation, including lengths that are not multiples of the vector
// width and an empty input.

#include <complex>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "qed/kernels.hpp"

using qed::kernels::cd;
namespace k = qed::kernels;

namespace {

std::vector<cd> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> v(n);
  for (auto& x : v) x = cd{u(rng), u(rng)};
  return v;
}

struct Csr {
  std::vector<std::int64_t> rowptr;
  std::vector<std::int32_t> col;
  std::vector<cd> val;
};

Csr random_csr(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
               double fill) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Csr m;
  m.rowptr.assign(rows + 1, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (u(rng) < 2.0 * fill - 1.0) {
        m.col.push_back(static_cast<std::int32_t>(c));
        m.val.push_back(cd{u(rng), u(rng)});
      }
    }
    m.rowptr[r + 1] = static_cast<std::int64_t>(m.col.size());
  }
  return m;
}

}  // namespace

TEST_CASE("scalar kernels compute the reference answers") {
  const auto& ops = k::scalar_ops();
  const std::vector<cd> x = {{1, 2}, {3, -1}, {0, 0.5}};
  const std::vector<cd> y = {{2, 0}, {-1, 1}, {4, 4}};
  // conj(x) . y by hand
  cd expected{0, 0};
  for (int i = 0; i < 3; ++i) expected += std::conj(x[i]) * y[i];
  CHECK(std::abs(ops.dot(x.data(), y.data(), 3) - expected) < 1e-15);
  CHECK(ops.norm_squared(x.data(), 3) ==
        doctest::Approx(1 + 4 + 9 + 1 + 0.25).epsilon(1e-15));

  std::vector<cd> z = y;
  ops.axpy(cd{0.5, -1.0}, x.data(), z.data(), 3);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(z[i] - (y[i] + cd{0.5, -1.0} * x[i])) < 1e-15);

  z = x;
  ops.scale(cd{0, 1}, z.data(), 3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(z[i] - cd{0, 1} * x[i]) < 1e-15);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!k::avx2_available()) return;  // nothing to compare on this machine
  const auto& s = k::scalar_ops();
  const auto& v = k::avx2_ops();
  std::mt19937_64 rng(20240817);

  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{2},
                        std::size_t{3}, std::size_t{4}, std::size_t{7},
                        std::size_t{64}, std::size_t{257}, std::size_t{1000}}) {
    CAPTURE(n);
    const auto x = random_vector(rng, n);
    const auto y = random_vector(rng, n);
    const cd a{0.7, -0.3};

    CHECK(std::abs(s.dot(x.data(), y.data(), n) - v.dot(x.data(), y.data(), n)) <
          1e-12 * (1.0 + static_cast<double>(n)));
    CHECK(s.norm_squared(x.data(), n) ==
          doctest::Approx(v.norm_squared(x.data(), n)).epsilon(1e-13));

    auto ys = y, yv = y;
    s.axpy(a, x.data(), ys.data(), n);
    v.axpy(a, x.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - yv[i]) < 1e-14);

    auto xs = x, xv = x;
    s.scale(a, xs.data(), n);
    v.scale(a, xv.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(xs[i] - xv[i]) < 1e-14);
  }
}

TEST_CASE("csr apply matches between implementations and a dense loop") {
  std::mt19937_64 rng(7);
  const std::size_t rows = 37, cols = 37;
  const auto m = random_csr(rng, rows, cols, 0.2);
  const auto x = random_vector(rng, cols);

  std::vector<cd> dense(rows, cd{0, 0});
  for (std::size_t r = 0; r < rows; ++r)
    for (auto i = m.rowptr[r]; i < m.rowptr[r + 1]; ++i)
      dense[r] += m.val[i] * x[m.col[i]];

  std::vector<cd> ys(rows);
  k::scalar_ops().csr_apply(m.rowptr.data(), m.col.data(), m.val.data(),
                            x.data(), ys.data(), rows);
  for (std::size_t r = 0; r < rows; ++r) CHECK(std::abs(ys[r] - dense[r]) < 1e-13);

  if (k::avx2_available()) {
    std::vector<cd> yv(rows);
    k::avx2_ops().csr_apply(m.rowptr.data(), m.col.data(), m.val.data(),
                            x.data(), yv.data(), rows);
    for (std::size_t r = 0; r < rows; ++r) CHECK(std::abs(ys[r] - yv[r]) < 1e-13);
  }
}

TEST_CASE("active implementation is one of the registered variants") {
  const auto& ops = k::active_ops();
  const std::string name = ops.name;
  CHECK((name == "scalar" || name == "avx2"));
  if (!k::avx2_available()) CHECK(name == "scalar");
  // The override variable, when set, must have picked that variant.
  if (const char* env = std::getenv("QED_KERNELS")) CHECK(name == env);
}
