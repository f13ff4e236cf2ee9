#include "qed/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace qed::kernels {

namespace {

cd scalar_dot(const cd* x, const cd* y, std::size_t n) {
  cd acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void scalar_axpy(cd a, const cd* x, cd* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scalar_scale(cd a, cd* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double scalar_norm_squared(const cd* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

void scalar_csr_apply(const std::int64_t* rowptr, const std::int32_t* col,
                      const cd* val, const cd* x, cd* y, std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r) {
    cd acc{0.0, 0.0};
    for (std::int64_t i = rowptr[r]; i < rowptr[r + 1]; ++i)
      acc += val[i] * x[col[i]];
    y[r] = acc;
  }
}

const Ops kScalar{scalar_dot, scalar_axpy,     scalar_scale,
                  scalar_norm_squared, scalar_csr_apply, "scalar"};

}  // namespace

const Ops& scalar_ops() { return kScalar; }

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops& active_ops() {
  static const Ops& chosen = []() -> const Ops& {
    if (const char* env = std::getenv("QED_KERNELS")) {
      std::string want(env);
      if (want == "scalar") return kScalar;
      if (want == "avx2") {
        if (!avx2_available())
          throw std::runtime_error("QED_KERNELS=avx2 requested but AVX2 is unavailable");
        return avx2_ops();
      }
      throw std::runtime_error("unknown QED_KERNELS value: " + want);
    }
    return avx2_available() ? avx2_ops() : kScalar;
  }();
  return chosen;
}

}  // namespace qed::kernels
