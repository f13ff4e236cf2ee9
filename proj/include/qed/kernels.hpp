#pragma once
// Low-level complex vector kernels used by the iterative eigensolvers and the
// norm scans. A scalar reference implementation always exists; on x86-64 an
// AVX2 variant is compiled in a separate translation unit and selected at
// runtime. The two variants are equivalence-tested against each other.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace qed::kernels {

using cd = std::complex<double>;

struct Ops {
  // conj(x) . y
  cd (*dot)(const cd* x, const cd* y, std::size_t n);
  // y += a * x
  void (*axpy)(cd a, const cd* x, cd* y, std::size_t n);
  // x *= a
  void (*scale)(cd a, cd* x, std::size_t n);
  // sum_i |x_i|^2
  double (*norm_squared)(const cd* x, std::size_t n);
  // y = A x for a CSR matrix (rowptr has rows+1 entries)
  void (*csr_apply)(const std::int64_t* rowptr, const std::int32_t* col,
                    const cd* val, const cd* x, cd* y, std::size_t rows);
  const char* name;
};

const Ops& scalar_ops();

// AVX2 variant; call only when avx2_available() is true.
const Ops& avx2_ops();
bool avx2_available();

// Runtime-selected implementation. Honors the QED_KERNELS environment
// variable ("scalar" or "avx2") as an override, otherwise probes the CPU.
const Ops& active_ops();

}  // namespace qed::kernels
