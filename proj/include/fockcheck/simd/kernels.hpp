#pragma once

// Dense-vector and CSR kernels behind the power iteration. A scalar
// reference table is always available; an AVX2/FMA table is compiled when
// the toolchain supports it and selected at runtime when the CPU does.
// Set FOCKCHECK_SIMD=scalar to force the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fockcheck::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a*x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // x *= a
  void (*scale)(double a, double* x, std::size_t n);
  // y = A x for a CSR matrix with 32-bit column indices
  void (*spmv)(std::int32_t rows, const std::size_t* rowPtr, const std::int32_t* col, const double* val,
               const double* x, double* y);
};

bool supported(Isa isa);

/// Kernel table for a specific ISA; throws std::runtime_error when the ISA
/// was not compiled in or the CPU lacks it.
const KernelTable& kernels(Isa isa);

/// Best supported table, honoring FOCKCHECK_SIMD.
const KernelTable& kernels();

std::string_view name(Isa isa);

/// Sets flush-to-zero / denormals-are-zero for the calling thread and
/// restores the previous mode on exit. Power iterations drive the
/// non-dominant components into the subnormal range, where x86 arithmetic
/// slows down by two orders of magnitude.
class DenormalGuard {
 public:
  DenormalGuard();
  ~DenormalGuard();
  DenormalGuard(const DenormalGuard&) = delete;
  DenormalGuard& operator=(const DenormalGuard&) = delete;

 private:
  unsigned int saved_ = 0;
};

namespace detail {
extern const KernelTable kScalarTable;
#if defined(FOCKCHECK_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

}  // namespace fockcheck::simd
