#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fockcheck/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <xmmintrin.h>
#define FOCKCHECK_X86_MXCSR 1
#endif

namespace fockcheck::simd {

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(FOCKCHECK_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Isa isa) {
  if (!supported(isa)) throw std::runtime_error("SIMD variant not available: " + std::string(name(isa)));
#if defined(FOCKCHECK_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::kAvx2Table;
#endif
  return detail::kScalarTable;
}

const KernelTable& kernels() {
  static const KernelTable& selected = [] () -> const KernelTable& {
    const char* env = std::getenv("FOCKCHECK_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return detail::kScalarTable;
    return supported(Isa::avx2) ? kernels(Isa::avx2) : detail::kScalarTable;
  }();
  return selected;
}

DenormalGuard::DenormalGuard() {
#if defined(FOCKCHECK_X86_MXCSR)
  saved_ = _mm_getcsr();
  _mm_setcsr(saved_ | 0x8040u);  // FTZ | DAZ
#endif
}

DenormalGuard::~DenormalGuard() {
#if defined(FOCKCHECK_X86_MXCSR)
  _mm_setcsr(saved_);
#endif
}

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace fockcheck::simd
