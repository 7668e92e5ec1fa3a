#include "fockcheck/simd/kernels.hpp"

namespace fockcheck::simd::detail {
namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void spmv(std::int32_t rows, const std::size_t* rowPtr, const std::int32_t* col, const double* val, const double* x,
          double* y) {
  for (std::int32_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t k = rowPtr[r]; k < rowPtr[r + 1]; ++k) s += val[k] * x[col[k]];
    y[r] = s;
  }
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar, &dot, &axpy, &scale, &spmv};

}  // namespace fockcheck::simd::detail
