#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fockcheck/numkit/linop.hpp"

namespace fockcheck::numkit {

/// Automatic selection picks the dense eigensolver up to dense_threshold and
/// power iteration above it. The restarted Lanczos method is opt-in; it
/// needs far fewer products when the top of the spectrum is clustered.
enum class NormMethod { dense_eigensolver, power_iteration, lanczos };

/// Largest singular value estimate. `value` is ||A v|| for a concrete unit
/// vector v, hence never above the true norm (up to rounding).
struct NormEstimate {
  double value = 0.0;
  /// ||A^T A v - theta v|| / theta at the returned vector.
  double residual = 0.0;
  /// Products with A^T A.
  int iterations = 0;
  NormMethod method = NormMethod::dense_eigensolver;
  bool converged = true;
  /// Filled only when NormOptions::keep_vector is set.
  std::vector<double> vector;
};

struct NormOptions {
  double tol = 1e-10;
  int max_iterations = 20000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  /// Dense eigensolver on A^T A when max(rows, cols) is at most this.
  Index dense_threshold = 2000;
  std::optional<NormMethod> force_method;
  /// Warm start for the iterative paths; ignored by the dense path. An exact
  /// eigenvector of A^T A converges to its own eigenvalue, not necessarily the top one.
  std::span<const double> start;
  bool keep_vector = false;
  /// Krylov dimension per restart cycle of the Lanczos method.
  int lanczos_basis = 40;
};

NormEstimate spectral_norm(const RealOp& a, const NormOptions& options);

inline NormEstimate spectral_norm(const RealOp& a, double tol) {
  NormOptions o;
  o.tol = tol;
  return spectral_norm(a, o);
}

inline NormEstimate spectral_norm(const ExactOp& a, const NormOptions& options) {
  return spectral_norm(a.cast<Real>(), options);
}

inline NormEstimate spectral_norm(const ExactOp& a, double tol) {
  return spectral_norm(a.cast<Real>(), tol);
}

const char* to_string(NormMethod m);

}  // namespace fockcheck::numkit
