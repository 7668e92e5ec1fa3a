#include "fockcheck/numkit/norm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fockcheck/simd/kernels.hpp"

namespace fockcheck::numkit {
namespace {

Eigen::MatrixXd to_dense(const RealOp& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cs = a.row_cols(r);
    const auto vs = a.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) m(r, cs[k]) = vs[k];
  }
  return m;
}

void spmv(const simd::KernelTable& kt, const RealOp& a, const double* x, double* y) {
  kt.spmv(a.rows(), a.row_ptr().data(), a.col_index().data(), a.values().data(), x, y);
}

NormEstimate dense_norm(const RealOp& a, const NormOptions& options) {
  const Eigen::MatrixXd m = to_dense(a);
  const Eigen::MatrixXd gram = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw std::runtime_error("spectral_norm: dense eigensolver failed");
  const Eigen::VectorXd v = eig.eigenvectors().col(gram.cols() - 1);
  const Eigen::VectorXd w = m * v;
  const double theta = w.squaredNorm();
  NormEstimate est;
  est.method = NormMethod::dense_eigensolver;
  est.value = std::sqrt(theta);
  est.residual = theta > 0.0 ? (gram * v - theta * v).norm() / theta : 0.0;
  est.converged = true;
  if (options.keep_vector) est.vector.assign(v.data(), v.data() + v.size());
  return est;
}

std::vector<double> random_unit(const simd::KernelTable& kt, std::size_t n, const NormOptions& options) {
  std::vector<double> v(n);
  if (options.start.size() == n) {
    v.assign(options.start.begin(), options.start.end());
  } else {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    for (auto& x : v) x = normal(rng);
  }
  double nv = std::sqrt(kt.dot(v.data(), v.data(), n));
  if (nv == 0.0) {
    v.assign(n, 1.0);
    nv = std::sqrt(static_cast<double>(n));
  }
  kt.scale(1.0 / nv, v.data(), n);
  return v;
}

NormEstimate power_norm(const RealOp& a, const NormOptions& options) {
  const auto& kt = simd::kernels();
  const simd::DenormalGuard ftz;
  const RealOp at = a.transpose();
  const std::size_t n = static_cast<std::size_t>(a.cols());
  std::vector<double> v = random_unit(kt, n, options);

  std::vector<double> w(static_cast<std::size_t>(a.rows()));
  std::vector<double> u(n);
  std::vector<double> r(n);
  NormEstimate est;
  est.method = NormMethod::power_iteration;
  est.converged = false;
  double theta = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    spmv(kt, a, v.data(), w.data());
    theta = kt.dot(w.data(), w.data(), w.size());
    spmv(kt, at, w.data(), u.data());
    est.iterations = it;
    if (theta == 0.0) {
      est.residual = 0.0;
      est.converged = true;
      break;
    }
    r = u;
    kt.axpy(-theta, v.data(), r.data(), n);
    est.residual = std::sqrt(kt.dot(r.data(), r.data(), n)) / theta;
    if (est.residual <= options.tol) {
      est.converged = true;
      break;
    }
    if (it == options.max_iterations) break;
    const double nu = std::sqrt(kt.dot(u.data(), u.data(), n));
    v = u;
    kt.scale(1.0 / nu, v.data(), n);
  }
  est.value = std::sqrt(theta);
  if (options.keep_vector) est.vector = std::move(v);
  return est;
}

// Explicitly restarted Lanczos on A^T A with full reorthogonalization inside
// each cycle; every cycle restarts from the current Ritz vector.
NormEstimate lanczos_norm(const RealOp& a, const NormOptions& options) {
  const auto& kt = simd::kernels();
  const simd::DenormalGuard ftz;
  const RealOp at = a.transpose();
  const std::size_t n = static_cast<std::size_t>(a.cols());
  const int m = std::max(2, std::min<int>(options.lanczos_basis, static_cast<int>(n)));
  std::vector<double> ritz = random_unit(kt, n, options);
  std::vector<double> w(static_cast<std::size_t>(a.rows()));
  std::vector<double> u(n);
  std::vector<std::vector<double>> basis(static_cast<std::size_t>(m), std::vector<double>(n));
  NormEstimate est;
  est.method = NormMethod::lanczos;
  est.converged = false;
  double theta = 0.0;
  auto apply_gram = [&](const double* x, double* y) {
    spmv(kt, a, x, w.data());
    spmv(kt, at, w.data(), y);
    ++est.iterations;
  };
  while (est.iterations < options.max_iterations) {
    std::vector<double> alpha;
    std::vector<double> beta;
    basis[0] = ritz;
    int steps = 0;
    for (int j = 0; j < m && est.iterations < options.max_iterations; ++j) {
      apply_gram(basis[j].data(), u.data());
      ++steps;
      alpha.push_back(kt.dot(u.data(), basis[j].data(), n));
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) kt.axpy(-kt.dot(u.data(), basis[i].data(), n), basis[i].data(), u.data(), n);
      const double b = std::sqrt(kt.dot(u.data(), u.data(), n));
      if (j + 1 == m || b <= 1e-14 * std::max(1.0, std::abs(alpha.back()))) break;
      beta.push_back(b);
      basis[j + 1] = u;
      kt.scale(1.0 / b, basis[j + 1].data(), n);
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
    for (int i = 0; i < steps; ++i) tri(i, i) = alpha[i];
    for (int i = 0; i + 1 < steps; ++i) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    const Eigen::VectorXd s = eig.eigenvectors().col(steps - 1);
    std::fill(ritz.begin(), ritz.end(), 0.0);
    for (int i = 0; i < steps; ++i) kt.axpy(s(i), basis[i].data(), ritz.data(), n);
    kt.scale(1.0 / std::sqrt(kt.dot(ritz.data(), ritz.data(), n)), ritz.data(), n);

    apply_gram(ritz.data(), u.data());
    theta = kt.dot(w.data(), w.data(), w.size());
    if (theta == 0.0) {
      est.residual = 0.0;
      est.converged = true;
      break;
    }
    kt.axpy(-theta, ritz.data(), u.data(), n);
    est.residual = std::sqrt(kt.dot(u.data(), u.data(), n)) / theta;
    if (est.residual <= options.tol) {
      est.converged = true;
      break;
    }
  }
  est.value = std::sqrt(theta);
  if (options.keep_vector) est.vector = std::move(ritz);
  return est;
}

}  // namespace

NormEstimate spectral_norm(const RealOp& a, const NormOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("spectral_norm: tolerance must be positive");
  if (a.nnz() == 0) {
    NormEstimate zero;
    zero.method = NormMethod::dense_eigensolver;
    if (options.keep_vector) zero.vector.assign(static_cast<std::size_t>(a.cols()), 0.0);
    return zero;
  }
  NormMethod method = std::max(a.rows(), a.cols()) <= options.dense_threshold ? NormMethod::dense_eigensolver
                                                                              : NormMethod::power_iteration;
  if (options.force_method) method = *options.force_method;
  switch (method) {
    case NormMethod::dense_eigensolver:
      return dense_norm(a, options);
    case NormMethod::power_iteration:
      return power_norm(a, options);
    case NormMethod::lanczos:
      return lanczos_norm(a, options);
  }
  return power_norm(a, options);
}

const char* to_string(NormMethod m) {
  switch (m) {
    case NormMethod::dense_eigensolver:
      return "dense-eigensolver";
    case NormMethod::power_iteration:
      return "power-iteration";
    case NormMethod::lanczos:
      return "lanczos";
  }
  return "unknown";
}

}  // namespace fockcheck::numkit
