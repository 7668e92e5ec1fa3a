#pragma once

#include <vector>

#include "fockcheck/fock/basis.hpp"
#include "fockcheck/numkit/linop.hpp"

namespace fockcheck::fock {

using numkit::ExactOp;

/// l_j: e_w -> e_{jw}, zero on words of maximal length.
ExactOp left_creation(const FockBasis& b, int j);
/// r_j: e_w -> e_{wj}, zero on words of maximal length.
ExactOp right_creation(const FockBasis& b, int j);
/// x_j = l_j + l_j^T
ExactOp semicircular_x(const FockBasis& b, int j);
/// y_j = r_j + r_j^T
ExactOp semicircular_y(const FockBasis& b, int j);
/// Diagonal 0/1 projection onto words of length <= k.
ExactOp level_projection(const FockBasis& b, int k);
ExactOp vacuum_projection(const FockBasis& b);

/// Q_k A Q_k on the words of length <= k.
template <numkit::Scalar T>
numkit::LinOp<T> compress_to_depth(const FockBasis& b, const numkit::LinOp<T>& a, int k) {
  return numkit::compress(a, b.dim_at_depth(k));
}

/// Depth-k compression on both legs of an operator on (H (x) H)^blocks.
template <numkit::Scalar T>
numkit::LinOp<T> compress_tensor_to_depth(const FockBasis& b, const numkit::LinOp<T>& a, int k, Index blocks = 1) {
  return numkit::compress_tensor(a, b.dim(), b.dim_at_depth(k), blocks);
}

/// The generating operators of one truncation, built once and shared.
struct FockOperators {
  explicit FockOperators(FockBasis basis);

  FockBasis basis;
  std::vector<ExactOp> left;   // l_1..l_n at [0..n)
  std::vector<ExactOp> right;  // r_1..r_n
  std::vector<ExactOp> x;
  std::vector<ExactOp> y;
  ExactOp identity;

  int letters() const { return basis.letters(); }
  int depth() const { return basis.depth(); }
  Index dim() const { return basis.dim(); }
};

}  // namespace fockcheck::fock
