#include "fockcheck/fock/operators.hpp"

#include <stdexcept>
#include <string>

namespace fockcheck::fock {
namespace {

void require_letter(const FockBasis& b, int j) {
  if (j < 1 || j > b.letters())
    throw std::out_of_range("letter " + std::to_string(j) + " outside 1.." + std::to_string(b.letters()));
}

template <typename Step>
ExactOp shift_operator(const FockBasis& b, Step&& step) {
  std::vector<numkit::Triplet<numkit::Exact>> t;
  for (Index i = 0; i < b.dim(); ++i) {
    const Index target = step(i);
    if (target >= 0) t.push_back({target, i, 1});
  }
  return ExactOp::from_triplets(b.dim(), b.dim(), std::move(t));
}

}  // namespace

ExactOp left_creation(const FockBasis& b, int j) {
  require_letter(b, j);
  return shift_operator(b, [&](Index i) { return b.prepend(j, i); });
}

ExactOp right_creation(const FockBasis& b, int j) {
  require_letter(b, j);
  return shift_operator(b, [&](Index i) { return b.append(j, i); });
}

ExactOp semicircular_x(const FockBasis& b, int j) {
  const auto l = left_creation(b, j);
  return numkit::add(l, l.transpose());
}

ExactOp semicircular_y(const FockBasis& b, int j) {
  const auto r = right_creation(b, j);
  return numkit::add(r, r.transpose());
}

ExactOp level_projection(const FockBasis& b, int k) {
  if (k < 0 || k > b.depth()) throw std::out_of_range("level_projection: depth out of range");
  std::vector<numkit::Exact> diag(static_cast<std::size_t>(b.dim()), 0);
  for (Index i = 0; i < b.dim_at_depth(k); ++i) diag[i] = 1;
  return ExactOp::diagonal(diag);
}

ExactOp vacuum_projection(const FockBasis& b) { return level_projection(b, 0); }

FockOperators::FockOperators(FockBasis basisIn) : basis(std::move(basisIn)), identity(ExactOp::identity(basis.dim())) {
  for (int j = 1; j <= basis.letters(); ++j) {
    left.push_back(left_creation(basis, j));
    right.push_back(right_creation(basis, j));
    x.push_back(numkit::add(left.back(), left.back().transpose()));
    y.push_back(numkit::add(right.back(), right.back().transpose()));
  }
}

}  // namespace fockcheck::fock
