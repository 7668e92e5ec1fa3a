#pragma once

// Truncated left/right regular representations of the free group F_n on
// reduced words of length <= d, and the splitting of right translations
// into a length-increasing and a length-decreasing part.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fockcheck/numkit/linop.hpp"

namespace fockcheck::freegroup {

using numkit::ExactOp;
using numkit::Index;

/// Letters are +-1..+-n; -j denotes the inverse of generator j.
using GroupWord = std::vector<int>;

/// Free reduction (cancels adjacent j, -j pairs).
GroupWord reduce(std::span<const int> word);
/// reduce(a b)
GroupWord multiply(std::span<const int> a, std::span<const int> b);
GroupWord inverse(std::span<const int> word);
std::string to_string(std::span<const int> word);

/// Number of reduced words of length <= d: 1 + sum_{k=1..d} 2n(2n-1)^{k-1}.
Index reduced_word_count(int n, int d);

/// Reduced words ordered by length, then lexicographically with letter order
/// 1 < -1 < 2 < -2 < ...; the identity has index 0.
class FGBasis {
 public:
  FGBasis(int generators, int depth);

  int generators() const { return n_; }
  int depth() const { return d_; }
  Index dim() const { return static_cast<Index>(words_.size()); }
  Index dim_at_depth(int k) const;
  const GroupWord& word(Index i) const { return words_.at(static_cast<std::size_t>(i)); }
  /// -1 if the word is not reduced or longer than the depth.
  Index find(std::span<const int> word) const;

 private:
  int n_;
  int d_;
  std::vector<GroupWord> words_;
  std::map<GroupWord, Index> index_;
  std::vector<Index> level_end_;
};

/// lambda(g_j): e_w -> e_{reduce(g_j w)}, zero when the result is too long.
ExactOp left_regular(const FGBasis& b, int j);
/// rho(g_j): e_w -> e_{reduce(w g_j)}, same truncation.
ExactOp right_regular(const FGBasis& b, int j);

struct HaagerupSplit {
  /// w -> w g_j on words not ending in g_j^{-1}
  ExactOp increasing;
  /// w g_j^{-1} -> w
  ExactOp decreasing;
};

/// rho(g_j) = increasing + decreasing.
HaagerupSplit haagerup_split(const FGBasis& b, int j);

struct QuadraticSum {
  std::string name;
  ExactOp sum;
  bool diagonal = false;
  bool boundedByIdentity = false;
};

/// The four quadratic sums over j = 1..n of the split parts:
/// sum a a^T, sum b^T b (disjoint supports under this labeling) and
/// sum a^T a, sum b b^T (the adjoint placement with overlapping supports).
std::vector<QuadraticSum> split_quadratic_sums(const FGBasis& b);

/// sum_j [x, a_j] (x) lambda(g_j) with a_j the increasing part of rho(g_j).
ExactOp delta_G(const FGBasis& b, const ExactOp& x);

/// Depth-k compression of an operator on the truncated l^2(F_n) or its tensor square.
ExactOp compress_to_depth(const FGBasis& b, const ExactOp& a, int k);
ExactOp compress_tensor_to_depth(const FGBasis& b, const ExactOp& a, int k);

}  // namespace fockcheck::freegroup
