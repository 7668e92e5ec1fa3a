#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fockcheck/numkit/scalar.hpp"

namespace fockcheck::fock {

using numkit::Index;

/// Letters are 1..n.
using Word = std::vector<int>;

std::string to_string(std::span<const int> word);

/// Words of length <= depth over n letters, ordered by length then
/// lexicographically; the empty word (vacuum) has index 0. Words of length
/// <= k therefore occupy the leading dim_at_depth(k) indices.
class FockBasis {
 public:
  static constexpr Index kDefaultMaxDim = 1 << 20;

  /// Throws std::invalid_argument for n < 1 or d < 2 and std::length_error
  /// when the dimension exceeds maxDim.
  FockBasis(int letters, int depth, Index maxDim = kDefaultMaxDim);

  int letters() const { return letters_; }
  int depth() const { return depth_; }
  Index dim() const { return dim_at_depth(depth_); }
  /// Number of words of length <= k.
  Index dim_at_depth(int k) const;

  Word word(Index i) const;
  int length(Index i) const;
  /// Throws std::out_of_range for words that are not in the basis.
  Index index_of(std::span<const int> word) const;

  /// Index of letter.w / w.letter, or -1 when the result leaves the basis.
  Index prepend(int letter, Index i) const;
  Index append(int letter, Index i) const;

 private:
  // rank of a word among words of its own length (base-n value)
  Index rank_within_length(Index i) const { return i - offset_[length(i)]; }

  int letters_;
  int depth_;
  std::vector<Index> offset_;  // offset_[k] = first index of length k; offset_[depth+1] = dim
  std::vector<Index> power_;   // n^k
};

}  // namespace fockcheck::fock
