#include "fockcheck/fock/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace fockcheck::fock {

std::string to_string(std::span<const int> word) {
  if (word.empty()) return "()";
  std::string s = "(";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(word[i]);
  }
  return s + ")";
}

FockBasis::FockBasis(int letters, int depth, Index maxDim) : letters_(letters), depth_(depth) {
  if (letters < 1) throw std::invalid_argument("FockBasis: need at least one letter");
  if (depth < 2) throw std::invalid_argument("FockBasis: depth must be at least 2");
  long long total = 0;
  long long p = 1;
  for (int k = 0; k <= depth; ++k) {
    offset_.push_back(static_cast<Index>(total));
    power_.push_back(static_cast<Index>(p));
    total += p;
    if (total > maxDim)
      throw std::length_error("FockBasis: dimension for n=" + std::to_string(letters) + ", d=" + std::to_string(depth) +
                              " exceeds cap " + std::to_string(maxDim));
    p *= letters;
  }
  offset_.push_back(static_cast<Index>(total));
}

Index FockBasis::dim_at_depth(int k) const {
  if (k < 0) return 0;
  return offset_[static_cast<std::size_t>(std::min(k, depth_)) + 1];
}

int FockBasis::length(Index i) const {
  if (i < 0 || i >= dim()) throw std::out_of_range("FockBasis: index out of range");
  return static_cast<int>(std::upper_bound(offset_.begin(), offset_.end() - 1, i) - offset_.begin()) - 1;
}

Word FockBasis::word(Index i) const {
  const int len = length(i);
  Index r = rank_within_length(i);
  Word w(static_cast<std::size_t>(len));
  for (int pos = len - 1; pos >= 0; --pos) {
    w[static_cast<std::size_t>(pos)] = static_cast<int>(r % letters_) + 1;
    r /= letters_;
  }
  return w;
}

Index FockBasis::index_of(std::span<const int> word) const {
  if (static_cast<int>(word.size()) > depth_) throw std::out_of_range("FockBasis: word longer than depth");
  Index r = 0;
  for (const int letter : word) {
    if (letter < 1 || letter > letters_) throw std::out_of_range("FockBasis: letter out of range");
    r = r * letters_ + (letter - 1);
  }
  return offset_[word.size()] + r;
}

Index FockBasis::prepend(int letter, Index i) const {
  const int len = length(i);
  if (len >= depth_) return -1;
  return offset_[len + 1] + (letter - 1) * power_[len] + rank_within_length(i);
}

Index FockBasis::append(int letter, Index i) const {
  const int len = length(i);
  if (len >= depth_) return -1;
  return offset_[len + 1] + rank_within_length(i) * letters_ + (letter - 1);
}

}  // namespace fockcheck::fock
