#include "fockcheck/freegroup/freegroup.hpp"

#include <algorithm>
#include <stdexcept>

#include "fockcheck/numkit/norm.hpp"

namespace fockcheck::freegroup {

GroupWord reduce(std::span<const int> word) {
  GroupWord out;
  for (const int letter : word) {
    if (letter == 0) throw std::invalid_argument("reduce: 0 is not a letter");
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

GroupWord multiply(std::span<const int> a, std::span<const int> b) {
  GroupWord w(a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return reduce(w);
}

GroupWord inverse(std::span<const int> word) {
  GroupWord w;
  for (auto it = word.rbegin(); it != word.rend(); ++it) w.push_back(-*it);
  return w;
}

std::string to_string(std::span<const int> word) {
  if (word.empty()) return "e";
  std::string s;
  for (const int l : word) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(l < 0 ? -l : l) + (l < 0 ? "^-1" : "");
  }
  return s;
}

Index reduced_word_count(int n, int d) {
  long long total = 1;
  long long level = 2LL * n;
  for (int k = 1; k <= d; ++k) {
    total += level;
    level *= 2LL * n - 1;
  }
  return static_cast<Index>(total);
}

FGBasis::FGBasis(int generators, int depth) : n_(generators), d_(depth) {
  if (generators < 1) throw std::invalid_argument("FGBasis: need at least one generator");
  if (depth < 1) throw std::invalid_argument("FGBasis: depth must be positive");
  std::vector<int> letters;
  for (int j = 1; j <= n_; ++j) {
    letters.push_back(j);
    letters.push_back(-j);
  }
  words_.push_back({});
  level_end_.push_back(1);
  std::size_t begin = 0;
  for (int k = 1; k <= d_; ++k) {
    const std::size_t end = words_.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const int l : letters) {
        if (!words_[i].empty() && words_[i].back() == -l) continue;
        GroupWord w = words_[i];
        w.push_back(l);
        words_.push_back(std::move(w));
      }
    }
    begin = end;
    level_end_.push_back(static_cast<Index>(words_.size()));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], static_cast<Index>(i));
}

Index FGBasis::dim_at_depth(int k) const {
  if (k < 0) return 0;
  return level_end_[static_cast<std::size_t>(std::min(k, d_))];
}

Index FGBasis::find(std::span<const int> word) const {
  const auto it = index_.find(GroupWord(word.begin(), word.end()));
  return it == index_.end() ? -1 : it->second;
}

namespace {

void require_generator(const FGBasis& b, int j) {
  if (j == 0 || std::abs(j) > b.generators())
    throw std::out_of_range("generator " + std::to_string(j) + " outside +-1..+-" + std::to_string(b.generators()));
}

template <typename Map>
ExactOp translation(const FGBasis& b, Map&& map) {
  std::vector<numkit::Triplet<numkit::Exact>> t;
  for (Index i = 0; i < b.dim(); ++i) {
    const Index target = map(i);
    if (target >= 0) t.push_back({target, i, 1});
  }
  return ExactOp::from_triplets(b.dim(), b.dim(), std::move(t));
}

}  // namespace

ExactOp left_regular(const FGBasis& b, int j) {
  require_generator(b, j);
  const GroupWord g{j};
  return translation(b, [&](Index i) { return b.find(multiply(g, b.word(i))); });
}

ExactOp right_regular(const FGBasis& b, int j) {
  require_generator(b, j);
  const GroupWord g{j};
  return translation(b, [&](Index i) { return b.find(multiply(b.word(i), g)); });
}

HaagerupSplit haagerup_split(const FGBasis& b, int j) {
  require_generator(b, j);
  const GroupWord g{j};
  auto ends_in_inverse = [&](Index i) {
    const auto& w = b.word(i);
    return !w.empty() && w.back() == -j;
  };
  return {translation(b, [&](Index i) { return ends_in_inverse(i) ? Index{-1} : b.find(multiply(b.word(i), g)); }),
          translation(b, [&](Index i) { return ends_in_inverse(i) ? b.find(multiply(b.word(i), g)) : Index{-1}; })};
}

namespace {

bool bounded_by_identity(const ExactOp& sum, bool& diagonal) {
  diagonal = numkit::is_diagonal(sum);
  if (diagonal) return std::all_of(sum.values().begin(), sum.values().end(), [](numkit::Exact v) { return v <= 1; });
  // positive semidefinite, so <= I iff the norm is at most one
  return numkit::spectral_norm(sum, 1e-12).value <= 1.0 + 1e-12;
}

}  // namespace

std::vector<QuadraticSum> split_quadratic_sums(const FGBasis& b) {
  std::vector<QuadraticSum> out{{"sum a a^T", ExactOp(b.dim(), b.dim())},
                                {"sum b^T b", ExactOp(b.dim(), b.dim())},
                                {"sum a^T a", ExactOp(b.dim(), b.dim())},
                                {"sum b b^T", ExactOp(b.dim(), b.dim())}};
  for (int j = 1; j <= b.generators(); ++j) {
    const auto split = haagerup_split(b, j);
    const auto at = split.increasing.transpose();
    const auto bt = split.decreasing.transpose();
    out[0].sum = numkit::add(out[0].sum, numkit::multiply(split.increasing, at));
    out[1].sum = numkit::add(out[1].sum, numkit::multiply(bt, split.decreasing));
    out[2].sum = numkit::add(out[2].sum, numkit::multiply(at, split.increasing));
    out[3].sum = numkit::add(out[3].sum, numkit::multiply(split.decreasing, bt));
  }
  for (auto& q : out) q.boundedByIdentity = bounded_by_identity(q.sum, q.diagonal);
  return out;
}

ExactOp delta_G(const FGBasis& b, const ExactOp& x) {
  if (x.rows() != b.dim() || x.cols() != b.dim()) throw std::invalid_argument("delta_G: operator does not act on l2(F_n)");
  ExactOp out(b.dim() * b.dim(), b.dim() * b.dim());
  for (int j = 1; j <= b.generators(); ++j) {
    const auto c = numkit::commutator(x, haagerup_split(b, j).increasing);
    if (!numkit::is_zero(c)) out = numkit::add(out, numkit::kron(c, left_regular(b, j)));
  }
  return out;
}

ExactOp compress_to_depth(const FGBasis& b, const ExactOp& a, int k) {
  return numkit::compress(a, b.dim_at_depth(k));
}

ExactOp compress_tensor_to_depth(const FGBasis& b, const ExactOp& a, int k) {
  return numkit::compress_tensor(a, b.dim(), b.dim_at_depth(k));
}

}  // namespace fockcheck::freegroup
