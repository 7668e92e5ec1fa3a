#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fockcheck/fock/basis.hpp"
#include "fockcheck/numkit/linop.hpp"

namespace fockcheck::fock {

struct Monomial {
  std::int64_t coefficient;
  Word word;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Noncommutative polynomial with integer coefficients in generators 1..n.
/// Terms are kept canonical: sorted by (length, word), merged, zero-free.
class NcPoly {
 public:
  NcPoly() = default;
  explicit NcPoly(std::vector<Monomial> terms);

  static NcPoly constant(std::int64_t c);
  static NcPoly generator(int j);
  static NcPoly monomial(Word word, std::int64_t c = 1);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Longest word length; 0 for constants and for the zero polynomial.
  int degree() const;
  /// Largest generator index used; 0 if none.
  int max_letter() const;

  /// Reversal of every word (the transpose under a symmetric representation).
  NcPoly reversed() const;

  friend NcPoly operator+(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator-(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend bool operator==(const NcPoly&, const NcPoly&) = default;

 private:
  std::vector<Monomial> terms_;
};

std::string to_string(const NcPoly& p);

/// Substitutes gens[j-1] for generator j and sums; products are shared
/// across terms with a common prefix. gens must be non-empty and square.
template <numkit::Scalar T>
numkit::LinOp<T> eval_poly(const NcPoly& p, std::span<const numkit::LinOp<T>> gens) {
  if (gens.empty()) throw std::invalid_argument("eval_poly: no generators supplied");
  if (p.max_letter() > static_cast<int>(gens.size()))
    throw std::invalid_argument("eval_poly: polynomial uses generator " + std::to_string(p.max_letter()) + " but only " +
                                std::to_string(gens.size()) + " supplied");
  const Index dim = gens.front().rows();
  const auto id = numkit::LinOp<T>::identity(dim);
  std::map<Word, numkit::LinOp<T>> prefix;
  numkit::LinOp<T> sum(dim, dim);
  for (const auto& m : p.terms()) {
    const numkit::LinOp<T>* cur = &id;
    Word w;
    for (const int letter : m.word) {
      w.push_back(letter);
      auto it = prefix.find(w);
      if (it == prefix.end()) it = prefix.emplace(w, numkit::multiply(*cur, gens[letter - 1])).first;
      cur = &it->second;
    }
    sum = numkit::axpby(T{1}, sum, static_cast<T>(m.coefficient), *cur);
  }
  return sum;
}

struct RandomPolySpec {
  int letters = 2;
  int max_degree = 3;
  int max_terms = 4;
  /// coefficients drawn uniformly from [-range, range] \ {0}
  int coefficient_range = 3;
};

/// Never returns the zero polynomial.
NcPoly random_ncpoly(std::mt19937_64& rng, const RandomPolySpec& spec);

}  // namespace fockcheck::fock
