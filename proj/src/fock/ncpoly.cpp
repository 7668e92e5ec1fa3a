#include "fockcheck/fock/ncpoly.hpp"

#include <algorithm>

#include "fockcheck/numkit/scalar.hpp"

namespace fockcheck::fock {
namespace {

using Arith = numkit::Arith<numkit::Exact>;

bool word_less(const Word& a, const Word& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

}  // namespace

NcPoly::NcPoly(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) { return word_less(a.word, b.word); });
  for (auto& t : terms) {
    for (const int letter : t.word)
      if (letter < 1) throw std::invalid_argument("NcPoly: generator indices start at 1");
    if (!terms_.empty() && terms_.back().word == t.word) {
      terms_.back().coefficient = Arith::add(terms_.back().coefficient, t.coefficient);
      if (terms_.back().coefficient == 0) terms_.pop_back();
    } else if (t.coefficient != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

NcPoly NcPoly::constant(std::int64_t c) { return NcPoly(std::vector<Monomial>{{c, {}}}); }
NcPoly NcPoly::generator(int j) { return NcPoly(std::vector<Monomial>{{1, {j}}}); }
NcPoly NcPoly::monomial(Word word, std::int64_t c) { return NcPoly(std::vector<Monomial>{{c, std::move(word)}}); }

int NcPoly::degree() const { return terms_.empty() ? 0 : static_cast<int>(terms_.back().word.size()); }

int NcPoly::max_letter() const {
  int m = 0;
  for (const auto& t : terms_)
    for (const int letter : t.word) m = std::max(m, letter);
  return m;
}

NcPoly NcPoly::reversed() const {
  std::vector<Monomial> out = terms_;
  for (auto& t : out) std::reverse(t.word.begin(), t.word.end());
  return NcPoly(std::move(out));
}

NcPoly operator+(const NcPoly& a, const NcPoly& b) {
  std::vector<Monomial> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return NcPoly(std::move(t));
}

NcPoly operator-(const NcPoly& a, const NcPoly& b) {
  std::vector<Monomial> t = a.terms_;
  for (const auto& m : b.terms_) t.push_back({Arith::neg(m.coefficient), m.word});
  return NcPoly(std::move(t));
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  std::vector<Monomial> t;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Word w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      t.push_back({Arith::mul(x.coefficient, y.coefficient), std::move(w)});
    }
  }
  return NcPoly(std::move(t));
}

std::string to_string(const NcPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& t : p.terms()) {
    if (!s.empty()) s += t.coefficient < 0 ? " - " : " + ";
    else if (t.coefficient < 0) s += "-";
    const auto mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
    if (t.word.empty()) {
      s += std::to_string(mag);
      continue;
    }
    if (mag != 1) s += std::to_string(mag) + "*";
    for (std::size_t i = 0; i < t.word.size(); ++i) s += (i ? "*g" : "g") + std::to_string(t.word[i]);
  }
  return s;
}

NcPoly random_ncpoly(std::mt19937_64& rng, const RandomPolySpec& spec) {
  std::uniform_int_distribution<int> nterms(1, std::max(1, spec.max_terms));
  std::uniform_int_distribution<int> degree(0, spec.max_degree);
  std::uniform_int_distribution<int> letter(1, spec.letters);
  std::uniform_int_distribution<int> coef(-spec.coefficient_range, spec.coefficient_range - 1);
  for (;;) {
    std::vector<Monomial> terms;
    const int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
      Word w(static_cast<std::size_t>(degree(rng)));
      for (auto& l : w) l = letter(rng);
      int c = coef(rng);
      if (c >= 0) ++c;  // skip zero
      terms.push_back({c, std::move(w)});
    }
    NcPoly p(std::move(terms));
    if (!p.is_zero()) return p;
  }
}

}  // namespace fockcheck::fock
