#include "fockcheck/search/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fockcheck/derivation/derivation.hpp"
#include "fockcheck/numkit/norm.hpp"
#include "fockcheck/numkit/parallel.hpp"
#include "fockcheck/numkit/seed.hpp"

namespace fockcheck::search {

using numkit::Exact;
using numkit::ExactOp;
using numkit::NormMethod;
using numkit::NormOptions;
using numkit::Real;

int default_degree(int depth) { return std::max(0, depth / 2 - 1); }

std::vector<Word> commutant_words(int letters, int degree) {
  if (letters < 1) throw std::invalid_argument("commutant_words: need at least one letter");
  if (degree < 0) throw std::invalid_argument("commutant_words: negative degree");
  std::vector<Word> words{{}};
  std::size_t begin = 0;
  for (int k = 1; k <= degree; ++k) {
    const std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int j = 1; j <= letters; ++j) {
        Word w = words[i];
        w.push_back(j);
        words.push_back(std::move(w));
      }
    begin = end;
  }
  return words;
}

namespace {

ExactOp y_word(const FockOperators& fock, const Word& w) {
  ExactOp out = fock.identity;
  for (const int j : w) out = numkit::multiply(out, fock.y[static_cast<std::size_t>(j - 1)]);
  return out;
}

void require_degree(const FockOperators& fock, int degree) {
  if (degree < 0 || 2 * (degree + 1) > fock.depth())
    throw std::invalid_argument("commutant degree " + std::to_string(degree) + " exceeds d/2 - 1 at d = " +
                                std::to_string(fock.depth()));
}

std::vector<double> uniform_coefficients(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> c(count);
  for (auto& v : c) v = dist(rng);
  return c;
}

}  // namespace

template <numkit::Scalar T>
numkit::LinOp<T> commutant_perturbation(const FockOperators& fock, std::span<const Word> words,
                                        std::span<const T> coefficients) {
  if (words.size() != coefficients.size())
    throw std::invalid_argument("commutant_perturbation: word and coefficient counts differ");
  numkit::LinOp<T> c(fock.dim(), fock.dim());
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (coefficients[i] == T{0}) continue;
    c = numkit::axpby(T{1}, c, coefficients[i], y_word(fock, words[i]).template cast<T>());
  }
  return numkit::kron(c, fock.identity.template cast<T>());
}

template numkit::LinOp<Exact> commutant_perturbation(const FockOperators&, std::span<const Word>,
                                                     std::span<const Exact>);
template numkit::LinOp<Real> commutant_perturbation(const FockOperators&, std::span<const Word>,
                                                    std::span<const Real>);

RealOp sample_commutant(const FockOperators& fock, int degree, std::uint64_t seed) {
  require_degree(fock, degree);
  const auto words = commutant_words(fock.letters(), degree);
  const auto c = uniform_coefficients(words.size(), seed);
  return commutant_perturbation<Real>(fock, words, c);
}

namespace {

class Objective {
 public:
  Objective(const FockOperators& fock, const std::vector<Word>& words, double tol) : tol_(tol) {
    t0_ = derivation::canonical_T0(fock).cast<Real>();
    for (const auto& w : words) basis_.push_back(numkit::kron(y_word(fock, w), fock.identity).cast<Real>());
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    generic_.resize(static_cast<std::size_t>(t0_.cols()));
    double nn = 0.0;
    for (auto& x : generic_) nn += (x = normal(rng)) * x;
    for (auto& x : generic_) x /= std::sqrt(nn);
  }

  RealOp assemble(std::span<const double> c) const {
    RealOp t = t0_;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (c[i] != 0.0) t = numkit::axpby(1.0, t, c[i], basis_[i]);
    return t;
  }

  /// ||T0 + sum c_i B_i||; `warm` seeds the start vector and is replaced by
  /// the maximizing vector. A previous maximizer alone can be an eigenvector
  /// orthogonal to the new top one, so a fixed generic vector is mixed in.
  double operator()(std::span<const double> c, std::vector<double>& warm) const {
    NormOptions o;
    o.tol = tol_;
    o.force_method = NormMethod::lanczos;
    o.keep_vector = true;
    std::vector<double> start;
    if (!warm.empty()) {
      start = warm;
      for (std::size_t i = 0; i < start.size(); ++i) start[i] += 1e-3 * generic_[i];
      o.start = start;
    }
    auto est = numkit::spectral_norm(assemble(c), o);
    warm = std::move(est.vector);
    return est.value;
  }

 private:
  double tol_;
  RealOp t0_;
  std::vector<RealOp> basis_;
  std::vector<double> generic_;
};

struct Candidate {
  double value;
  int trial;
  std::vector<double> coefficients;
};

/// Golden-section minimization of the convex map t -> f(c with c_i = t) on
/// [c_i - h, c_i + h]. Leaves c_i at the best point seen.
double line_search(const Objective& f, std::vector<double>& c, std::size_t i, double h, int steps, double current,
                   std::vector<double>& warm, long long& evals) {
  constexpr double kInvPhi = 0.6180339887498949;
  const double origin = c[i];
  double lo = origin - h, hi = origin + h;
  auto at = [&](double t) {
    c[i] = t;
    ++evals;
    return f(c, warm);
  };
  double a = hi - kInvPhi * (hi - lo), b = lo + kInvPhi * (hi - lo);
  double fa = at(a), fb = at(b);
  double bestT = origin, bestF = current;
  for (int s = 0; s < steps; ++s) {
    if (fa < bestF) bestF = fa, bestT = a;
    if (fb < bestF) bestF = fb, bestT = b;
    if (fa <= fb) {
      hi = b;
      b = a, fb = fa;
      a = hi - kInvPhi * (hi - lo);
      fa = at(a);
    } else {
      lo = a;
      a = b, fa = fb;
      b = lo + kInvPhi * (hi - lo);
      fb = at(b);
    }
  }
  if (fa < bestF) bestF = fa, bestT = a;
  if (fb < bestF) bestF = fb, bestT = b;
  c[i] = bestT;
  return bestF;
}

double sanity_floor(const FockOperators& fock, int margin) {
  double floor = 0.0;
  for (int k = 0; k < fock.letters(); ++k) {
    const auto dk = fock::compress_tensor_to_depth(fock.basis, derivation::delta(fock, fock.x[k]), fock.depth() - margin);
    const double num = numkit::spectral_norm(dk, 1e-12).value;
    const double den = 2.0 * numkit::spectral_norm(fock.x[k], 1e-12).value;
    floor = std::max(floor, num / den);
  }
  return floor;
}

}  // namespace

SearchReport minimize_norm(const FockOperators& fock, const SearchOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("minimize_norm: need at least one trial");
  if (options.restarts < 0 || options.sweeps < 0 || options.lineSearchSteps < 1)
    throw std::invalid_argument("minimize_norm: restarts, sweeps and line-search steps must be non-negative");
  const int degree = options.degree >= 0 ? options.degree : default_degree(fock.depth());
  require_degree(fock, degree);
  const auto words = commutant_words(fock.letters(), degree);
  const Objective f(fock, words, options.tol);

  std::vector<Candidate> trials(static_cast<std::size_t>(options.trials));
  numkit::parallel_for(trials.size(), options.threads, [&](std::size_t t) {
    auto c = t == 0 ? std::vector<double>(words.size(), 0.0)
                    : uniform_coefficients(words.size(), numkit::derive_seed(options.seed, t));
    std::vector<double> warm;
    const double v = f(c, warm);
    trials[t] = Candidate{v, static_cast<int>(t), std::move(c)};
  });
  long long evals = options.trials;

  std::vector<std::size_t> order(trials.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return trials[a].value < trials[b].value; });

  const std::size_t refineCount = std::min<std::size_t>(order.size(), static_cast<std::size_t>(options.restarts));
  std::vector<Candidate> refined(refineCount);
  std::vector<long long> refineEvals(refineCount, 0);
  numkit::parallel_for(refineCount, options.threads, [&](std::size_t r) {
    Candidate cand = trials[order[r]];
    std::vector<double> warm;
    for (int sweep = 0; sweep < options.sweeps; ++sweep) {
      const double before = cand.value;
      for (std::size_t i = 0; i < cand.coefficients.size(); ++i)
        cand.value = line_search(f, cand.coefficients, i, options.bracket, options.lineSearchSteps, cand.value, warm,
                                 refineEvals[r]);
      if (before - cand.value <= options.tol) break;
    }
    std::vector<double> cold;
    cand.value = f(cand.coefficients, cold);
    ++refineEvals[r];
    refined[r] = std::move(cand);
  });
  for (const auto e : refineEvals) evals += e;

  const Candidate* best = &trials[order.front()];
  for (const auto& c : refined)
    if (c.value < best->value) best = &c;

  SearchReport rep;
  rep.n = fock.letters();
  rep.d = fock.depth();
  rep.trials = options.trials;
  rep.restarts = options.restarts;
  rep.degree = degree;
  rep.seed = options.seed;
  rep.bestTrial = best->trial;
  rep.bestCoefficients = best->coefficients;
  {
    // independent start so the reported value does not inherit a warm vector
    std::vector<double> warm;
    rep.bestValue = f(rep.bestCoefficients, warm);
    ++evals;
  }
  rep.bound = std::sqrt(static_cast<double>(rep.n)) / 4.0;
  rep.margin = rep.bestValue - rep.bound;
  rep.sanityFloor = sanity_floor(fock, degree + 2);
  rep.derivationResidual = derivation::derivation_residual(fock, f.assemble(rep.bestCoefficients), degree + 2);
  rep.evaluations = evals;
  return rep;
}

}  // namespace fockcheck::search
