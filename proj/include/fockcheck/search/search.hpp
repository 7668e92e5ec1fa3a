#pragma once

// Adversarial probe of the lower bound ||T|| >= sqrt(n)/4: minimizes
// ||T0 + c (x) 1|| over c in the span of words in the y_j (elements of the
// commutant), every one of which implements the same derivation.

#include <cstdint>
#include <span>
#include <vector>

#include "fockcheck/fock/basis.hpp"
#include "fockcheck/fock/operators.hpp"
#include "fockcheck/numkit/linop.hpp"

namespace fockcheck::search {

using fock::FockOperators;
using fock::Word;
using numkit::RealOp;

/// Largest y-word length whose perturbations stay inside the truncation
/// margin: floor(d/2) - 1, clamped at 0.
int default_degree(int depth);

/// Words over 1..n of length <= degree, length-lex.
std::vector<Word> commutant_words(int letters, int degree);

/// sum_w coefficients[w] * y_w (x) 1 on H (x) H.
template <numkit::Scalar T>
numkit::LinOp<T> commutant_perturbation(const FockOperators& fock, std::span<const Word> words,
                                        std::span<const T> coefficients);

/// Random element of the family with coefficients uniform in [-1, 1].
/// Throws std::invalid_argument if degree > d/2 - 1.
RealOp sample_commutant(const FockOperators& fock, int degree, std::uint64_t seed);

struct SearchOptions {
  int trials = 500;
  int restarts = 3;
  int sweeps = 20;
  /// y-word length; negative selects default_degree(d)
  int degree = -1;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  /// half-width of the golden-section bracket around the current coefficient
  double bracket = 1.0;
  int lineSearchSteps = 40;
  int threads = 1;
};

struct SearchReport {
  int n = 0;
  int d = 0;
  int trials = 0;
  int restarts = 0;
  int degree = 0;
  std::uint64_t seed = 0;
  double bestValue = 0.0;
  double bound = 0.0;   // sqrt(n)/4
  double margin = 0.0;  // bestValue - bound
  std::vector<double> bestCoefficients;
  int bestTrial = -1;
  /// max_k ||compress(delta(x_k))|| / (2 ||x_k||), a floor no valid T can beat
  double sanityFloor = 0.0;
  /// derivation-equation residual of the reported minimizer at margin degree+2
  double derivationResidual = 0.0;
  long long evaluations = 0;
};

SearchReport minimize_norm(const FockOperators& fock, const SearchOptions& options = {});

}  // namespace fockcheck::search
