#include <gtest/gtest.h>

#include <cmath>
#include <utility>

#include "fockcheck/derivation/derivation.hpp"
#include "fockcheck/numkit/norm.hpp"
#include "fockcheck/search/search.hpp"

using namespace fockcheck;
using fock::FockBasis;
using fock::FockOperators;
using numkit::Exact;

TEST(Search, DefaultDegree) {
  EXPECT_EQ(search::default_degree(3), 0);
  EXPECT_EQ(search::default_degree(4), 1);
  EXPECT_EQ(search::default_degree(5), 1);
  EXPECT_EQ(search::default_degree(6), 2);
}

TEST(Search, CommutantWords) {
  const auto w = search::commutant_words(2, 2);
  ASSERT_EQ(w.size(), 7u);
  EXPECT_TRUE(w[0].empty());
  EXPECT_EQ(w[6], (fock::Word{2, 2}));
}

TEST(SampleCommutant, DegreeZeroIsScalar) {
  const FockOperators f{FockBasis(2, 3)};
  const auto s = search::sample_commutant(f, 0, 9);
  ASSERT_TRUE(numkit::is_diagonal(s));
  const double c = s.at(0, 0);
  EXPECT_GE(c, -1.0);
  EXPECT_LE(c, 1.0);
  for (numkit::Index i = 0; i < s.rows(); ++i) EXPECT_EQ(s.at(i, i), c);
}

TEST(SampleCommutant, SeededAndDegreeChecked) {
  const FockOperators f{FockBasis(2, 4)};
  EXPECT_EQ(search::sample_commutant(f, 1, 3), search::sample_commutant(f, 1, 3));
  EXPECT_NE(search::sample_commutant(f, 1, 3), search::sample_commutant(f, 1, 4));
  EXPECT_THROW(search::sample_commutant(f, 2, 3), std::invalid_argument);
}

TEST(SampleCommutant, CommutesWithGeneratorsExactly) {
  const FockOperators f{FockBasis(2, 6)};
  const auto words = search::commutant_words(2, 2);
  std::vector<Exact> coeffs;
  for (std::size_t i = 0; i < words.size(); ++i) coeffs.push_back(static_cast<Exact>(i) - 3);
  const auto c = search::commutant_perturbation<Exact>(f, words, coeffs);
  for (int k = 0; k < 2; ++k) {
    const auto comm = numkit::commutator(c, numkit::kron(f.x[k], f.identity));
    EXPECT_TRUE(numkit::is_zero(fock::compress_tensor_to_depth(f.basis, comm, 6 - 3)));
  }
  // so T0 + c still implements delta at margin degree + 2
  const auto t = numkit::add(derivation::canonical_T0(f), c);
  EXPECT_EQ(derivation::derivation_residual<Exact>(f, t, 4), 0.0);
}

TEST(MinimizeNorm, ZeroTrialIsCanonical) {
  for (int n : {1, 2, 3}) {
    const FockOperators f{FockBasis(n, 3)};
    search::SearchOptions o;
    o.trials = 1;
    o.restarts = 0;
    const auto r = search::minimize_norm(f, o);
    EXPECT_NEAR(r.bestValue, numkit::spectral_norm(derivation::canonical_T0(f), 1e-12).value, 1e-9);
    EXPECT_GE(r.bestValue, std::sqrt(n) - 1e-9);
    EXPECT_EQ(r.bestTrial, 0);
    EXPECT_DOUBLE_EQ(r.margin, r.bestValue - r.bound);
  }
}

// refinement must not report a point worse than the unperturbed T0
TEST(MinimizeNorm, NeverAboveUnperturbedNorm) {
  for (const auto [n, d] : {std::pair{1, 4}, {2, 4}, {1, 5}, {3, 4}}) {
    const FockOperators f{FockBasis(n, d)};
    const double t0 = numkit::spectral_norm(derivation::canonical_T0(f).cast<numkit::Real>(), 1e-12).value;
    search::SearchOptions o;
    o.trials = 8;
    o.restarts = 2;
    o.sweeps = 2;
    o.lineSearchSteps = 10;
    const auto r = search::minimize_norm(f, o);
    EXPECT_LE(r.bestValue, t0 + 1e-8) << "n=" << n << " d=" << d;
  }
}

TEST(MinimizeNorm, RespectsBoundAndFloor) {
  const FockOperators f{FockBasis(1, 3)};
  search::SearchOptions o;
  o.trials = 100;
  const auto r = search::minimize_norm(f, o);
  EXPECT_DOUBLE_EQ(r.bound, 0.25);
  EXPECT_GE(r.bestValue, 0.25 - 1e-9);
  EXPECT_GE(r.bestValue, r.sanityFloor - 1e-9);
  EXPECT_EQ(r.derivationResidual, 0.0);
  EXPECT_EQ(r.bestCoefficients.size(), 1u);
}

TEST(MinimizeNorm, ReproducibleAcrossThreadCounts) {
  const FockOperators f{FockBasis(2, 4)};
  search::SearchOptions o;
  o.trials = 12;
  o.restarts = 2;
  o.sweeps = 2;
  o.lineSearchSteps = 8;
  o.threads = 1;
  const auto a = search::minimize_norm(f, o);
  o.threads = 4;
  const auto b = search::minimize_norm(f, o);
  EXPECT_EQ(a.bestValue, b.bestValue);
  EXPECT_EQ(a.bestCoefficients, b.bestCoefficients);
  EXPECT_EQ(a.bestTrial, b.bestTrial);
}

TEST(MinimizeNorm, RejectsBadOptions) {
  const FockOperators f{FockBasis(2, 3)};
  search::SearchOptions o;
  o.trials = 0;
  EXPECT_THROW(search::minimize_norm(f, o), std::invalid_argument);
  o.trials = 1;
  o.degree = 1;
  EXPECT_THROW(search::minimize_norm(f, o), std::invalid_argument);
}
