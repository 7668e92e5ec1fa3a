#pragma once

// The derivation delta(x) = [x (x) 1, S] on the truncated Fock space, the
// canonical implementing element T0, the z-extraction through the vacuum
// pairing and the norm chain
//   sqrt(n) <= ||sum z z^T||^{1/2} + ||sum z^T z||^{1/2} <= 2||T1|| <= 4||T||.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fockcheck/fock/ncpoly.hpp"
#include "fockcheck/fock/operators.hpp"
#include "fockcheck/numkit/linop.hpp"
#include "fockcheck/numkit/norm.hpp"

namespace fockcheck::derivation {

using fock::FockOperators;
using fock::NcPoly;
using numkit::ExactOp;
using numkit::Index;
using numkit::LinOp;
using numkit::NormOptions;
using numkit::RealOp;

/// S = sum_j (-r_j (x) l_j^T + r_j^T (x) l_j); antisymmetric.
ExactOp build_S(const FockOperators& fock);

/// pi(p): p evaluated at the semicirculars x_j.
ExactOp represent(const FockOperators& fock, const NcPoly& p);

/// [x (x) 1, S] by forming the tensor-square product directly.
ExactOp delta_by_commutator(const FockOperators& fock, const ExactOp& x);

/// sum_j ([x, r_j^T] (x) l_j - [x, r_j] (x) l_j^T). Equal entry for entry to
/// delta_by_commutator on every truncation, at a fraction of the cost.
ExactOp delta(const FockOperators& fock, const ExactOp& x);
ExactOp delta(const FockOperators& fock, const NcPoly& p);

/// T0 = sum_j r_j^T (x) x_j.
ExactOp canonical_T0(const FockOperators& fock);

/// Compression margin used for identities involving p and q: deg p + deg q + 2.
int leibniz_margin(const NcPoly& p, const NcPoly& q);

/// delta(pq) == delta(p)(q (x) 1) + (p (x) 1)delta(q) after compression to
/// depth d - leibniz_margin. Throws std::invalid_argument when the margin
/// exceeds the truncation depth.
bool leibniz_check(const FockOperators& fock, const NcPoly& p, const NcPoly& q);

/// sum_j <x_j Omega, a Omega> x_j
ExactOp range_projection_P(const FockOperators& fock, const ExactOp& a);

template <numkit::Scalar T>
struct ZFamily {
  std::vector<LinOp<T>> z;
  double rowNorm = 0.0;  // ||sum z_j z_j^T||^{1/2}
  double colNorm = 0.0;  // ||sum z_j^T z_j||^{1/2}
  double t1Norm = 0.0;   // ||sum z_j (x) x_j||
  /// Both quadratic sums were diagonal, so rowNorm/colNorm are exact square
  /// roots of their largest entries rather than eigensolver estimates.
  bool quadraticSumsDiagonal = false;
};

/// z_j(a,b) = <e_a (x) e_(j), T (e_b (x) Omega)>.
template <numkit::Scalar T>
ZFamily<T> extract_z(const FockOperators& fock, const LinOp<T>& t, const NormOptions& norm = {});

struct Link {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool holds = false;
};

struct ChainReport {
  int n = 0;
  int d = 0;
  double sqrtN = 0.0;
  double rowNorm = 0.0;
  double colNorm = 0.0;
  double sumOfRoots = 0.0;
  double t1Norm = 0.0;
  double tNorm = 0.0;
  /// max(rowNorm, colNorm) <= t1Norm
  Link firstInequality;
  /// sqrtN <= sumOfRoots <= 2 t1Norm <= 4 tNorm
  std::array<Link, 3> links;
  bool inequalitiesHold = false;
  /// max_k ||compress(delta(x_k) - [x_k (x) 1, T], d - 2)||_max
  double derivationResidual = 0.0;
  bool derivationHolds = false;
  bool quadraticSumsDiagonal = false;
};

/// Largest entry of compress(delta(x_k) - [x_k (x) 1, T], d - margin) over all k.
template <numkit::Scalar T>
double derivation_residual(const FockOperators& fock, const LinOp<T>& t, int margin = 2);

template <numkit::Scalar T>
ChainReport chain_eval(const FockOperators& fock, const LinOp<T>& t, double tol = 1e-9, const NormOptions& norm = {});

struct GenerationRank {
  std::size_t rank = 0;
  std::size_t fullRank = 0;  // (dim Q_margin)^2
};

/// Rank of span{compress(pi(a) P_Omega pi(b), margin)} over monomials a, b in
/// the x_j of length <= wordLen.
GenerationRank generation_rank(const FockOperators& fock, int wordLen, int margin);

/// [[pi(p) (x) 1, delta(p)], [0, pi(p) (x) 1]] on (H (x) H)^2.
ExactOp build_u(const FockOperators& fock, const NcPoly& p);

/// u(pq) == u(p)u(q) after compressing every block to depth d - leibniz_margin.
/// Same margin contract as leibniz_check.
bool u_multiplicativity_check(const FockOperators& fock, const NcPoly& p, const NcPoly& q);

enum class CbMap { delta, u };
const char* to_string(CbMap m);

/// ||(id_k (x) map)(X)|| / ||X|| for the k x k matrix X = [pi(entries[a*k+b])].
/// Zero X gives 0.
double cb_ratio(const FockOperators& fock, CbMap map, int k, std::span<const NcPoly> entries,
                const NormOptions& norm = {});

struct CbSampleOptions {
  int maxDegree = 3;
  int maxTerms = 3;
  int coefficientRange = 3;
  NormOptions norm;
};

struct CbSample {
  double maxRatio = 0.0;
  int trials = 0;
  int amplification = 1;
  int argmaxTrial = -1;
};

/// Max over seeded random trials of cb_ratio; a lower bound on the
/// amplification-k norm of the map. Trial t uses derive_seed(seed, t).
CbSample cb_lower_sample(const FockOperators& fock, CbMap map, int k, int trials, std::uint64_t seed,
                         const CbSampleOptions& options = {});

struct SimilarityBound {
  /// n^{1/4} / 2: lower bound on ||S|| ||S^{-1}|| for any similarity S in
  /// M_2(N) turning u into a *-homomorphism.
  double conditionNumberBound = 0.0;
  /// sqrt(n) / 4: lower bound on the squared cb norm of any lifting.
  double liftingNormSquaredBound = 0.0;
  bool chainHolds = false;
};

SimilarityBound similarity_bound(const ChainReport& report);

}  // namespace fockcheck::derivation
