#include "fockcheck/derivation/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fockcheck/numkit/rank.hpp"
#include "fockcheck/numkit/seed.hpp"

namespace fockcheck::derivation {

using numkit::Exact;
using numkit::Real;

ExactOp build_S(const FockOperators& fock) {
  const Index dim = fock.dim();
  ExactOp s(dim * dim, dim * dim);
  for (int j = 0; j < fock.letters(); ++j) {
    const auto& r = fock.right[j];
    const auto& l = fock.left[j];
    s = numkit::add(s, numkit::subtract(numkit::kron(r.transpose(), l), numkit::kron(r, l.transpose())));
  }
  return s;
}

ExactOp represent(const FockOperators& fock, const NcPoly& p) {
  return fock::eval_poly<Exact>(p, fock.x);
}

ExactOp delta_by_commutator(const FockOperators& fock, const ExactOp& x) {
  return numkit::commutator(numkit::kron(x, fock.identity), build_S(fock));
}

ExactOp delta(const FockOperators& fock, const ExactOp& x) {
  const Index dim = fock.dim();
  if (x.rows() != dim || x.cols() != dim) throw std::invalid_argument("delta: operator does not act on the Fock space");
  ExactOp out(dim * dim, dim * dim);
  for (int j = 0; j < fock.letters(); ++j) {
    const auto& r = fock.right[j];
    const auto& l = fock.left[j];
    const auto up = numkit::commutator(x, r.transpose());
    const auto down = numkit::commutator(x, r);
    if (!numkit::is_zero(up)) out = numkit::add(out, numkit::kron(up, l));
    if (!numkit::is_zero(down)) out = numkit::subtract(out, numkit::kron(down, l.transpose()));
  }
  return out;
}

ExactOp delta(const FockOperators& fock, const NcPoly& p) { return delta(fock, represent(fock, p)); }

ExactOp canonical_T0(const FockOperators& fock) {
  const Index dim = fock.dim();
  ExactOp t(dim * dim, dim * dim);
  for (int j = 0; j < fock.letters(); ++j) t = numkit::add(t, numkit::kron(fock.right[j].transpose(), fock.x[j]));
  return t;
}

int leibniz_margin(const NcPoly& p, const NcPoly& q) { return p.degree() + q.degree() + 2; }

bool leibniz_check(const FockOperators& fock, const NcPoly& p, const NcPoly& q) {
  const int margin = leibniz_margin(p, q);
  if (margin > fock.depth())
    throw std::invalid_argument("leibniz_check: margin " + std::to_string(margin) + " exceeds depth " +
                                std::to_string(fock.depth()));
  const auto px = represent(fock, p);
  const auto qx = represent(fock, q);
  const auto lhs = delta(fock, represent(fock, p * q));
  const auto rhs = numkit::add(numkit::multiply(delta(fock, px), numkit::kron(qx, fock.identity)),
                               numkit::multiply(numkit::kron(px, fock.identity), delta(fock, qx)));
  const int keep = fock.depth() - margin;
  return numkit::exact_eq(fock::compress_tensor_to_depth(fock.basis, lhs, keep),
                          fock::compress_tensor_to_depth(fock.basis, rhs, keep));
}

ExactOp range_projection_P(const FockOperators& fock, const ExactOp& a) {
  if (a.rows() != fock.dim() || a.cols() != fock.dim())
    throw std::invalid_argument("range_projection_P: operator does not act on the Fock space");
  ExactOp out(fock.dim(), fock.dim());
  for (int j = 1; j <= fock.letters(); ++j) {
    // x_j Omega = e_(j), so the pairing is the (j), Omega entry of a
    const Exact c = a.at(fock.basis.index_of(std::vector<int>{j}), 0);
    if (c != 0) out = numkit::axpby(Exact{1}, out, c, fock.x[j - 1]);
  }
  return out;
}

namespace {

template <numkit::Scalar T>
double quadratic_norm(const LinOp<T>& sum, const NormOptions& norm, bool& diagonal) {
  if (numkit::is_diagonal(sum)) {
    double m = 0.0;
    for (const T v : sum.values()) m = std::max(m, std::abs(static_cast<double>(v)));
    return m;
  }
  diagonal = false;
  return numkit::spectral_norm(sum.template cast<Real>(), norm).value;
}

}  // namespace

template <numkit::Scalar T>
ZFamily<T> extract_z(const FockOperators& fock, const LinOp<T>& t, const NormOptions& norm) {
  const Index dim = fock.dim();
  if (t.rows() != dim * dim || t.cols() != dim * dim)
    throw std::invalid_argument("extract_z: operator does not act on the tensor square");
  const int n = fock.letters();
  std::vector<std::vector<numkit::Triplet<T>>> entries(static_cast<std::size_t>(n));
  const auto tt = t.transpose();
  for (Index b = 0; b < dim; ++b) {
    // row b*dim of T^T is the column T(. , e_b (x) Omega)
    const auto cs = tt.row_cols(b * dim);
    const auto vs = tt.row_values(b * dim);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const Index a = cs[k] / dim;
      const Index w = cs[k] % dim;
      if (w >= 1 && w <= n) entries[w - 1].push_back({a, b, vs[k]});  // indices 1..n are the words (j)
    }
  }
  ZFamily<T> out;
  LinOp<T> rowSum(dim, dim);
  LinOp<T> colSum(dim, dim);
  LinOp<T> t1(dim * dim, dim * dim);
  for (int j = 0; j < n; ++j) {
    out.z.push_back(LinOp<T>::from_triplets(dim, dim, std::move(entries[j])));
    const auto& z = out.z.back();
    const auto zt = z.transpose();
    rowSum = numkit::add(rowSum, numkit::multiply(z, zt));
    colSum = numkit::add(colSum, numkit::multiply(zt, z));
    t1 = numkit::add(t1, numkit::kron(z, fock.x[j].template cast<T>()));
  }
  bool diagonal = true;
  out.rowNorm = std::sqrt(quadratic_norm(rowSum, norm, diagonal));
  out.colNorm = std::sqrt(quadratic_norm(colSum, norm, diagonal));
  out.quadraticSumsDiagonal = diagonal;
  out.t1Norm = numkit::spectral_norm(t1.template cast<Real>(), norm).value;
  return out;
}

template <numkit::Scalar T>
double derivation_residual(const FockOperators& fock, const LinOp<T>& t, int margin) {
  const int keep = fock.depth() - margin;
  if (keep < 0) throw std::invalid_argument("derivation_residual: margin exceeds depth");
  const auto id = fock.identity.template cast<T>();
  double worst = 0.0;
  for (int k = 0; k < fock.letters(); ++k) {
    const auto x = fock.x[k].template cast<T>();
    const auto diff = numkit::subtract(delta(fock, fock.x[k]).template cast<T>(), numkit::commutator(numkit::kron(x, id), t));
    worst = std::max(worst, numkit::max_abs(fock::compress_tensor_to_depth(fock.basis, diff, keep)));
  }
  return worst;
}

namespace {

Link make_link(std::string name, double lhs, double rhs, double tol) {
  return Link{std::move(name), lhs, rhs, rhs - lhs, rhs - lhs >= -tol};
}

}  // namespace

template <numkit::Scalar T>
ChainReport chain_eval(const FockOperators& fock, const LinOp<T>& t, double tol, const NormOptions& norm) {
  const auto z = extract_z(fock, t, norm);
  ChainReport rep;
  rep.n = fock.letters();
  rep.d = fock.depth();
  rep.sqrtN = std::sqrt(static_cast<double>(rep.n));
  rep.rowNorm = z.rowNorm;
  rep.colNorm = z.colNorm;
  rep.sumOfRoots = z.rowNorm + z.colNorm;
  rep.t1Norm = z.t1Norm;
  rep.tNorm = numkit::spectral_norm(t.template cast<Real>(), norm).value;
  rep.quadraticSumsDiagonal = z.quadraticSumsDiagonal;
  rep.firstInequality = make_link("max(rowNorm,colNorm)<=t1Norm", std::max(z.rowNorm, z.colNorm), z.t1Norm, tol);
  rep.links = {make_link("sqrtN<=sumOfRoots", rep.sqrtN, rep.sumOfRoots, tol),
               make_link("sumOfRoots<=2*t1Norm", rep.sumOfRoots, 2.0 * rep.t1Norm, tol),
               make_link("2*t1Norm<=4*tNorm", 2.0 * rep.t1Norm, 4.0 * rep.tNorm, tol)};
  rep.inequalitiesHold = rep.firstInequality.holds;
  for (const auto& l : rep.links) rep.inequalitiesHold = rep.inequalitiesHold && l.holds;
  rep.derivationResidual = derivation_residual(fock, t, 2);
  rep.derivationHolds = rep.derivationResidual <= tol;
  return rep;
}

template ZFamily<Exact> extract_z(const FockOperators&, const LinOp<Exact>&, const NormOptions&);
template ZFamily<Real> extract_z(const FockOperators&, const LinOp<Real>&, const NormOptions&);
template double derivation_residual(const FockOperators&, const LinOp<Exact>&, int);
template double derivation_residual(const FockOperators&, const LinOp<Real>&, int);
template ChainReport chain_eval(const FockOperators&, const LinOp<Exact>&, double, const NormOptions&);
template ChainReport chain_eval(const FockOperators&, const LinOp<Real>&, double, const NormOptions&);

GenerationRank generation_rank(const FockOperators& fock, int wordLen, int margin) {
  if (wordLen < 0 || margin < 0) throw std::invalid_argument("generation_rank: negative length or margin");
  if (wordLen > margin) throw std::invalid_argument("generation_rank: word length must not exceed the margin");
  if (margin > fock.depth() || wordLen > fock.depth())
    throw std::invalid_argument("generation_rank: margin exceeds truncation depth");
  const auto& basis = fock.basis;
  const Index words = basis.dim_at_depth(wordLen);
  std::vector<ExactOp> images;
  images.reserve(static_cast<std::size_t>(words));
  for (Index i = 0; i < words; ++i) images.push_back(represent(fock, NcPoly::monomial(basis.word(i))));
  const auto vacuum = fock::vacuum_projection(basis);
  std::vector<ExactOp> span;
  span.reserve(static_cast<std::size_t>(words) * words);
  for (const auto& a : images) {
    const auto left = numkit::multiply(a, vacuum);
    for (const auto& b : images) span.push_back(fock::compress_to_depth(basis, numkit::multiply(left, b), margin));
  }
  const auto kept = static_cast<std::size_t>(basis.dim_at_depth(margin));
  return {numkit::rank_of_span(span), kept * kept};
}

ExactOp build_u(const FockOperators& fock, const NcPoly& p) {
  const auto px = represent(fock, p);
  const auto diag = numkit::kron(px, fock.identity);
  const auto corner = delta(fock, px);
  const Index sq = fock.dim() * fock.dim();
  const std::array<numkit::Block<Exact>, 3> blocks{{{0, 0, &diag}, {0, 1, &corner}, {1, 1, &diag}}};
  return numkit::assemble_blocks<Exact>(2, 2, sq, sq, blocks);
}

bool u_multiplicativity_check(const FockOperators& fock, const NcPoly& p, const NcPoly& q) {
  const int margin = leibniz_margin(p, q);
  if (margin > fock.depth())
    throw std::invalid_argument("u_multiplicativity_check: margin " + std::to_string(margin) + " exceeds depth " +
                                std::to_string(fock.depth()));
  const int keep = fock.depth() - margin;
  const auto lhs = fock::compress_tensor_to_depth(fock.basis, build_u(fock, p * q), keep, 2);
  const auto rhs = fock::compress_tensor_to_depth(fock.basis, numkit::multiply(build_u(fock, p), build_u(fock, q)), keep, 2);
  return numkit::exact_eq(lhs, rhs);
}

const char* to_string(CbMap m) { return m == CbMap::delta ? "delta" : "u"; }

double cb_ratio(const FockOperators& fock, CbMap map, int k, std::span<const NcPoly> entries, const NormOptions& norm) {
  if (k < 1) throw std::invalid_argument("cb_ratio: amplification must be positive");
  if (entries.size() != static_cast<std::size_t>(k) * k) throw std::invalid_argument("cb_ratio: expected k*k entries");
  const Index dim = fock.dim();
  const Index sq = dim * dim;
  const Index imageDim = map == CbMap::delta ? sq : 2 * sq;
  std::vector<ExactOp> in;
  std::vector<ExactOp> out;
  in.reserve(entries.size());
  out.reserve(entries.size());
  for (const auto& p : entries) {
    in.push_back(represent(fock, p));
    out.push_back(map == CbMap::delta ? delta(fock, in.back()) : build_u(fock, p));
  }
  std::vector<numkit::Block<Exact>> inBlocks;
  std::vector<numkit::Block<Exact>> outBlocks;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      inBlocks.push_back({a, b, &in[static_cast<std::size_t>(a * k + b)]});
      outBlocks.push_back({a, b, &out[static_cast<std::size_t>(a * k + b)]});
    }
  }
  const auto x = numkit::assemble_blocks<Exact>(k, k, dim, dim, inBlocks);
  NormOptions inputNorm = norm;
  if (x.rows() <= inputNorm.dense_threshold) inputNorm.force_method.reset();
  const double xNorm = numkit::spectral_norm(x, inputNorm).value;
  if (xNorm == 0.0) return 0.0;
  const auto y = numkit::assemble_blocks<Exact>(k, k, imageDim, imageDim, outBlocks);
  return numkit::spectral_norm(y, norm).value / xNorm;
}

CbSample cb_lower_sample(const FockOperators& fock, CbMap map, int k, int trials, std::uint64_t seed,
                         const CbSampleOptions& options) {
  if (k < 1 || k > 4) throw std::invalid_argument("cb_lower_sample: amplification must be in 1..4");
  CbSample out;
  out.amplification = k;
  out.trials = trials;
  const fock::RandomPolySpec spec{fock.letters(), options.maxDegree, options.maxTerms, options.coefficientRange};
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(numkit::derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<NcPoly> entries;
    for (int e = 0; e < k * k; ++e) entries.push_back(fock::random_ncpoly(rng, spec));
    const double r = cb_ratio(fock, map, k, entries, options.norm);
    if (r > out.maxRatio) {
      out.maxRatio = r;
      out.argmaxTrial = t;
    }
  }
  return out;
}

SimilarityBound similarity_bound(const ChainReport& report) {
  const double n = static_cast<double>(report.n);
  return {std::pow(n, 0.25) / 2.0, std::sqrt(n) / 4.0, report.inequalitiesHold};
}

}  // namespace fockcheck::derivation
