#include "fockcheck/cli/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "fockcheck/derivation/derivation.hpp"
#include "fockcheck/freegroup/freegroup.hpp"
#include "fockcheck/numkit/norm.hpp"
#include "fockcheck/numkit/parallel.hpp"
#include "fockcheck/numkit/rank.hpp"
#include "fockcheck/numkit/seed.hpp"
#include "fockcheck/search/search.hpp"

namespace fockcheck::cli {

using fock::FockOperators;
using numkit::Exact;
using numkit::ExactOp;
using numkit::NormMethod;
using numkit::NormOptions;
using numkit::Real;

namespace {

/// Compares operator pairs exactly, or within tol in float mode, and keeps
/// the worst entrywise residual.
struct Agreement {
  bool exact;
  double tol;
  double worst = 0.0;
  bool holds = true;

  void compare(const ExactOp& a, const ExactOp& b) {
    const double r = numkit::max_abs_diff(a, b);
    worst = std::max(worst, r);
    holds = holds && (exact ? numkit::exact_eq(a, b) : r <= tol);
  }
  void compare_zero(const ExactOp& a) { compare(a, ExactOp(a.rows(), a.cols())); }

  void finish(CheckReport& r, const RunConfig& cfg) const {
    r.relation = exact ? "==" : "<=";
    r.lhs = {"maxResidual", worst, exact};
    r.rhs = {exact ? "zero" : "tol", exact ? 0.0 : cfg.tolerance, exact};
    r.values["maxResidual"] = worst;
    r.pass = r.pass && holds;
  }
};

bool identity_exact(const RunConfig& cfg) { return cfg.mode != ScalarMode::real; }

NormOptions norm_options(const RunConfig& cfg, bool lanczos) {
  NormOptions o;
  o.tol = cfg.normTol;
  o.seed = numkit::derive_seed(cfg.seed, 0x6e6f726dULL);
  if (lanczos) o.force_method = NormMethod::lanczos;
  return o;
}

CheckReport commutator_table(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  r.pass = true;
  r.params.margin = 1;
  Agreement agree{identity_exact(cfg), cfg.tolerance};
  const int keep = f.depth() - 1;
  // [l_k, r_k^T] = -P_Omega: l_k r_k^T kills Omega while r_k^T l_k fixes it
  const auto vac = fock::vacuum_projection(f.basis);
  const auto minusVac = numkit::scale(vac, Exact{-1});
  double plusSign = 0.0;
  for (int k = 0; k < f.letters(); ++k) {
    const auto lt = f.left[k].transpose();
    for (int j = 0; j < f.letters(); ++j) {
      const auto rt = f.right[j].transpose();
      agree.compare_zero(fock::compress_to_depth(f.basis, numkit::commutator(f.left[k], f.right[j]), keep));
      agree.compare_zero(fock::compress_to_depth(f.basis, numkit::commutator(lt, rt), keep));
      const auto c = fock::compress_to_depth(f.basis, numkit::commutator(f.left[k], rt), keep);
      const ExactOp zero(f.dim(), f.dim());
      agree.compare(c, fock::compress_to_depth(f.basis, k == j ? minusVac : zero, keep));
      plusSign = std::max(plusSign, numkit::max_abs_diff(c, fock::compress_to_depth(f.basis, k == j ? vac : zero, keep)));
    }
  }
  r.values["pairs"] = static_cast<double>(f.letters()) * f.letters();
  r.values["plusSignResidual"] = plusSign;
  agree.finish(r, cfg);
  r.mode = agree.exact ? "exact" : "float";
  return r;
}

CheckReport delta_generator(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  r.pass = true;
  r.params.margin = 2;
  Agreement agree{identity_exact(cfg), cfg.tolerance};
  const auto vac = fock::vacuum_projection(f.basis);
  double plusSign = 0.0;
  for (int k = 0; k < f.letters(); ++k) {
    const auto d = fock::compress_tensor_to_depth(f.basis, derivation::delta(f, f.x[k]), f.depth() - 2);
    const auto px = fock::compress_tensor_to_depth(f.basis, numkit::kron(vac, f.x[k]), f.depth() - 2);
    agree.compare(d, numkit::scale(px, Exact{-1}));
    plusSign = std::max(plusSign, numkit::max_abs_diff(d, px));
  }
  r.values["generators"] = f.letters();
  r.values["plusSignResidual"] = plusSign;
  agree.finish(r, cfg);
  r.mode = agree.exact ? "exact" : "float";
  return r;
}

CheckReport s_norm(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  r.mode = "float";
  const auto est = numkit::spectral_norm(derivation::build_S(f), norm_options(cfg, false));
  ExactOp rowSum(f.dim(), f.dim());
  for (const auto& l : f.left) rowSum = numkit::add(rowSum, numkit::multiply(l, l.transpose()));
  const bool diagonal = numkit::is_diagonal(rowSum);
  const double rowMax = numkit::max_abs(rowSum);
  r.relation = "<=";
  r.lhs = {"normS", est.value, false};
  r.rhs = {"2", 2.0, true};
  r.values["normS"] = est.value;
  r.values["residual"] = est.residual;
  r.values["iterations"] = est.iterations;
  r.values["converged"] = est.converged ? 1.0 : 0.0;
  r.values["rowSumDiagonal"] = diagonal ? 1.0 : 0.0;
  r.values["rowSumNorm"] = rowMax;
  r.pass = est.value <= 2.0 + cfg.tolerance && est.converged && diagonal && rowMax == 1.0;
  return r;
}

CheckReport chain_t0(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  r.params.margin = 2;
  const bool exact = identity_exact(cfg);
  r.mode = exact ? "exact" : "float";
  const auto t0 = derivation::canonical_T0(f);
  const auto norm = norm_options(cfg, false);
  const auto rep = exact ? derivation::chain_eval<Exact>(f, t0, cfg.tolerance, norm)
                         : derivation::chain_eval<Real>(f, t0.cast<Real>(), cfg.tolerance, norm);
  const auto bound = derivation::similarity_bound(rep);
  r.relation = "<=";
  r.lhs = {"sqrtN", rep.sqrtN, false};
  r.rhs = {"4*normT", 4.0 * rep.tNorm, false};
  r.values["sqrtN"] = rep.sqrtN;
  r.values["rowNorm"] = rep.rowNorm;
  r.values["colNorm"] = rep.colNorm;
  r.values["sumOfRoots"] = rep.sumOfRoots;
  r.values["t1Norm"] = rep.t1Norm;
  r.values["normT"] = rep.tNorm;
  r.values["firstInequalityMargin"] = rep.firstInequality.margin;
  for (std::size_t i = 0; i < rep.links.size(); ++i)
    r.values["link" + std::to_string(i + 1) + "Margin"] = rep.links[i].margin;
  r.values["derivationResidual"] = rep.derivationResidual;
  r.values["quadraticSumsDiagonal"] = rep.quadraticSumsDiagonal ? 1.0 : 0.0;
  r.values["condBound"] = bound.conditionNumberBound;
  r.values["liftingBound"] = bound.liftingNormSquaredBound;
  r.pass = rep.inequalitiesHold && rep.firstInequality.holds && rep.derivationHolds;
  return r;
}

int sampled_degree(const FockOperators& f) { return std::min(2, (f.depth() - 2) / 2); }

CheckReport polynomial_identity(const RunConfig& cfg, const FockOperators& f,
                                bool (*identity)(const FockOperators&, const fock::NcPoly&, const fock::NcPoly&)) {
  CheckReport r;
  r.mode = "exact";
  const int deg = sampled_degree(f);
  const fock::RandomPolySpec spec{f.letters(), deg, 3, 3};
  int failures = 0;
  int margin = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    std::mt19937_64 rng(numkit::derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const auto p = fock::random_ncpoly(rng, spec);
    const auto q = fock::random_ncpoly(rng, spec);
    margin = std::max(margin, derivation::leibniz_margin(p, q));
    if (!identity(f, p, q)) ++failures;
  }
  r.params.margin = margin;
  r.relation = "==";
  r.lhs = {"failures", static_cast<double>(failures), true};
  r.rhs = {"zero", 0.0, true};
  r.values["pairs"] = cfg.samples;
  r.values["maxDegree"] = deg;
  r.values["failures"] = failures;
  r.pass = failures == 0;
  return r;
}

CheckReport cb_sample(const RunConfig& cfg, const FockOperators& f, derivation::CbMap map, int k, double bound) {
  CheckReport r;
  r.mode = "float";
  derivation::CbSampleOptions opts;
  opts.norm = norm_options(cfg, true);
  const auto s = derivation::cb_lower_sample(f, map, k, cfg.samples, cfg.seed, opts);
  r.relation = "<=";
  r.lhs = {"maxRatio", s.maxRatio, false};
  r.rhs = {"bound", bound, true};
  r.values["maxRatio"] = s.maxRatio;
  r.values["amplification"] = k;
  r.values["trials"] = s.trials;
  r.values["argmaxTrial"] = s.argmaxTrial;
  r.values["bound"] = bound;
  r.pass = s.maxRatio <= bound + cfg.tolerance;
  return r;
}

CheckReport generation_rank(const RunConfig&, const FockOperators& f) {
  CheckReport r;
  r.mode = "exact";
  const int wordLen = std::min(2, f.depth() / 2);
  r.params.margin = wordLen;
  const auto g = derivation::generation_rank(f, wordLen, wordLen);
  r.relation = "==";
  r.lhs = {"rank", static_cast<double>(g.rank), true};
  r.rhs = {"fullRank", static_cast<double>(g.fullRank), true};
  r.values["wordLen"] = wordLen;
  r.values["rank"] = static_cast<double>(g.rank);
  r.values["fullRank"] = static_cast<double>(g.fullRank);
  r.pass = g.rank == g.fullRank;
  return r;
}

/// Squared norm of y_{w[0]} ... y_{w[k-1]} Omega, applied right to left.
Exact word_vacuum_norm2(const FockOperators& f, const std::vector<int>& w) {
  std::vector<Exact> v(static_cast<std::size_t>(f.dim()), 0);
  v[0] = 1;
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = numkit::apply<Exact>(f.y[*it], v);
  Exact s = 0;
  for (const Exact c : v) s = numkit::Arith<Exact>::add(s, numkit::Arith<Exact>::mul(c, c));
  return s;
}

CheckReport trace_identity(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  const bool exact = identity_exact(cfg);
  r.mode = exact ? "exact" : "float";
  int mismatches = 0;
  double worst = 0.0, largest = 0.0;
  for (int i = 0; i < cfg.traceWords; ++i) {
    std::mt19937_64 rng(numkit::derive_seed(cfg.seed, 0x7472616365ULL + static_cast<std::uint64_t>(i)));
    std::uniform_int_distribution<int> len(1, f.depth()), letter(0, f.letters() - 1);
    std::vector<int> w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = letter(rng);
    const std::vector<int> wt(w.rbegin(), w.rend());
    const Exact a = word_vacuum_norm2(f, w), b = word_vacuum_norm2(f, wt);
    const double diff = std::abs(std::sqrt(static_cast<double>(a)) - std::sqrt(static_cast<double>(b)));
    worst = std::max(worst, diff);
    largest = std::max(largest, static_cast<double>(a));
    if (exact ? a != b : diff > cfg.tolerance) ++mismatches;
  }
  r.relation = "==";
  r.lhs = {"mismatches", static_cast<double>(mismatches), true};
  r.rhs = {"zero", 0.0, true};
  r.values["words"] = cfg.traceWords;
  r.values["mismatches"] = mismatches;
  r.values["maxResidual"] = worst;
  r.values["maxNormSquared"] = largest;
  r.pass = mismatches == 0;
  return r;
}

CheckReport freegroup_split(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  r.pass = true;
  r.params.margin = 1;
  const int depth = freegroup_depth(f.letters(), f.depth(), cfg.dimCap);
  const freegroup::FGBasis b(f.letters(), depth);
  Agreement agree{identity_exact(cfg), cfg.tolerance};
  long long expected = 1, level = 2LL * b.generators();
  for (int k = 1; k <= depth; ++k, level *= 2LL * b.generators() - 1) expected += level;
  r.pass = r.pass && b.dim() == expected;
  for (int j = 1; j <= b.generators(); ++j) {
    const auto s = freegroup::haagerup_split(b, j);
    agree.compare(numkit::add(s.increasing, s.decreasing), freegroup::right_regular(b, j));
  }
  for (int i = -b.generators(); i <= b.generators(); ++i) {
    if (i == 0) continue;
    const auto li = freegroup::left_regular(b, i);
    for (int j = -b.generators(); j <= b.generators(); ++j) {
      if (j == 0) continue;
      agree.compare_zero(freegroup::compress_to_depth(b, numkit::commutator(li, freegroup::right_regular(b, j)), depth - 1));
    }
  }
  const auto sums = freegroup::split_quadratic_sums(b);
  static const char* const keys[] = {"sumAATBounded", "sumBTBBounded", "sumATABounded", "sumBBTBounded"};
  for (std::size_t i = 0; i < sums.size(); ++i) r.values[keys[i]] = sums[i].boundedByIdentity ? 1.0 : 0.0;
  // the disjoint-support placement is the one asserted
  r.pass = r.pass && sums[0].diagonal && sums[0].boundedByIdentity && sums[1].diagonal && sums[1].boundedByIdentity;
  r.values["fgDepth"] = depth;
  r.values["words"] = b.dim();
  r.values["expectedWords"] = static_cast<double>(expected);
  agree.finish(r, cfg);
  r.mode = agree.exact ? "exact" : "float";
  return r;
}

/// prod of lambda(g_l) over a random signed word of length 1..3
ExactOp random_lambda_product(const freegroup::FGBasis& b, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 3), gen(1, b.generators()), sign(0, 1);
  ExactOp out = ExactOp::identity(b.dim());
  const int l = len(rng);
  for (int i = 0; i < l; ++i) {
    const int g = gen(rng) * (sign(rng) ? 1 : -1);
    out = numkit::multiply(out, freegroup::left_regular(b, g));
  }
  return out;
}

CheckReport freegroup_delta(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  r.pass = true;
  r.params.margin = 2;
  const int depth = freegroup_depth(f.letters(), f.depth(), cfg.dimCap);
  if (depth < 3) throw std::runtime_error("free-group truncation depth " + std::to_string(depth) + " below 3 under dim-cap");
  const freegroup::FGBasis b(f.letters(), depth);
  const int keep = depth - 2;
  Agreement agree{identity_exact(cfg), cfg.tolerance};
  const auto id = ExactOp::identity(b.dim());
  agree.compare_zero(freegroup::delta_G(b, id));

  int rankMismatches = 0;
  double maxNorm = 0.0;
  for (int k = 1; k <= b.generators(); ++k) {
    const auto dk = freegroup::delta_G(b, freegroup::left_regular(b, k));
    const auto c = freegroup::compress_tensor_to_depth(b, dk, keep);
    long long expected = 0;
    for (numkit::Index w = 0; w < b.dim_at_depth(keep); ++w) {
      const auto gw = freegroup::multiply(std::vector<int>{k}, b.word(w));
      if (static_cast<int>(gw.size()) <= keep) ++expected;
    }
    if (static_cast<long long>(numkit::matrix_rank(c)) != expected) ++rankMismatches;
    r.values["rank" + std::to_string(k)] = static_cast<double>(numkit::matrix_rank(c));
    r.values["expectedRank" + std::to_string(k)] = static_cast<double>(expected);
    maxNorm = std::max(maxNorm, numkit::spectral_norm(dk, norm_options(cfg, true)).value);
  }
  r.pass = r.pass && rankMismatches == 0 && maxNorm <= 2.0 + cfg.tolerance;

  for (int i = 0; i < cfg.samples; ++i) {
    std::mt19937_64 rng(numkit::derive_seed(cfg.seed, 0x66676c6569ULL + static_cast<std::uint64_t>(i)));
    const auto x = random_lambda_product(b, rng);
    const auto y = random_lambda_product(b, rng);
    const auto lhs = freegroup::delta_G(b, numkit::multiply(x, y));
    const auto rhs = numkit::add(numkit::multiply(freegroup::delta_G(b, x), numkit::kron(y, id)),
                                 numkit::multiply(numkit::kron(x, id), freegroup::delta_G(b, y)));
    agree.compare(freegroup::compress_tensor_to_depth(b, lhs, keep), freegroup::compress_tensor_to_depth(b, rhs, keep));
  }
  r.values["fgDepth"] = depth;
  r.values["leibnizPairs"] = cfg.samples;
  r.values["rankMismatches"] = rankMismatches;
  r.values["maxGeneratorNorm"] = maxNorm;
  agree.finish(r, cfg);
  r.mode = agree.exact ? "exact" : "float";
  return r;
}

CheckReport search_min(const RunConfig& cfg, const FockOperators& f) {
  CheckReport r;
  r.mode = "float";
  search::SearchOptions o;
  o.trials = cfg.searchTrials;
  o.restarts = cfg.searchRestarts;
  o.sweeps = cfg.searchSweeps;
  o.lineSearchSteps = cfg.searchSteps;
  o.seed = cfg.seed;
  o.tol = cfg.normTol;
  o.threads = cfg.threads;
  const auto rep = search::minimize_norm(f, o);
  r.params.margin = rep.degree + 2;
  r.relation = "<=";
  r.lhs = {"bound", rep.bound, false};
  r.rhs = {"bestValue", rep.bestValue, false};
  r.values["bestValue"] = rep.bestValue;
  r.values["bound"] = rep.bound;
  r.values["margin"] = rep.margin;
  r.values["sanityFloor"] = rep.sanityFloor;
  r.values["derivationResidual"] = rep.derivationResidual;
  r.values["degree"] = rep.degree;
  r.values["trials"] = rep.trials;
  r.values["bestTrial"] = rep.bestTrial;
  r.values["evaluations"] = static_cast<double>(rep.evaluations);
  r.pass = rep.bestValue >= rep.bound - cfg.tolerance && rep.bestValue >= rep.sanityFloor - cfg.tolerance &&
           rep.derivationResidual <= cfg.tolerance;
  return r;
}

using CheckFn = std::function<CheckReport(const RunConfig&, const FockOperators&)>;

const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> table{
      {"commutator-table", commutator_table},
      {"delta-generator", delta_generator},
      {"s-norm", s_norm},
      {"chain-t0", chain_t0},
      {"leibniz", [](const RunConfig& c, const FockOperators& f) { return polynomial_identity(c, f, derivation::leibniz_check); }},
      {"u-mult", [](const RunConfig& c, const FockOperators& f) { return polynomial_identity(c, f, derivation::u_multiplicativity_check); }},
      {"u-norm-sample", [](const RunConfig& c, const FockOperators& f) { return cb_sample(c, f, derivation::CbMap::u, 1, 3.0); }},
      {"cb-delta-sample", [](const RunConfig& c, const FockOperators& f) { return cb_sample(c, f, derivation::CbMap::delta, 2, 2.0); }},
      {"generation-rank", generation_rank},
      {"trace-identity", trace_identity},
      {"freegroup-split", freegroup_split},
      {"freegroup-delta", freegroup_delta},
      {"search-min", search_min},
  };
  return table;
}

}  // namespace

int freegroup_depth(int n, int d, long long dimCap) {
  int depth = 1;
  for (int k = 2; k <= d; ++k) {
    const long long dim = freegroup::reduced_word_count(n, k);
    if (dim * dim > dimCap) break;
    depth = k;
  }
  return depth;
}

CheckReport run_check(const std::string& name, const RunConfig& cfg, const FockOperators& fock) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown check '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  CheckReport r;
  try {
    r = it->second(cfg, fock);
  } catch (const std::exception& e) {
    r = CheckReport{};
    r.mode = "none";
    r.relation = "==";
    r.pass = false;
    r.error = e.what();
  }
  r.checkName = name;
  r.params.n = cfg.n;
  r.params.d = cfg.d;
  r.params.tol = cfg.tolerance;
  r.params.seed = cfg.seed;
  r.wallMillis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckReport> run_checks(const RunConfig& cfg) {
  require_valid(cfg);
  const auto names = resolve_checks(cfg);
  const FockOperators fock{fock::FockBasis(cfg.n, cfg.d)};
  std::vector<CheckReport> out(names.size());
  numkit::parallel_for(names.size(), cfg.threads, [&](std::size_t i) { out[i] = run_check(names[i], cfg, fock); });
  return out;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

}  // namespace fockcheck::cli
