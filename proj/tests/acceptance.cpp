// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fockcheck/cli/checks.hpp"
#include "fockcheck/cli/report.hpp"
#include "fockcheck/derivation/derivation.hpp"
#include "fockcheck/freegroup/freegroup.hpp"
#include "fockcheck/numkit/norm.hpp"
#include "fockcheck/numkit/seed.hpp"
#include "fockcheck/search/search.hpp"

using namespace fockcheck;
using derivation::CbMap;
using fock::FockBasis;
using fock::FockOperators;
using fock::NcPoly;
using numkit::Exact;
using numkit::ExactOp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome commutator_table() {
  const auto t0 = Clock::now();
  bool literal = true, negated = true;
  for (int n = 1; n <= 4; ++n)
    for (int d = 3; d <= 5; ++d) {
      const FockOperators f{FockBasis(n, d)};
      const auto vac = fock::vacuum_projection(f.basis);
      const ExactOp zero(f.dim(), f.dim());
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          const auto rt = f.right[j].transpose();
          const bool z1 = numkit::is_zero(fock::compress_to_depth(f.basis, numkit::commutator(f.left[k], f.right[j]), d - 1));
          const bool z2 = numkit::is_zero(
              fock::compress_to_depth(f.basis, numkit::commutator(f.left[k].transpose(), rt), d - 1));
          const auto c = fock::compress_to_depth(f.basis, numkit::commutator(f.left[k], rt), d - 1);
          const auto pk = fock::compress_to_depth(f.basis, k == j ? vac : zero, d - 1);
          literal = literal && z1 && z2 && numkit::exact_eq(c, pk);
          negated = negated && z1 && z2 && numkit::exact_eq(c, numkit::scale(pk, Exact{-1}));
        }
    }
  const double s = seconds_since(t0);
  return {literal && s < 10.0, std::string("[l_k, r_j^T] = delta_kj P_Omega ") + (literal ? "holds" : "fails") +
                                    "; with -P_Omega " + (negated ? "holds exactly" : "fails") + "; " +
                                    fmt("%.2f s", s)};
}

Outcome delta_generators() {
  const auto t0 = Clock::now();
  bool literal = true, negated = true;
  for (int n = 1; n <= 3; ++n)
    for (int d = 3; d <= 5; ++d) {
      const FockOperators f{FockBasis(n, d)};
      const auto vac = fock::vacuum_projection(f.basis);
      for (int k = 0; k < n; ++k) {
        const auto lhs = fock::compress_tensor_to_depth(f.basis, derivation::delta(f, f.x[k]), d - 2);
        const auto rhs = fock::compress_tensor_to_depth(f.basis, numkit::kron(vac, f.x[k]), d - 2);
        literal = literal && numkit::exact_eq(lhs, rhs);
        negated = negated && numkit::exact_eq(lhs, numkit::scale(rhs, Exact{-1}));
      }
    }
  const double s = seconds_since(t0);
  return {literal && s < 30.0, std::string("delta(x_k) = P_Omega (x) x_k ") + (literal ? "holds" : "fails") +
                                    "; with -P_Omega " + (negated ? "holds exactly" : "fails") + "; " +
                                    fmt("%.2f s", s)};
}

Outcome s_bounds() {
  bool ok = true;
  double worst = 0.0;
  int cells = 0;
  for (int n = 1; n <= 4; ++n)
    for (int d = 3; d <= 5; ++d) {
      const long long dim = FockBasis(n, d).dim();
      if (dim * dim > 200000) continue;
      const FockOperators f{FockBasis(n, d)};
      numkit::NormOptions o;
      o.tol = 1e-10;
      const auto est = numkit::spectral_norm(derivation::build_S(f), o);
      worst = std::max(worst, est.value);
      ExactOp rows(f.dim(), f.dim());
      for (const auto& l : f.left) rows = numkit::add(rows, numkit::multiply(l, l.transpose()));
      ok = ok && est.value <= 2.0 + 1e-9 && numkit::is_diagonal(rows) && numkit::max_abs(rows) == 1.0;
      ++cells;
    }
  return {ok, std::to_string(cells) + " truncations, max ||S|| = " + fmt("%.10f", worst) +
                  ", ||sum l_j l_j^T|| = 1 by diagonal inspection"};
}

Outcome chain_t0() {
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 5; ++n) {
    const FockOperators f{FockBasis(n, 4)};
    const auto t0 = derivation::canonical_T0(f);
    const auto z = derivation::extract_z<Exact>(f, t0);
    bool zIsRt = true;
    for (int j = 0; j < n; ++j) zIsRt = zIsRt && numkit::exact_eq(z.z[j], f.right[j].transpose());
    const auto rep = derivation::chain_eval<Exact>(f, t0, 1e-8);
    bool margins = rep.firstInequality.margin >= -1e-8;
    for (const auto& l : rep.links) margins = margins && l.margin >= -1e-8;
    ExactOp zzT(f.dim(), f.dim()), zTz(f.dim(), f.dim());
    for (const auto& zj : z.z) {
      zzT = numkit::add(zzT, numkit::multiply(zj, zj.transpose()));
      zTz = numkit::add(zTz, numkit::multiply(zj.transpose(), zj));
    }
    const bool exactSums = z.quadraticSumsDiagonal && numkit::is_diagonal(zzT) && numkit::is_diagonal(zTz) &&
                           numkit::max_abs(zzT) == n && numkit::max_abs(zTz) == 1.0;
    ok = ok && zIsRt && exactSums && margins && rep.inequalitiesHold && rep.derivationHolds;
    detail += " n=" + std::to_string(n) + ":" + fmt("%.4f", rep.sumOfRoots) + "<=" + fmt("%.4f", 2 * rep.t1Norm) +
              "<=" + fmt("%.4f", 4 * rep.tNorm);
  }
  return {ok, "||sum z z^T|| = n, ||sum z^T z|| = 1, z_j = r_j^T extracted; sumOfRoots<=2||T1||<=4||T||:" + detail};
}

Outcome leibniz_u() {
  const FockOperators f{FockBasis(2, 6)};
  int leibnizFail = 0, uFail = 0;
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng(numkit::derive_seed(2024, i));
    const auto p = fock::random_ncpoly(rng, {2, 2, 3, 3});
    const auto q = fock::random_ncpoly(rng, {2, 2, 3, 3});
    if (!derivation::leibniz_check(f, p, q)) ++leibnizFail;
    if (!derivation::u_multiplicativity_check(f, p, q)) ++uFail;
  }
  return {leibnizFail == 0 && uFail == 0, "200 pairs at n=2, d=6: " + std::to_string(leibnizFail) +
                                              " Leibniz failures, " + std::to_string(uFail) + " u failures"};
}

Outcome cb_sampling() {
  const FockOperators f{FockBasis(2, 5)};
  derivation::CbSampleOptions o;
  o.norm.force_method = numkit::NormMethod::lanczos;
  o.norm.tol = 1e-10;
  double dMax = 0.0, uMax = 0.0;
  std::string detail;
  for (int k = 1; k <= 3; ++k) {
    const auto d = derivation::cb_lower_sample(f, CbMap::delta, k, 100, 7000 + k, o);
    const auto u = derivation::cb_lower_sample(f, CbMap::u, k, 100, 8000 + k, o);
    dMax = std::max(dMax, d.maxRatio);
    uMax = std::max(uMax, u.maxRatio);
    detail += " k=" + std::to_string(k) + ": delta " + fmt("%.4f", d.maxRatio) + ", u " + fmt("%.4f", u.maxRatio) + ";";
  }
  return {dMax <= 2.05 && uMax <= 3.05, "100 trials each at n=2, d=5;" + detail};
}

Outcome generation_rank() {
  const auto a = derivation::generation_rank(FockOperators{FockBasis(2, 3)}, 1, 1);
  const auto b = derivation::generation_rank(FockOperators{FockBasis(3, 4)}, 2, 2);
  return {a.rank == 9 && b.rank == 169,
          "n=2,wordLen=1,margin=1 -> " + std::to_string(a.rank) + "; n=3,wordLen=2,margin=2 -> " + std::to_string(b.rank)};
}

Outcome search_floor() {
  bool ok = true;
  std::string detail;
  const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int n = 1; n <= 4; ++n) {
    const FockOperators f{FockBasis(n, 3)};
    search::SearchOptions o;
    o.trials = 500;
    o.threads = threads;
    const auto r = search::minimize_norm(f, o);
    ok = ok && r.bestValue >= r.bound - 1e-9 && r.margin == r.bestValue - r.bound;
    detail += " n=" + std::to_string(n) + ": best " + fmt("%.6f", r.bestValue) + " bound " + fmt("%.4f", r.bound) +
              " margin " + fmt("%.4f", r.margin) + ";";
  }
  return {ok, "500 trials, d=3;" + detail};
}

Outcome free_group() {
  bool counts = true, split = true, sums = true;
  for (int n = 1; n <= 3; ++n)
    for (int d = 1; d <= 4; ++d) {
      long long expected = 1, level = 2LL * n;
      for (int k = 1; k <= d; ++k, level *= 2LL * n - 1) expected += level;
      const freegroup::FGBasis b(n, d);
      counts = counts && b.dim() == expected;
      for (int j = 1; j <= n; ++j) {
        const auto s = freegroup::haagerup_split(b, j);
        split = split && numkit::exact_eq(numkit::add(s.increasing, s.decreasing), freegroup::right_regular(b, j));
      }
      const auto q = freegroup::split_quadratic_sums(b);
      sums = sums && q[0].diagonal && q[0].boundedByIdentity && q[1].diagonal && q[1].boundedByIdentity;
    }
  // trace identity ||w Omega|| = ||w^T Omega|| for random y-words
  const FockOperators f{FockBasis(3, 5)};
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(numkit::derive_seed(99, i));
    std::uniform_int_distribution<int> len(1, 5), letter(0, 2);
    std::vector<int> w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = letter(rng);
    auto norm2 = [&](const std::vector<int>& word) {
      std::vector<Exact> v(static_cast<std::size_t>(f.dim()), 0);
      v[0] = 1;
      for (auto it = word.rbegin(); it != word.rend(); ++it) v = numkit::apply<Exact>(f.y[*it], v);
      Exact s = 0;
      for (Exact c : v) s += c * c;
      return s;
    };
    if (norm2(w) != norm2(std::vector<int>(w.rbegin(), w.rend()))) ++mismatches;
  }
  return {counts && split && sums && mismatches == 0,
          std::string("counts ") + (counts ? "match" : "differ") + ", a_j + b_j = rho(g_j) " + (split ? "exact" : "fails") +
              ", disjoint quadratic sums <= I " + (sums ? "exact" : "fail") + ", trace identity mismatches " +
              std::to_string(mismatches) + "/100"};
}

Outcome performance() {
  cli::RunConfig cfg;
  cfg.n = 3;
  cfg.d = 5;
  cfg.threads = 1;
  const auto t0 = Clock::now();
  const auto reports = cli::run_checks(cfg);
  const double suite = seconds_since(t0);

  const FockOperators f{FockBasis(3, 5)};
  numkit::NormOptions o;
  o.tol = 1e-10;
  o.force_method = numkit::NormMethod::power_iteration;
  const auto t1 = Clock::now();
  const auto est = numkit::spectral_norm(derivation::build_S(f), o);
  const double power = seconds_since(t1);
  const bool suitePass = cli::all_pass(reports);
  return {suite <= 120.0 && est.residual <= 1e-10 && power <= 60.0 && suitePass,
          "default suite at n=3, d=5: " + fmt("%.1f s", suite) + (suitePass ? " (all checks pass)" : " (check failures)") +
              "; power iteration ||S|| residual " + fmt("%.2e", est.residual) + " in " + fmt("%.2f s", power)};
}

Outcome determinism() {
  cli::RunConfig cfg;
  const auto a = cli::reports_to_json(cli::run_checks(cfg), false);
  const auto b = cli::reports_to_json(cli::run_checks(cfg), false);
  cfg.threads = 4;
  const auto c = cli::reports_to_json(cli::run_checks(cfg), false);
  return {a == b && a == c, "n=2, d=4 full suite: two serial runs and a 4-thread run " +
                                std::string(a == b && a == c ? "byte-identical" : "differ") + " (" +
                                std::to_string(a.size()) + " bytes)"};
}

}  // namespace

// Arguments, if any, select criteria by number.
int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"commutator table", commutator_table},
      {"delta on generators", delta_generators},
      {"S bounds", s_bounds},
      {"chain on T0", chain_t0},
      {"Leibniz and u-multiplicativity", leibniz_u},
      {"cb sampling", cb_sampling},
      {"generation rank", generation_rank},
      {"search floor", search_floor},
      {"free group", free_group},
      {"performance", performance},
      {"determinism", determinism},
  };
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    const int k = std::atoi(argv[a]);
    if (k >= 1 && k <= static_cast<int>(criteria.size())) selected[static_cast<std::size_t>(k - 1)] = true;
  }
  int failures = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    ++ran;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%d criteria pass\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
