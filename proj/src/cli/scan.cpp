#include "fockcheck/cli/scan.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fockcheck/cli/report.hpp"
#include "fockcheck/derivation/derivation.hpp"
#include "fockcheck/numkit/norm.hpp"
#include "fockcheck/numkit/parallel.hpp"
#include "fockcheck/numkit/seed.hpp"
#include "fockcheck/search/search.hpp"

namespace fockcheck::cli {

Range parse_range(const std::string& text) {
  const auto sep = text.find("..");
  try {
    std::size_t used = 0;
    if (sep == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, sep), b = text.substr(sep + 2);
    Range r{std::stoi(a, &used), 0};
    if (used != a.size()) throw std::invalid_argument(text);
    r.hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error&) {
    throw ConfigError("malformed range '" + text + "' (expected a..b or a single integer)");
  }
}

namespace {

ScanRow scan_cell(const RunConfig& cfg, int n, int d) {
  const fock::FockOperators f{fock::FockBasis(n, d)};
  numkit::NormOptions norm;
  norm.tol = cfg.normTol;
  norm.seed = numkit::derive_seed(cfg.seed, 0x6e6f726dULL);
  const auto chain = derivation::chain_eval<numkit::Exact>(f, derivation::canonical_T0(f), cfg.tolerance, norm);
  search::SearchOptions o;
  o.trials = cfg.searchTrials;
  o.restarts = cfg.searchRestarts;
  o.sweeps = cfg.searchSweeps;
  o.lineSearchSteps = cfg.searchSteps;
  o.seed = cfg.seed;
  o.tol = cfg.normTol;
  const auto found = search::minimize_norm(f, o);
  ScanRow row;
  row.n = n;
  row.d = d;
  row.normS = numkit::spectral_norm(derivation::build_S(f), norm).value;
  row.normT0 = chain.tNorm;
  row.rowNorm = chain.rowNorm;
  row.colNorm = chain.colNorm;
  row.t1Norm = chain.t1Norm;
  row.sumOfRoots = chain.sumOfRoots;
  row.sqrtN = chain.sqrtN;
  row.searchMin = found.bestValue;
  row.bound = found.bound;
  row.condBound = derivation::similarity_bound(chain).conditionNumberBound;
  row.pass = chain.inequalitiesHold && chain.derivationHolds && row.normS <= 2.0 + cfg.tolerance &&
             row.searchMin >= row.bound - cfg.tolerance;
  return row;
}

}  // namespace

std::vector<ScanRow> scan(const RunConfig& cfg, Range nRange, Range dRange) {
  std::vector<std::string> problems = validate(cfg);
  // n and d come from the ranges, so drop complaints about the single-cell values
  std::erase_if(problems, [](const std::string& p) {
    return p.starts_with("n must") || p.starts_with("depth must") || p.starts_with("tensor-square");
  });
  if (nRange.lo < 1 || nRange.hi < nRange.lo) problems.push_back("n-range must satisfy 1 <= lo <= hi");
  if (dRange.lo < 3 || dRange.hi < dRange.lo) problems.push_back("d-range must satisfy 3 <= lo <= hi");
  std::vector<std::pair<int, int>> cells;
  if (problems.empty()) {
    for (int n = nRange.lo; n <= nRange.hi; ++n)
      for (int d = dRange.lo; d <= dRange.hi; ++d) {
        const long long dim = fock_dim(n, d);
        if (dim > 3037000499LL || dim * dim > cfg.dimCap)
          problems.push_back("cell n=" + std::to_string(n) + ", d=" + std::to_string(d) + " has tensor-square dimension " +
                             std::to_string(dim) + "^2 above dim-cap " + std::to_string(cfg.dimCap));
        cells.emplace_back(n, d);
      }
  }
  if (!problems.empty()) {
    std::string msg = "invalid scan configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
  std::vector<ScanRow> rows(cells.size());
  numkit::parallel_for(cells.size(), cfg.threads, [&](std::size_t i) { rows[i] = scan_cell(cfg, cells[i].first, cells[i].second); });
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << kScanHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.d;
    for (const double v : {r.normS, r.normT0, r.rowNorm, r.colNorm, r.t1Norm, r.sumOfRoots, r.sqrtN, r.searchMin,
                           r.bound, r.condBound})
      os << ',' << format_number(v);
    os << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string scan_to_json(const std::vector<ScanRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"schemaVersion", kSchemaVersion}, {"n", r.n}, {"d", r.d}, {"normS", r.normS}, {"normT0", r.normT0},
                   {"rowNorm", r.rowNorm}, {"colNorm", r.colNorm}, {"t1Norm", r.t1Norm}, {"sumOfRoots", r.sumOfRoots},
                   {"sqrtN", r.sqrtN}, {"searchMin", r.searchMin}, {"bound", r.bound}, {"condBound", r.condBound},
                   {"pass", r.pass}});
  return arr.dump(2) + "\n";
}

}  // namespace fockcheck::cli
