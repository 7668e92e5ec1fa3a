#include "fockcheck/cli/config.hpp"

#include <algorithm>

namespace fockcheck::cli {

std::string_view to_string(ScalarMode m) {
  switch (m) {
    case ScalarMode::automatic: return "auto";
    case ScalarMode::exact: return "exact";
    case ScalarMode::real: return "float";
  }
  return "?";
}

std::string_view to_string(Format f) { return f == Format::json ? "json" : "csv"; }

ScalarMode parse_mode(std::string_view s) {
  if (s == "auto") return ScalarMode::automatic;
  if (s == "exact") return ScalarMode::exact;
  if (s == "float") return ScalarMode::real;
  throw ConfigError("unknown mode '" + std::string(s) + "' (expected auto, exact or float)");
}

Format parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw ConfigError("unknown format '" + std::string(s) + "' (expected json or csv)");
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "commutator-table", "delta-generator", "s-norm",         "chain-t0",        "leibniz",
      "u-mult",           "u-norm-sample",   "cb-delta-sample", "generation-rank", "trace-identity",
      "freegroup-split",  "freegroup-delta", "search-min"};
  return names;
}

long long fock_dim(int n, int d) {
  long long dim = 0, level = 1;
  for (int k = 0; k <= d; ++k) {
    dim += level;
    if (dim > (1LL << 40)) return dim;
    level *= n;
  }
  return dim;
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.n < 1) problems.push_back("n must be at least 1");
  if (cfg.d < 3) problems.push_back("depth must be at least 3");
  if (!(cfg.tolerance > 0.0)) problems.push_back("tol must be positive");
  if (!(cfg.normTol > 0.0)) problems.push_back("norm-tol must be positive");
  if (cfg.threads < 1) problems.push_back("threads must be at least 1");
  if (cfg.dimCap < 1) problems.push_back("dim-cap must be positive");
  if (cfg.samples < 1) problems.push_back("samples must be at least 1");
  if (cfg.traceWords < 1) problems.push_back("trace-words must be at least 1");
  if (cfg.searchTrials < 1) problems.push_back("search-trials must be at least 1");
  if (cfg.searchRestarts < 0) problems.push_back("search-restarts must be non-negative");
  if (cfg.searchSweeps < 0) problems.push_back("search-sweeps must be non-negative");
  if (cfg.searchSteps < 1) problems.push_back("search-steps must be at least 1");
  if (cfg.checks.empty()) problems.push_back("no checks selected");
  for (const auto& c : cfg.checks) {
    if (c == "all") continue;
    if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
      problems.push_back("unknown check '" + c + "'");
  }
  if (cfg.n >= 1 && cfg.d >= 0) {
    const long long dim = fock_dim(cfg.n, cfg.d);
    if (dim > 3037000499LL || dim * dim > cfg.dimCap)
      problems.push_back("tensor-square dimension " + std::to_string(dim) + "^2 at n=" + std::to_string(cfg.n) +
                         ", d=" + std::to_string(cfg.d) + " exceeds dim-cap " + std::to_string(cfg.dimCap));
  }
  return problems;
}

void require_valid(const RunConfig& cfg) {
  const auto problems = validate(cfg);
  if (problems.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& p : problems) msg += "\n  - " + p;
  throw ConfigError(msg);
}

std::vector<std::string> resolve_checks(const RunConfig& cfg) {
  const bool all = std::find(cfg.checks.begin(), cfg.checks.end(), "all") != cfg.checks.end();
  std::vector<std::string> out;
  for (const auto& name : check_names())
    if (all || std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end()) out.push_back(name);
  return out;
}

}  // namespace fockcheck::cli
