#pragma once

#include <string>
#include <vector>

#include "fockcheck/cli/config.hpp"

namespace fockcheck::cli {

struct Range {
  int lo = 0;
  int hi = 0;
};

/// "a..b" or a single integer.
Range parse_range(const std::string& text);

struct ScanRow {
  int n = 0;
  int d = 0;
  double normS = 0.0;
  double normT0 = 0.0;
  double rowNorm = 0.0;
  double colNorm = 0.0;
  double t1Norm = 0.0;
  double sumOfRoots = 0.0;
  double sqrtN = 0.0;
  double searchMin = 0.0;
  double bound = 0.0;      // sqrt(n)/4
  double condBound = 0.0;  // n^{1/4}/2
  bool pass = false;
};

/// Every grid cell must fit cfg.dimCap; problems are aggregated into one
/// ConfigError. Rows come back ordered by n, then d.
std::vector<ScanRow> scan(const RunConfig& cfg, Range nRange, Range dRange);

inline constexpr const char* kScanHeader =
    "n,d,normS,normT0,rowNorm,colNorm,t1Norm,sumOfRoots,sqrtN,searchMin,bound,condBound,pass";

std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string scan_to_json(const std::vector<ScanRow>& rows);

}  // namespace fockcheck::cli
