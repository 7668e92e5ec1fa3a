#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fockcheck::cli {

/// automatic: exact for identity checks, float for norm checks.
enum class ScalarMode { automatic, exact, real };
enum class Format { json, csv };

std::string_view to_string(ScalarMode m);
std::string_view to_string(Format f);
ScalarMode parse_mode(std::string_view s);
Format parse_format(std::string_view s);

struct RunConfig {
  int n = 2;
  int d = 4;
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
  std::vector<std::string> checks{"all"};
  ScalarMode mode = ScalarMode::automatic;
  std::string outputPath;
  Format format = Format::json;
  int threads = 1;

  /// Upper bound on the dimension of any tensor-square operator.
  long long dimCap = 200000;
  /// Convergence tolerance handed to the norm estimators.
  double normTol = 1e-10;
  /// Random trials in the sampling checks (leibniz, u-mult, cb samples, products).
  int samples = 8;
  int traceWords = 100;
  int searchTrials = 8;
  int searchRestarts = 1;
  int searchSweeps = 1;
  int searchSteps = 10;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Check names in declaration order.
const std::vector<std::string>& check_names();

/// Every problem with the configuration, one message each.
std::vector<std::string> validate(const RunConfig& cfg);

/// Throws ConfigError carrying all problems in one message.
void require_valid(const RunConfig& cfg);

/// Expands "all" and orders the selection by declaration order.
std::vector<std::string> resolve_checks(const RunConfig& cfg);

/// (letters^(d+1) - 1) / (letters - 1), or d+1 for one letter.
long long fock_dim(int n, int d);

}  // namespace fockcheck::cli
