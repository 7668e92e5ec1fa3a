#pragma once

#include <string>
#include <vector>

#include "fockcheck/cli/config.hpp"
#include "fockcheck/cli/report.hpp"
#include "fockcheck/fock/operators.hpp"

namespace fockcheck::cli {

/// Runs one named check against prebuilt operators. Exceptions (overflow,
/// margin violations) are caught and recorded in the report's error field.
CheckReport run_check(const std::string& name, const RunConfig& cfg, const fock::FockOperators& fock);

/// Validates cfg, builds the operators once and runs the selected checks on
/// cfg.threads workers. Reports come back in declaration order.
std::vector<CheckReport> run_checks(const RunConfig& cfg);

bool all_pass(const std::vector<CheckReport>& reports);

/// Largest free-group truncation depth <= d whose tensor square fits dimCap.
int freegroup_depth(int n, int d, long long dimCap);

}  // namespace fockcheck::cli
