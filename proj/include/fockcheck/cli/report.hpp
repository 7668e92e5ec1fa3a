#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fockcheck::cli {

inline constexpr int kSchemaVersion = 1;

struct CheckParams {
  int n = 0;
  int d = 0;
  int margin = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool operator==(const CheckParams&) const = default;
};

/// One side of the check's stated relation: the quantity compared, its
/// value and whether it was computed in exact arithmetic.
struct Side {
  std::string quantity;
  double value = 0.0;
  bool exact = false;
  bool operator==(const Side&) const = default;
};

struct CheckReport {
  std::string checkName;
  CheckParams params;
  std::string mode;
  /// "==", "<=" or ">="
  std::string relation;
  Side lhs;
  Side rhs;
  std::map<std::string, double> values;
  bool pass = false;
  long long wallMillis = 0;
  std::optional<std::string> error;
  bool operator==(const CheckReport&) const = default;
};

nlohmann::ordered_json to_json(const CheckReport& r, bool withWall = true);
CheckReport report_from_json(const nlohmann::ordered_json& j);

/// JSON array, two-space indented, trailing newline.
std::string reports_to_json(const std::vector<CheckReport>& reports, bool withWall = true);
std::vector<CheckReport> reports_from_json(const std::string& text);

/// One row per report; values flattened as name=value pairs separated by ';'.
std::string reports_to_csv(const std::vector<CheckReport>& reports, bool withWall = true);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

}  // namespace fockcheck::cli
