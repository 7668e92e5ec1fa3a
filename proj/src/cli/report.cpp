#include "fockcheck/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fockcheck::cli {

using nlohmann::ordered_json;

namespace {

ordered_json side_json(const Side& s) { return {{"quantity", s.quantity}, {"value", s.value}, {"exact", s.exact}}; }

Side side_from(const ordered_json& j) { return {j.at("quantity").get<std::string>(), j.at("value").get<double>(), j.at("exact").get<bool>()}; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const CheckReport& r, bool withWall) {
  ordered_json values = ordered_json::object();
  for (const auto& [k, v] : r.values) values[k] = v;
  ordered_json j{{"schemaVersion", kSchemaVersion},
                 {"checkName", r.checkName},
                 {"params",
                  {{"n", r.params.n}, {"d", r.params.d}, {"margin", r.params.margin}, {"tol", r.params.tol},
                   {"seed", r.params.seed}}},
                 {"mode", r.mode},
                 {"relation", r.relation},
                 {"lhs", side_json(r.lhs)},
                 {"rhs", side_json(r.rhs)},
                 {"values", values},
                 {"pass", r.pass}};
  if (withWall) j["wallMillis"] = r.wallMillis;
  if (r.error) j["error"] = *r.error;
  return j;
}

CheckReport report_from_json(const ordered_json& j) {
  if (j.at("schemaVersion").get<int>() != kSchemaVersion)
    throw std::runtime_error("unsupported report schemaVersion " + j.at("schemaVersion").dump());
  CheckReport r;
  r.checkName = j.at("checkName").get<std::string>();
  const auto& p = j.at("params");
  r.params = {p.at("n").get<int>(), p.at("d").get<int>(), p.at("margin").get<int>(), p.at("tol").get<double>(),
              p.at("seed").get<std::uint64_t>()};
  r.mode = j.at("mode").get<std::string>();
  r.relation = j.at("relation").get<std::string>();
  r.lhs = side_from(j.at("lhs"));
  r.rhs = side_from(j.at("rhs"));
  for (const auto& [k, v] : j.at("values").items()) r.values[k] = v.get<double>();
  r.pass = j.at("pass").get<bool>();
  r.wallMillis = j.value("wallMillis", 0LL);
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

std::string reports_to_json(const std::vector<CheckReport>& reports, bool withWall) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r, withWall));
  return arr.dump(2) + "\n";
}

std::vector<CheckReport> reports_from_json(const std::string& text) {
  const auto arr = ordered_json::parse(text);
  if (!arr.is_array()) throw std::runtime_error("report file is not a JSON array");
  std::vector<CheckReport> out;
  for (const auto& j : arr) out.push_back(report_from_json(j));
  return out;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports, bool withWall) {
  std::ostringstream os;
  os << "schemaVersion,checkName,n,d,margin,tol,seed,mode,relation,lhsQuantity,lhs,rhsQuantity,rhs,pass";
  if (withWall) os << ",wallMillis";
  os << ",error,values\n";
  for (const auto& r : reports) {
    std::string values;
    for (const auto& [k, v] : r.values) values += (values.empty() ? "" : ";") + k + "=" + format_number(v);
    os << kSchemaVersion << ',' << csv_field(r.checkName) << ',' << r.params.n << ',' << r.params.d << ','
       << r.params.margin << ',' << format_number(r.params.tol) << ',' << r.params.seed << ',' << r.mode << ','
       << r.relation << ',' << csv_field(r.lhs.quantity) << ',' << format_number(r.lhs.value) << ','
       << csv_field(r.rhs.quantity) << ',' << format_number(r.rhs.value) << ',' << (r.pass ? "true" : "false");
    if (withWall) os << ',' << r.wallMillis;
    os << ',' << csv_field(r.error.value_or("")) << ',' << csv_field(values) << '\n';
  }
  return os.str();
}

}  // namespace fockcheck::cli
