#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fockcheck/cli/app.hpp"
#include "fockcheck/cli/checks.hpp"
#include "fockcheck/cli/config.hpp"
#include "fockcheck/cli/report.hpp"
#include "fockcheck/cli/scan.hpp"

using namespace fockcheck::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_app(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fockcheck_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Config, DefaultsAreValid) {
  const RunConfig cfg;
  EXPECT_TRUE(validate(cfg).empty());
  EXPECT_EQ(cfg.n, 2);
  EXPECT_EQ(cfg.d, 4);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_DOUBLE_EQ(cfg.tolerance, 1e-9);
  EXPECT_EQ(resolve_checks(cfg), check_names());
}

TEST(Config, ProblemsAreAggregated) {
  RunConfig cfg;
  cfg.n = 0;
  cfg.tolerance = -1;
  cfg.threads = 0;
  cfg.checks = {"s-norm", "bogus"};
  EXPECT_EQ(validate(cfg).size(), 4u);
  try {
    require_valid(cfg);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("n must"), std::string::npos);
    EXPECT_NE(msg.find("tol must"), std::string::npos);
    EXPECT_NE(msg.find("threads"), std::string::npos);
    EXPECT_NE(msg.find("bogus"), std::string::npos);
  }
}

TEST(Config, DimensionCap) {
  RunConfig cfg;
  cfg.n = 3;
  cfg.d = 5;
  EXPECT_TRUE(validate(cfg).empty());  // 364^2 = 132496
  cfg.n = 4;
  EXPECT_EQ(validate(cfg).size(), 1u);
  cfg.dimCap = 10;
  cfg.n = 2;
  cfg.d = 3;
  EXPECT_EQ(validate(cfg).size(), 1u);
}

TEST(Config, ResolveKeepsDeclarationOrder) {
  RunConfig cfg;
  cfg.checks = {"search-min", "s-norm"};
  EXPECT_EQ(resolve_checks(cfg), (std::vector<std::string>{"s-norm", "search-min"}));
}

TEST(Config, ModeAndFormatParsing) {
  EXPECT_EQ(parse_mode("float"), ScalarMode::real);
  EXPECT_EQ(to_string(parse_mode("exact")), "exact");
  EXPECT_THROW(parse_mode("double"), ConfigError);
  EXPECT_EQ(parse_format("csv"), Format::csv);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Range, Parsing) {
  EXPECT_EQ(parse_range("2..5").lo, 2);
  EXPECT_EQ(parse_range("2..5").hi, 5);
  EXPECT_EQ(parse_range("3").hi, 3);
  EXPECT_THROW(parse_range("2..x"), ConfigError);
  EXPECT_THROW(parse_range("a"), ConfigError);
}

TEST(Report, JsonRoundTrip) {
  CheckReport r;
  r.checkName = "s-norm";
  r.params = {2, 4, 0, 1e-9, 42};
  r.mode = "float";
  r.relation = "<=";
  r.lhs = {"normS", 1.7320508075688772, false};
  r.rhs = {"2", 2.0, true};
  r.values = {{"normS", 1.7320508075688772}, {"residual", 3.1e-17}, {"tiny", 5e-324}};
  r.pass = true;
  r.wallMillis = 12;
  CheckReport e = r;
  e.checkName = "leibniz";
  e.pass = false;
  e.error = "exact integer overflow in mul";
  const std::vector<CheckReport> in{r, e};
  EXPECT_EQ(reports_from_json(reports_to_json(in)), in);
  const auto noWall = reports_from_json(reports_to_json(in, false));
  EXPECT_EQ(noWall[0].wallMillis, 0);
}

TEST(Report, RejectsOtherSchema) {
  EXPECT_THROW(reports_from_json(R"([{"schemaVersion": 99}])"), std::runtime_error);
}

TEST(Report, CsvHasOneRowPerReport) {
  CheckReport r;
  r.checkName = "x";
  r.values = {{"a", 1.5}, {"b", 2}};
  const auto csv = reports_to_csv({r, r});
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("a=1.5;b=2"), std::string::npos);
}

TEST(Report, NumberFormatRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.5006835144790001, 1e-300, -7.0}) EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(Checks, DeltaGeneratorPasses) {
  RunConfig cfg;
  cfg.checks = {"delta-generator"};
  const auto reports = run_checks(cfg);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].pass);
  EXPECT_EQ(reports[0].mode, "exact");
  EXPECT_EQ(reports[0].values.at("plusSignResidual"), 2.0);
}

TEST(Checks, SNormBelowTwo) {
  RunConfig cfg;
  cfg.checks = {"s-norm"};
  const auto r = run_checks(cfg).at(0);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.values.at("normS"), 2.0 + 1e-9);
}

TEST(Checks, ChainSumOfRootsAtFourLetters) {
  RunConfig cfg;
  cfg.n = 4;
  cfg.checks = {"chain-t0"};
  const auto r = run_checks(cfg).at(0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.values.at("sumOfRoots"), 3.0, 1e-9);
}

TEST(Checks, FloatModeIdentityChecks) {
  RunConfig cfg;
  cfg.mode = ScalarMode::real;
  cfg.checks = {"commutator-table", "trace-identity", "freegroup-split"};
  for (const auto& r : run_checks(cfg)) {
    EXPECT_TRUE(r.pass) << r.checkName;
    EXPECT_EQ(r.mode, "float") << r.checkName;
  }
}

TEST(Checks, ErrorIsReportedPerCheck) {
  RunConfig cfg;
  cfg.checks = {"freegroup-delta", "generation-rank"};
  cfg.dimCap = 16;  // Fock 4^2 fits, the free group stops at depth 1
  cfg.n = 1;
  cfg.d = 3;
  const auto reports = run_checks(cfg);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].checkName, "generation-rank");
  EXPECT_TRUE(reports[0].pass);
  EXPECT_FALSE(reports[1].pass);
  ASSERT_TRUE(reports[1].error.has_value());
  EXPECT_NE(reports[1].error->find("below 3"), std::string::npos);
}

TEST(Checks, ThreadedRunMatchesSerial) {
  RunConfig cfg;
  cfg.checks = {"commutator-table", "s-norm", "leibniz", "cb-delta-sample", "search-min"};
  const auto serial = run_checks(cfg);
  cfg.threads = 4;
  const auto threaded = run_checks(cfg);
  EXPECT_EQ(reports_to_json(serial, false), reports_to_json(threaded, false));
}

TEST(App, CheckExitCodesAndDeterminism) {
  const std::vector<std::string> args{"check", "--n", "2", "--depth", "3", "--checks",
                                      "commutator-table,chain-t0,u-norm-sample,search-min", "--no-wall"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto reports = reports_from_json(a.out);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].checkName, "commutator-table");
  EXPECT_EQ(reports[3].checkName, "search-min");
}

TEST(App, ConfigErrorsExitTwo) {
  const auto r = run({"check", "--n", "0", "--mode", "weird", "--checks", "nope"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("mode"), std::string::npos);
  EXPECT_NE(r.err.find("nope"), std::string::npos);
  EXPECT_NE(r.err.find("n must"), std::string::npos);
  EXPECT_EQ(run({"check", "--n", "abc"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check", "--n", "4", "--depth", "5"}).code, 2);
}

TEST(App, FailingCheckExitsOne) {
  // a zero dimension cap squeezes the free group below the depth the check needs
  const auto r = run({"check", "--n", "1", "--depth", "3", "--checks", "freegroup-delta", "--dim-cap", "16"});
  EXPECT_EQ(r.code, 1);
}

TEST(App, ConfigFileWithOverride) {
  const auto path = temp_file("cfg.toml");
  {
    std::ofstream f(path);
    f << "n = 3\ndepth = 3\nchecks = [\"s-norm\", \"trace-identity\"]\nformat = \"csv\"\n";
  }
  const auto r = run({"check", "--config", path.string(), "--depth", "4", "--no-wall"});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(",s-norm,3,4,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(",trace-identity,3,4,"), std::string::npos);
  EXPECT_EQ(r.out.find("chain-t0"), std::string::npos);
}

TEST(App, OutputFile) {
  const auto path = temp_file("out.json");
  const auto r = run({"check", "--checks", "s-norm", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::filesystem::remove(path);
  EXPECT_EQ(reports_from_json(ss.str()).size(), 1u);
}

TEST(App, ScanSingleCell) {
  const auto r = run({"scan", "--n-range", "1..1", "--d-range", "3..3", "--format", "csv", "--search-trials", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string header, row, extra;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_FALSE(std::getline(is, extra));
  EXPECT_EQ(header, kScanHeader);
  EXPECT_EQ(row.rfind("1,3,", 0), 0u);
  EXPECT_NE(row.find(",0.25,0.5,true"), std::string::npos) << row;
}

TEST(Scan, GridBoundsMonotone) {
  RunConfig cfg;
  cfg.searchTrials = 2;
  cfg.searchRestarts = 0;
  cfg.dimCap = 1000000;  // n=5, d=4 has a 781^2 tensor square
  const auto rows = scan(cfg, {2, 5}, {3, 4});
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i].bound, rows[i - 1].bound);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.pass) << r.n << "," << r.d;
    EXPECT_DOUBLE_EQ(r.bound, std::sqrt(r.n) / 4.0);
    EXPECT_DOUBLE_EQ(r.condBound, std::pow(r.n, 0.25) / 2.0);
  }
  EXPECT_DOUBLE_EQ(rows[4].bound, 0.5);
  EXPECT_THROW(scan(cfg, {2, 1}, {3, 3}), ConfigError);
  cfg.dimCap = 200000;
  EXPECT_THROW(scan(cfg, {4, 4}, {5, 5}), ConfigError);
}

TEST(App, SearchAndBasisSubcommands) {
  const auto s = run({"search", "--n", "1", "--depth", "3", "--trials", "10"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("\"bound\": 0.25"), std::string::npos);
  const auto b = run({"basis", "--n", "2", "--depth", "2", "--format", "csv"});
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(std::count(b.out.begin(), b.out.end(), '\n'), 8);
  const auto g = run({"basis", "--n", "2", "--depth", "1", "--free-group", "--format", "csv"});
  EXPECT_EQ(std::count(g.out.begin(), g.out.end(), '\n'), 6);
  EXPECT_EQ(run({"basis", "--n", "2", "--depth", "1"}).code, 2);
}
