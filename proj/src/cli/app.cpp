#include "fockcheck/cli/app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "fockcheck/cli/checks.hpp"
#include "fockcheck/cli/config.hpp"
#include "fockcheck/cli/report.hpp"
#include "fockcheck/cli/scan.hpp"
#include "fockcheck/fock/basis.hpp"
#include "fockcheck/freegroup/freegroup.hpp"
#include "fockcheck/search/search.hpp"

namespace fockcheck::cli {

namespace {

struct RawOptions {
  RunConfig cfg;
  std::string mode = "auto";
  std::string format = "json";
  bool noWall = false;
  std::string nRange;
  std::string dRange;
  search::SearchOptions search;
  bool freeGroup = false;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.outputPath.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.outputPath, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + cfg.outputPath + "'");
  f << text;
}

/// Parses mode/format and runs the common validation; all problems at once.
void finalize(RawOptions& o, bool validateCell) {
  std::vector<std::string> problems;
  try {
    o.cfg.mode = parse_mode(o.mode);
  } catch (const ConfigError& e) {
    problems.push_back(e.what());
  }
  try {
    o.cfg.format = parse_format(o.format);
  } catch (const ConfigError& e) {
    problems.push_back(e.what());
  }
  if (validateCell)
    for (auto& p : validate(o.cfg)) problems.push_back(std::move(p));
  if (problems.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& p : problems) msg += "\n  - " + p;
  throw ConfigError(msg);
}

int cmd_check(RawOptions& o, std::ostream& out, std::ostream& err) {
  finalize(o, true);
  const auto reports = run_checks(o.cfg);
  const bool wall = !o.noWall;
  emit(o.cfg, o.cfg.format == Format::json ? reports_to_json(reports, wall) : reports_to_csv(reports, wall), out);
  int passed = 0;
  for (const auto& r : reports) {
    passed += r.pass ? 1 : 0;
    if (!r.pass) err << "FAIL " << r.checkName << (r.error ? ": " + *r.error : std::string{}) << '\n';
  }
  err << passed << '/' << reports.size() << " checks passed\n";
  return all_pass(reports) ? 0 : 1;
}

int cmd_scan(RawOptions& o, std::ostream& out, std::ostream& err) {
  finalize(o, false);
  const Range n = o.nRange.empty() ? Range{o.cfg.n, o.cfg.n} : parse_range(o.nRange);
  const Range d = o.dRange.empty() ? Range{o.cfg.d, o.cfg.d} : parse_range(o.dRange);
  const auto rows = scan(o.cfg, n, d);
  emit(o.cfg, o.cfg.format == Format::json ? scan_to_json(rows) : scan_to_csv(rows), out);
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  err << rows.size() << " scan rows, " << (ok ? "all pass" : "failures present") << '\n';
  return ok ? 0 : 1;
}

int cmd_search(RawOptions& o, std::ostream& out, std::ostream& err) {
  finalize(o, true);
  const fock::FockOperators f{fock::FockBasis(o.cfg.n, o.cfg.d)};
  o.search.seed = o.cfg.seed;
  o.search.tol = o.cfg.normTol;
  o.search.threads = o.cfg.threads;
  search::SearchReport rep;
  try {
    rep = search::minimize_norm(f, o.search);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid configuration:\n  - ") + e.what());
  }
  const bool pass = rep.bestValue >= rep.bound - o.cfg.tolerance && rep.bestValue >= rep.sanityFloor - o.cfg.tolerance &&
                    rep.derivationResidual <= o.cfg.tolerance;
  if (o.cfg.format == Format::json) {
    nlohmann::ordered_json j{{"schemaVersion", kSchemaVersion},
                             {"n", rep.n},
                             {"d", rep.d},
                             {"trials", rep.trials},
                             {"restarts", rep.restarts},
                             {"degree", rep.degree},
                             {"seed", rep.seed},
                             {"bestValue", rep.bestValue},
                             {"bound", rep.bound},
                             {"margin", rep.margin},
                             {"bestCoefficients", rep.bestCoefficients},
                             {"bestTrial", rep.bestTrial},
                             {"sanityFloor", rep.sanityFloor},
                             {"derivationResidual", rep.derivationResidual},
                             {"evaluations", rep.evaluations},
                             {"pass", pass}};
    emit(o.cfg, j.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    os << "n,d,trials,restarts,degree,seed,bestValue,bound,margin,sanityFloor,derivationResidual,pass\n"
       << rep.n << ',' << rep.d << ',' << rep.trials << ',' << rep.restarts << ',' << rep.degree << ',' << rep.seed << ','
       << format_number(rep.bestValue) << ',' << format_number(rep.bound) << ',' << format_number(rep.margin) << ','
       << format_number(rep.sanityFloor) << ',' << format_number(rep.derivationResidual) << ','
       << (pass ? "true" : "false") << '\n';
    emit(o.cfg, os.str(), out);
  }
  err << "search minimum " << format_number(rep.bestValue) << " vs bound " << format_number(rep.bound) << '\n';
  return pass ? 0 : 1;
}

int cmd_basis(RawOptions& o, std::ostream& out, std::ostream&) {
  finalize(o, false);
  std::vector<std::pair<std::string, int>> words;
  try {
    if (o.freeGroup) {
      if (o.cfg.n >= 1 && o.cfg.d >= 1 && freegroup::reduced_word_count(o.cfg.n, std::min(o.cfg.d, 12)) > o.cfg.dimCap)
        throw std::length_error("free-group basis exceeds dim-cap");
      const freegroup::FGBasis b(o.cfg.n, o.cfg.d);
      for (numkit::Index i = 0; i < b.dim(); ++i)
        words.emplace_back(freegroup::to_string(b.word(i)), static_cast<int>(b.word(i).size()));
    } else {
      const fock::FockBasis b(o.cfg.n, o.cfg.d, static_cast<numkit::Index>(std::min<long long>(o.cfg.dimCap, 1 << 30)));
      for (numkit::Index i = 0; i < b.dim(); ++i) words.emplace_back(fock::to_string(b.word(i)), b.length(i));
    }
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("invalid configuration:\n  - ") + e.what());
  }
  if (o.cfg.format == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < words.size(); ++i)
      arr.push_back({{"index", i}, {"length", words[i].second}, {"word", words[i].first}});
    emit(o.cfg, arr.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    os << "index,length,word\n";
    for (std::size_t i = 0; i < words.size(); ++i) os << i << ',' << words[i].second << ',' << words[i].first << '\n';
    emit(o.cfg, os.str(), out);
  }
  return 0;
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fockcheck: operator checks on truncated Fock spaces and free groups"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key = value file mirroring the long option names");

  RawOptions o;
  auto& c = o.cfg;
  app.add_option("--n", c.n, "Number of free generators")->capture_default_str();
  app.add_option("--depth,-d", c.d, "Truncation depth")->capture_default_str();
  app.add_option("--tol", c.tolerance, "Comparison tolerance")->capture_default_str();
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--mode", o.mode, "auto, exact or float")->capture_default_str();
  app.add_option("--checks", c.checks, "Comma-separated check names or 'all'")->delimiter(',')->capture_default_str();
  app.add_option("--out", c.outputPath, "Output file (stdout when omitted)");
  app.add_option("--format", o.format, "json or csv")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  app.add_option("--dim-cap", c.dimCap, "Cap on tensor-square dimension")->capture_default_str();
  app.add_option("--norm-tol", c.normTol, "Norm-estimator convergence tolerance")->capture_default_str();
  app.add_option("--samples", c.samples, "Random trials per sampling check")->capture_default_str();
  app.add_option("--trace-words", c.traceWords, "Random y-words in trace-identity")->capture_default_str();
  app.add_option("--search-trials", c.searchTrials, "Search trials inside check/scan")->capture_default_str();
  app.add_option("--search-restarts", c.searchRestarts, "Refined candidates inside check/scan")->capture_default_str();
  app.add_option("--search-sweeps", c.searchSweeps, "Coordinate sweeps inside check/scan")->capture_default_str();
  app.add_option("--search-steps", c.searchSteps, "Golden-section steps inside check/scan")->capture_default_str();
  app.add_flag("--no-wall", o.noWall, "Omit wallMillis from check reports");

  auto* check = app.add_subcommand("check", "Run the check suite");
  auto* scanCmd = app.add_subcommand("scan", "Tabulate norms and bounds over an (n, d) grid");
  scanCmd->add_option("--n-range", o.nRange, "a..b (defaults to --n)");
  scanCmd->add_option("--d-range", o.dRange, "a..b (defaults to --depth)");
  auto* searchCmd = app.add_subcommand("search", "Minimize ||T0 + c (x) 1|| over the commutant family");
  searchCmd->add_option("--trials", o.search.trials, "Random trials")->capture_default_str();
  searchCmd->add_option("--restarts", o.search.restarts, "Candidates refined by coordinate descent")->capture_default_str();
  searchCmd->add_option("--sweeps", o.search.sweeps, "Coordinate sweeps per candidate")->capture_default_str();
  searchCmd->add_option("--steps", o.search.lineSearchSteps, "Golden-section steps per coordinate")->capture_default_str();
  searchCmd->add_option("--degree", o.search.degree, "y-word length (negative: floor(d/2)-1)")->capture_default_str();
  searchCmd->add_option("--bracket", o.search.bracket, "Line-search half-width")->capture_default_str();
  auto* basisCmd = app.add_subcommand("basis", "List the truncated basis words");
  basisCmd->add_flag("--free-group", o.freeGroup, "Reduced words of F_n instead of the Fock basis");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(o, out, err);
    if (scanCmd->parsed()) return cmd_scan(o, out, err);
    if (searchCmd->parsed()) return cmd_search(o, out, err);
    if (basisCmd->parsed()) return cmd_basis(o, out, err);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace fockcheck::cli
