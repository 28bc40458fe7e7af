// kbsm: reduce expressions or diagram files to normal form, run the identity
// suites, fuzz the engines and print polynomial tables.
//
// Exit codes: 0 ok, 2 input or usage error, 3 reduction error, 4 a check failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kbsm/diagram.hpp"
#include "kbsm/error.hpp"
#include "kbsm/expr.hpp"
#include "kbsm/fuzz.hpp"
#include "kbsm/polyfam.hpp"
#include "kbsm/reduce.hpp"
#include "kbsm/states.hpp"
#include "kbsm/verify.hpp"

namespace {

using nlohmann::json;
using namespace kbsm;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kReductionError = 3;
constexpr int kCheckFailed = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpaceOptions {
  std::string space;
  std::vector<int> cs;
  std::vector<int> betas;
};

void add_space_flags(CLI::App* cmd, SpaceOptions& s) {
  cmd->add_option("--space", s.space, "annulus or fibered")->check(CLI::IsMember({"annulus", "fibered"}));
  cmd->add_option("--c", s.cs, "annulus basis index (repeatable)")->allow_extra_args(false);
  cmd->add_option("--beta", s.betas, "fibered torus parameter (repeatable)")->allow_extra_args(false);
}

// The one space selected by --space with its --c or --beta.
ReductionConfig single_space(const SpaceOptions& s) {
  if (s.space == "annulus") {
    if (s.cs.size() != 1) throw UsageError("--space annulus needs exactly one --c");
    return ReductionConfig::annulus(s.cs.front());
  }
  if (s.space == "fibered") {
    if (s.betas.size() != 1) throw UsageError("--space fibered needs exactly one --beta");
    return ReductionConfig::fibered(s.betas.front());
  }
  throw UsageError("--space is required");
}

// Spaces for fuzzing: the selection, or annulus(c=0) and fibered(beta=5).
std::vector<ReductionConfig> fuzz_spaces(const SpaceOptions& s) {
  std::vector<ReductionConfig> out;
  if (s.space.empty() && s.cs.empty() && s.betas.empty())
    return {ReductionConfig::annulus(0), ReductionConfig::fibered(5)};
  if (s.space != "fibered")
    for (int c : s.cs) out.push_back(ReductionConfig::annulus(c));
  if (s.space != "annulus")
    for (int b : s.betas) out.push_back(ReductionConfig::fibered(b));
  if (out.empty()) throw UsageError("--space " + s.space + " needs --" + (s.space == "fibered" ? "beta" : "c"));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_comments(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    out += line;
    out += '\n';
  }
  return out;
}

bool looks_like_diagram(const std::string& text) {
  std::istringstream in(strip_comments(text));
  std::string first;
  return (in >> first) && first == "strands";
}

json element_json(const ModuleElement& e) {
  json terms = json::array();
  for (const auto& [w, c] : e) terms.push_back({{"word", w.str()}, {"coefficient", c.str()}});
  return terms;
}

// ---- reduce ----------------------------------------------------------------

struct ReduceCmd {
  SpaceOptions space;
  std::string expr, in, format = "text", strategy = "right";
  std::uint64_t fuel = 1'000'000;
  bool trace = false;
  std::size_t max_crossings = 20;
};

int run_reduce(const ReduceCmd& o) {
  const ReductionConfig cfg = single_space(o.space);
  if (o.expr.empty() == o.in.empty()) throw UsageError("give exactly one of --expr and --in");
  ReduceOptions opts;
  opts.fuel = o.fuel;
  opts.trace = o.trace;
  opts.strategy = o.strategy == "left" ? Strategy::LeftmostInnermost : Strategy::RightAnchored;
  Reducer red(cfg, opts);

  std::string input = o.expr;
  ModuleElement nf;
  bool diagram = false;
  if (!o.in.empty()) {
    const std::string text = read_file(o.in);
    diagram = looks_like_diagram(text);
    input = diagram ? text : strip_comments(text);
  }
  if (diagram) {
    ResolveOptions ro;
    ro.max_crossings = o.max_crossings;
    nf = diagram_normal_form(SliceDiagram::parse(input), red, ro);
  } else {
    nf = red.reduce(parse_expression(input));
  }

  if (o.format == "json") {
    json j{{"space", cfg.str()},
           {"input", diagram ? "diagram " + o.in : input},
           {"normal_form", nf.str()},
           {"terms", element_json(nf)},
           {"fuel_used", red.fuel_used()}};
    if (o.trace) {
      json steps = json::array();
      for (const auto& s : red.trace().steps)
        steps.push_back({{"rule", std::string(1, s.rule)}, {"in", s.input.str()}, {"out", s.output.str()}});
      j["trace"] = steps;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (o.trace) std::cout << red.trace().str();
    std::cout << nf.str() << "\n";
  }
  return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyCmd {
  SpaceOptions space;
  std::string suite = "all", format = "text";
  VerifyGrid grid;
};

int run_verify(VerifyCmd o) {
  if (!o.space.cs.empty()) o.grid.cs = o.space.cs;
  if (!o.space.betas.empty()) o.grid.betas = o.space.betas;
  const bool all = o.suite == "all";
  SuiteReport rep{o.suite, {}};
  if (all || o.suite == "polys") rep.append(verify_polys(o.grid));
  if (all || o.suite == "annulus") rep.append(verify_annulus(o.grid));
  if (all || o.suite == "torus") rep.append(verify_torus(o.grid));
  if (all || o.suite == "diagram") rep.append(verify_diagram(o.grid));

  if (o.format == "json") {
    json results = json::array();
    for (const auto& r : rep.results)
      results.push_back({{"identity", r.name},
                         {"space", r.space},
                         {"instances", r.instances},
                         {"failures", r.failures},
                         {"first_failure", r.first_failure},
                         {"pass", r.ok()}});
    std::cout << json{{"suite", o.suite}, {"pass", rep.ok()}, {"instances", rep.instances()}, {"results", results}}.dump(2)
              << "\n";
  } else {
    for (const auto& r : rep.results) {
      std::cout << (r.ok() ? "PASS  " : "FAIL  ") << r.name;
      if (!r.space.empty()) std::cout << "  [" << r.space << "]";
      std::cout << "  instances=" << r.instances;
      if (!r.ok()) std::cout << " failures=" << r.failures << "\n      first: " << r.first_failure;
      std::cout << "\n";
    }
    std::cout << (rep.ok() ? "PASS" : "FAIL") << " suite=" << o.suite << " identities=" << rep.results.size()
              << " instances=" << rep.instances() << "\n";
  }
  return rep.ok() ? kOk : kCheckFailed;
}

// ---- fuzz ------------------------------------------------------------------

struct FuzzCmd {
  SpaceOptions space;
  std::size_t cases = 1000;
  std::uint64_t seed = 1, fuel = 100'000;
  std::vector<std::string> checks{"confluence", "normal-form", "oracle", "skein", "moves"};
  std::string corpus = "kbsm-corpus", format = "text";
  char corrupt_rule = 0;
};

// Counterexample text for the terminal: long lines are cut, the files keep them whole.
std::string abbreviated(const std::string& text, std::size_t width = 160) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.size() > width) line = line.substr(0, width) + " ...";
    out += "    " + line + "\n";
  }
  return out;
}

std::string file_safe(std::string s) {
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  return s;
}

int run_fuzz(const FuzzCmd& o) {
  const auto spaces = fuzz_spaces(o.space);
  ReduceOptions opts;
  opts.corrupt_rule = o.corrupt_rule;
  auto wants = [&](const std::string& c) { return std::find(o.checks.begin(), o.checks.end(), c) != o.checks.end(); };

  std::vector<FuzzReport> reports;
  Rng rng(o.seed);
  if (wants("oracle")) reports.push_back(fuzz_oracle(rng, o.cases));
  for (const auto& cfg : spaces) {
    if (wants("confluence")) reports.push_back(fuzz_confluence(rng, cfg, o.cases, opts));
    if (wants("normal-form")) reports.push_back(fuzz_normal_form(rng, cfg, o.cases, o.fuel, opts));
    if (wants("skein")) reports.push_back(fuzz_skein(rng, cfg, o.cases, opts));
    if (wants("moves")) reports.push_back(fuzz_moves(rng, cfg, o.cases, opts));
  }

  bool ok = true;
  std::vector<std::string> written;
  for (const auto& r : reports) {
    ok = ok && r.ok();
    for (std::size_t i = 0; i < r.counterexamples.size(); ++i) {
      std::filesystem::create_directories(o.corpus);
      const auto path = std::filesystem::path(o.corpus) / (file_safe(r.name) + "_" + std::to_string(i) + ".txt");
      std::ofstream(path) << "# " << r.name << " seed=" << o.seed << "\n" << r.counterexamples[i];
      written.push_back(path.string());
    }
  }

  if (o.format == "json") {
    json checks = json::array();
    for (const auto& r : reports)
      checks.push_back({{"check", r.name},
                        {"cases", r.cases},
                        {"mismatches", r.mismatches},
                        {"max_fuel", r.max_fuel},
                        {"counterexamples", r.counterexamples}});
    std::cout << json{{"seed", o.seed}, {"pass", ok}, {"checks", checks}, {"corpus_files", written}}.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << (r.ok() ? "PASS  " : "FAIL  ") << r.name << "  cases=" << r.cases << " mismatches=" << r.mismatches;
      if (r.max_fuel) std::cout << " max_fuel=" << r.max_fuel;
      std::cout << "\n";
      for (const auto& c : r.counterexamples) std::cout << abbreviated(c);
    }
    for (const auto& p : written) std::cout << "wrote " << p << "\n";
    std::cout << (ok ? "PASS" : "FAIL") << " seed=" << o.seed << " checks=" << reports.size() << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

// ---- tables ----------------------------------------------------------------

struct TablesCmd {
  std::string family, n = "0..4", k, format = "text";
};

std::pair<int, int> parse_range(const std::string& text, const char* flag) {
  try {
    std::size_t used = 0;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const int lo = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument(text);
    const std::string rest = text.substr(dots + 2);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + " expects INT or INT..INT, got '" + text + "'");
  }
}

int run_tables(const TablesCmd& o) {
  const auto [n_lo, n_hi] = parse_range(o.n, "--n");
  std::optional<std::pair<int, int>> k;
  if (!o.k.empty()) {
    if (o.family != "P") throw UsageError("--k applies to family P only");
    k = parse_range(o.k, "--k");
    if (k->first < 0) throw UsageError("--k must be non-negative");
  }
  struct Row {
    int n, k;
    LambdaPoly value;
  };
  std::vector<Row> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (o.family == "Q") rows.push_back({n, -1, qpoly(n)});
    else if (!k) rows.push_back({n, -1, ppoly(n)});
    else
      for (int j = k->first; j <= k->second; ++j) rows.push_back({n, j, ppoly_k(n, j)});
  }
  auto label = [&](const Row& r) {
    return o.family + "(" + std::to_string(r.n) + (r.k >= 0 ? "," + std::to_string(r.k) : "") + ")";
  };
  if (o.format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      json row{{"family", o.family}, {"n", r.n}, {"value", r.value.str()}};
      if (r.k >= 0) row["k"] = r.k;
      out.push_back(row);
    }
    std::cout << out.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "family,n,k,value\n";
    for (const auto& r : rows)
      std::cout << o.family << "," << r.n << "," << (r.k >= 0 ? std::to_string(r.k) : "") << ",\"" << r.value.str()
                << "\"\n";
  } else {
    for (const auto& r : rows) std::cout << label(r) << " = " << r.value.str() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms in the Kauffman bracket skein modules of the thickened annulus and the (beta,2)-fibered torus"};
  app.require_subcommand(1);

  ReduceCmd rc;
  auto* reduce = app.add_subcommand("reduce", "reduce an expression or diagram file to normal form");
  add_space_flags(reduce, rc.space);
  reduce->add_option("--expr", rc.expr, "expression, e.g. \"{A}*x(2) l + P(1)\"");
  reduce->add_option("--in", rc.in, "expression file or diagram file");
  reduce->add_option("--format", rc.format)->check(CLI::IsMember({"text", "json"}));
  reduce->add_option("--fuel", rc.fuel, "rule applications allowed per input term")->check(CLI::PositiveNumber);
  reduce->add_flag("--trace", rc.trace, "print every rule application");
  reduce->add_option("--strategy", rc.strategy)->check(CLI::IsMember({"right", "left"}));
  reduce->add_option("--max-crossings", rc.max_crossings, "crossing limit for diagram input");

  VerifyCmd vc;
  auto* verify = app.add_subcommand("verify", "check the identity suites exactly over their grids");
  add_space_flags(verify, vc.space);
  verify->add_option("--suite", vc.suite)->check(CLI::IsMember({"polys", "annulus", "torus", "diagram", "all"}));
  verify->add_option("--format", vc.format)->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--poly-n", vc.grid.poly_n, "n in [-N, N] for the P recursions");
  verify->add_option("--poly-k", vc.grid.poly_k, "k in [0, K] for the P recursions");
  verify->add_option("--q-n", vc.grid.q_n, "|n| <= N for the Q claims");
  verify->add_option("--radius", vc.grid.radius, "m, k within R of c (or nu)");
  verify->add_option("--omega-range", vc.grid.omega_range, "m, n in [-R, R] for the three-term relations");
  verify->add_option("--omega-k", vc.grid.omega_k, "k in [0, K] for the three-term relations");
  verify->add_option("--torus-n", vc.grid.torus_n, "n in [0, N] for the torus relations");
  verify->add_option("--torus-k", vc.grid.torus_k, "k in [0, K] for the torus relations");
  verify->add_option("--embed-n", vc.grid.embed_n, "lambda power of annulus round-trip words");
  verify->add_option("--embed-k", vc.grid.embed_k, "x_c power of annulus round-trip words");
  verify->add_option("--embed-torus-n", vc.grid.embed_torus_n, "lambda power of torus round-trip words");
  verify->add_option("--basis-shift", vc.grid.basis_shift, "c2 = c1 +- S in the basis-change round trip");

  FuzzCmd fc;
  std::string corrupt;
  auto* fuzz = app.add_subcommand("fuzz", "seeded differential checks; counterexamples are written as replayable files");
  add_space_flags(fuzz, fc.space);
  fuzz->add_option("--cases", fc.cases, "cases per check and space");
  fuzz->add_option("--seed", fc.seed);
  fuzz->add_option("--fuel", fc.fuel, "fuel bound for the normal-form check");
  fuzz->add_option("--check", fc.checks, "subset of confluence, normal-form, oracle, skein, moves")
      ->check(CLI::IsMember({"confluence", "normal-form", "oracle", "skein", "moves"}));
  fuzz->add_option("--corpus", fc.corpus, "directory for counterexample files");
  fuzz->add_option("--format", fc.format)->check(CLI::IsMember({"text", "json"}));
  fuzz->add_option("--corrupt-rule", corrupt)->group("")->check(CLI::IsMember({"c", "d", "e", "f", "g", "h", "i", "j", "k"}));

  TablesCmd tc;
  auto* tables = app.add_subcommand("tables", "print Q_n, P_n or P_{n,k}");
  tables->add_option("--family", tc.family)->required()->check(CLI::IsMember({"Q", "P"}));
  tables->add_option("--n", tc.n, "INT or INT..INT");
  tables->add_option("--k", tc.k, "INT or INT..INT (family P)");
  tables->add_option("--format", tc.format)->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (!corrupt.empty()) fc.corrupt_rule = corrupt.front();

  try {
    if (*reduce) return run_reduce(rc);
    if (*verify) return run_verify(vc);
    if (*fuzz) return run_fuzz(fc);
    if (*tables) return run_tables(tc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const CrossingLimitExceeded& e) {
    std::cerr << "reduction error: " << e.what() << "\n";
    return kReductionError;
  } catch (const DiagramError& e) {
    std::cerr << "invalid diagram: " << e.what() << "\n";
    return kInputError;
  } catch (const ReductionError& e) {
    std::cerr << "reduction error: " << e.what() << "\n";
    return kReductionError;
  }
  return kOk;
}
