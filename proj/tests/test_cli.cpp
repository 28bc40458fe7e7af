#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "kbsm/expr.hpp"
#include "kbsm/reduce.hpp"

using namespace kbsm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

// Runs the CLI with the given arguments; stderr is discarded unless merged.
Run cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string("\"") + KBSM_CLI_PATH + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::current_path() / "cli_scratch";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  const auto nl = t.rfind('\n');
  return nl == std::string::npos ? t : t.substr(nl + 1);
}

}  // namespace

TEST_CASE("reduce examples") {
  Run r = cli("reduce --space annulus --c 0 --expr \"x(2)\"");
  CHECK(r.rc == 0);
  CHECK(r.out == "{A}*x(1) l + {-A^2}*x(0)\n");
  r = cli("reduce --space fibered --beta 5 --expr \"x(3)\"");
  CHECK(r.rc == 0);
  CHECK(r.out == "{-A^3}*x(2)\n");
  r = cli("reduce --space annulus --c 0 --expr \"l^3\"");
  CHECK(r.rc == 0);
  CHECK(r.out == "{1}*l^3\n");
  r = cli("reduce --space fibered --beta 5 --expr \"x(2) x(2)\"");
  CHECK(r.out == "{-A^-4}*l + {A^-4+1}*1\n");
}

TEST_CASE("reduce reads expression and diagram files") {
  const fs::path expr = scratch("expr.txt");
  write_file(expr, "# rule h with c = 0\nx(2)\n");
  Run r = cli("reduce --space annulus --c 0 --in \"" + expr.string() + "\"");
  CHECK(r.rc == 0);
  CHECK(r.out == "{A}*x(1) l + {-A^2}*x(0)\n");

  const fs::path kink = scratch("kink.txt");
  write_file(kink, "strands 1\ncap 1\nx+ 1\ncup 2\n");
  r = cli("reduce --space annulus --c 0 --in \"" + kink.string() + "\"");
  CHECK(r.rc == 0);
  CHECK(r.out == "{-A^3}*x(0)\n");
  r = cli("reduce --space fibered --beta 3 --in \"" + kink.string() + "\"");
  CHECK(r.rc == 0);
  CHECK(r.out == (reduce_nu(parse_expression("x(0)"), 3) * LaurentPoly::A(3) * LaurentPoly(-1)).str() + "\n");
}

TEST_CASE("json output round-trips through the parser") {
  const Run r = cli("reduce --space annulus --c 1 --expr \"l x(4) x(-1)\" --format json");
  REQUIRE(r.rc == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["space"] == "annulus(c=1)");
  CHECK(j["input"] == "l x(4) x(-1)");
  const ModuleElement nf = parse_expression(j["normal_form"].get<std::string>());
  CHECK(nf == reduce_c(parse_expression("l x(4) x(-1)"), 1));
  CHECK(j["terms"].size() == nf.size());
  ModuleElement rebuilt;
  for (const auto& t : j["terms"])
    rebuilt.add(parse_expression(t["word"].get<std::string>()).begin()->first,
                LaurentPoly::parse(t["coefficient"].get<std::string>()));
  CHECK(rebuilt == nf);

  const Run again = cli("reduce --space annulus --c 1 --expr \"" + j["normal_form"].get<std::string>() + "\"");
  CHECK(again.rc == 0);
  CHECK(again.out == j["normal_form"].get<std::string>() + "\n");
}

TEST_CASE("exit codes") {
  CHECK(cli("reduce --space annulus --c 0 --expr \"x(2\"").rc == 2);
  CHECK(cli("reduce --space annulus --expr \"x(2)\"").rc == 2);
  CHECK(cli("reduce --space fibered --c 0 --expr \"x(2)\"").rc == 2);
  CHECK(cli("reduce --space annulus --c 0").rc == 2);
  CHECK(cli("frobnicate").rc == 2);
  CHECK(cli("reduce --space annulus --c 0 --in /nonexistent/file").rc == 2);
  CHECK(cli("reduce --space annulus --c 0 --fuel 1 --expr \"x(9) l^3 x(-5)\"").rc == 3);

  const fs::path bad = scratch("bad.txt");
  write_file(bad, "strands 1\ncup 1\n");
  CHECK(cli("reduce --space annulus --c 0 --in \"" + bad.string() + "\"").rc == 2);
  const fs::path kink = scratch("kink2.txt");
  write_file(kink, "strands 1\ncap 1\nx+ 1\ncup 2\n");
  CHECK(cli("reduce --space annulus --c 0 --max-crossings 0 --in \"" + kink.string() + "\"").rc == 3);

  const Run err = cli("reduce --space annulus --c 0 --expr \"x(1) ? x(2)\"", true);
  CHECK(err.rc == 2);
  CHECK(err.out.find("position 5") != std::string::npos);
}

TEST_CASE("tables") {
  Run r = cli("tables --family Q --n 0..4");
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "Q(0) = 0\nQ(1) = (1)\nQ(2) = (1)*l^1\nQ(3) = (-1) + (1)*l^2\nQ(4) = (-2)*l^1 + (1)*l^3\n");
  r = cli("tables --family P --n 0..1");
  CHECK(r.out == "P(0) = (-A^-2-A^2)\nP(1) = (-A^3)*l^1\n");
  r = cli("tables --family P --n 0 --k 0");
  CHECK(r.out == "P(0,0) = (-A^-2-A^2)\n");
  r = cli("tables --family P --n 0..1 --k 1 --format csv");
  CHECK(r.out == "family,n,k,value\nP,0,1,\"(-A^-4-A^4)*l^1\"\nP,1,1,\"(-A^-3+A^5) + (-A^5)*l^2\"\n");
  r = cli("tables --family Q --n -2..-1 --format json");
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["value"] == "(-1)*l^1");
  CHECK(cli("tables --n 0..2").rc == 2);
  CHECK(cli("tables --family Q --n 3..x").rc == 2);
}

TEST_CASE("verify") {
  Run r = cli("verify --suite polys");
  CHECK(r.rc == 0);
  CHECK(last_line(r.out).rfind("PASS suite=polys", 0) == 0);
  r = cli("verify --suite torus --beta 7");
  CHECK(r.rc == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  r = cli("verify --suite annulus --radius -1 --omega-range -1 --omega-k -1");
  CHECK(r.rc == 0);
  r = cli("verify --suite polys --format json");
  CHECK(r.rc == 0);
  CHECK_NOTHROW(nlohmann::json::parse(r.out));
}

TEST_CASE("fuzz") {
  Run r = cli("fuzz --cases 0");
  CHECK(r.rc == 0);
  CHECK(last_line(r.out).rfind("PASS", 0) == 0);

  const Run a = cli("fuzz --cases 15 --seed 7");
  const Run b = cli("fuzz --cases 15 --seed 7");
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);

  const fs::path corpus = scratch("corpus");
  fs::remove_all(corpus);
  r = cli("fuzz --cases 30 --seed 1 --check confluence --corrupt-rule h --space annulus --c 0 --corpus \"" +
          corpus.string() + "\"");
  CHECK(r.rc == 4);
  REQUIRE(fs::exists(corpus));
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    ++files;
    const Run replay = cli("reduce --space annulus --c 0 --in \"" + entry.path().string() + "\"");
    CHECK(replay.rc == 0);
  }
  CHECK(files > 0);
}
