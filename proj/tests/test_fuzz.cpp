#include <catch_amalgamated.hpp>

#include <algorithm>

#include "kbsm/expr.hpp"
#include "kbsm/fuzz.hpp"

using namespace kbsm;

namespace {

const WordShape modest{4, 5, 3};

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  const auto nl = t.rfind('\n');
  return nl == std::string::npos ? t : t.substr(nl + 1);
}

}  // namespace

TEST_CASE("seeded draws are reproducible and in range") {
  Rng a(9), b(9);
  for (int i = 0; i < 1000; ++i) {
    const int x = a.uniform(-3, 4);
    REQUIRE(x == b.uniform(-3, 4));
    REQUIRE(x >= -3);
    REQUIRE(x <= 4);
  }
  Rng c(9), d(9);
  for (int i = 0; i < 100; ++i) REQUIRE(random_word(c, 2) == random_word(d, 2));
}

TEST_CASE("random diagrams respect their shape") {
  Rng rng(71);
  DiagramShape shape;
  shape.max_crossings = 4;
  shape.max_strands = 5;
  for (int i = 0; i < 2000; ++i) {
    const SliceDiagram d = random_diagram(rng, shape);
    REQUIRE(validate(d).empty());
    REQUIRE(d.crossing_count() <= 4);
    for (int n : d.strand_counts()) REQUIRE(n <= 5);
  }
  shape.min_crossings = 3;
  for (int i = 0; i < 200; ++i) REQUIRE(random_diagram(rng, shape).crossing_count() >= 3);
}

TEST_CASE("random words stay near the anchor") {
  Rng rng(73);
  for (int i = 0; i < 2000; ++i) {
    const GammaWord w = random_word(rng, 4, modest);
    REQUIRE(w.x_count() <= 4);
    for (std::size_t j = 0; j < w.x_count(); ++j) REQUIRE(std::abs(w.x_at(j) - 4) <= 5);
    for (std::size_t j = 0; j <= w.x_count(); ++j) REQUIRE(w.lambda_at(j) <= 3);
  }
}

TEST_CASE("all checks pass on the real rules") {
  Rng rng(79);
  for (const auto& cfg : {ReductionConfig::annulus(0), ReductionConfig::fibered(5)}) {
    INFO(cfg.str());
    const FuzzReport conf = fuzz_confluence(rng, cfg, 100, {}, modest);
    CHECK(conf.ok());
    CHECK(conf.cases == 100);
    const FuzzReport nf = fuzz_normal_form(rng, cfg, 200, 100'000);
    CHECK(nf.ok());
    CHECK(nf.max_fuel > 0);
    CHECK(nf.max_fuel <= 100'000);
    const FuzzReport sk = fuzz_skein(rng, cfg, 50);
    CHECK(sk.ok());
    CHECK(sk.cases == 50);
    const FuzzReport mv = fuzz_moves(rng, cfg, 100);
    CHECK(mv.ok());
    CHECK(mv.cases == 100);
  }
  const FuzzReport oracle = fuzz_oracle(rng, 100);
  CHECK(oracle.ok());
  CHECK(oracle.cases == 100);
}

TEST_CASE("reports are deterministic in the seed") {
  Rng a(83), b(83);
  const FuzzReport x = fuzz_normal_form(a, ReductionConfig::annulus(2), 100, 100'000);
  const FuzzReport y = fuzz_normal_form(b, ReductionConfig::annulus(2), 100, 100'000);
  CHECK(x.max_fuel == y.max_fuel);
  CHECK(x.mismatches == y.mismatches);
}

TEST_CASE("a corrupted rule is caught and its counterexamples replay") {
  ReduceOptions bad;
  bad.corrupt_rule = 'h';
  Rng rng(89);
  const ReductionConfig cfg = ReductionConfig::annulus(0);
  const FuzzReport r = fuzz_confluence(rng, cfg, 100, bad, modest);
  REQUIRE_FALSE(r.ok());
  CHECK(r.counterexamples.size() == std::min<std::size_t>(r.mismatches, 5));
  for (const std::string& ce : r.counterexamples) {
    const ModuleElement w = parse_expression(last_line(ce));
    Reducer corrupted(cfg, bad), honest(cfg, {1'000'000, Strategy::LeftmostInnermost});
    CHECK(corrupted.reduce(w) != honest.reduce(w));
    CHECK(Reducer(cfg).reduce(w) == honest.reduce(w));
  }

  ReduceOptions bad_j;
  bad_j.corrupt_rule = 'j';
  Rng again(89);
  CHECK_FALSE(fuzz_confluence(again, ReductionConfig::fibered(5), 100, bad_j, modest).ok());
}

TEST_CASE("an exhausted fuel bound counts as a failure") {
  Rng rng(97);
  const FuzzReport r = fuzz_normal_form(rng, ReductionConfig::annulus(0), 50, 1);
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.counterexamples.empty());
  CHECK(r.counterexamples[0].rfind("# fuel", 0) == 0);
}
