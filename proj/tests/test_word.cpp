#include <catch_amalgamated.hpp>

#include <random>

#include "kbsm/error.hpp"
#include "kbsm/expr.hpp"
#include "kbsm/word.hpp"

using namespace kbsm;

namespace {

GammaWord L(int n) { return GammaWord::lambda(n); }
GammaWord X(int m) { return GammaWord::x(m); }
LaurentPoly lp(const char* a) { return LaurentPoly::parse(a); }

GammaWord random_shape(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(0, 4), run(0, 3), idx(-5, 5);
  const int n = k(rng);
  std::vector<int> lam(static_cast<std::size_t>(n) + 1), xs(static_cast<std::size_t>(n));
  for (auto& v : lam) v = run(rng);
  for (auto& v : xs) v = idx(rng);
  return GammaWord(lam, xs);
}

}  // namespace

TEST_CASE("words concatenate with run merging") {
  const GammaWord w = X(3) * L(2) * X(2);
  CHECK(word_concat(GammaWord(), w) == w);
  CHECK(word_concat(w, GammaWord()) == w);
  CHECK(word_concat(L(2), L(3)) == L(5));
  CHECK(word_concat(X(3) * L(1), L(1) * X(5)) == GammaWord({0, 2, 0}, {3, 5}));
  CHECK(word_concat(X(3) * L(1), L(1) * X(5)).str() == "x(3) l^2 x(5)");
  CHECK(GammaWord().str() == "1");
  CHECK(L(1).str() == "l");
  CHECK(GammaWord::x_power(2, 3).str() == "x(2) x(2) x(2)");
  CHECK_THROWS_AS(GammaWord({-1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(GammaWord({0}, {1}), std::invalid_argument);
}

TEST_CASE("concatenation is associative") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const GammaWord a = random_shape(rng), b = random_shape(rng), c = random_shape(rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE((a * b).x_count() == a.x_count() + b.x_count());
    REQUIRE((a * b).total_lambda() == a.total_lambda() + b.total_lambda());
  }
}

TEST_CASE("splice places lambda polynomials in a gap") {
  CHECK(splice(X(0), 0, ppoly(0)) == ModuleElement(X(0), lp("-A^2-A^-2")));
  CHECK(splice(X(0), 0, ppoly(1)) == ModuleElement(L(1) * X(0), lp("-A^3")));
  ModuleElement expect(X(5) * L(2) * X(0));
  expect.add(X(5) * X(0), LaurentPoly(1));
  CHECK(splice(X(5) * X(0), 1, LambdaPoly::lambda(2) + LambdaPoly(LaurentPoly(1))) == expect);
  CHECK(splice(X(1), 1, LambdaPoly()).is_zero());
  CHECK_THROWS_AS(splice(X(1), 2, ppoly(1)), std::out_of_range);
}

TEST_CASE("splice of a product is splice after splice") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n(-4, 4), k(0, 3);
  for (int i = 0; i < 300; ++i) {
    const GammaWord w = random_shape(rng);
    const std::size_t gap = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, int(w.x_count()))(rng));
    const LambdaPoly p = ppoly_k(n(rng), k(rng)), q = qpoly(n(rng));
    REQUIRE(splice(w, gap, p * q) == splice(splice(w, gap, p), gap, q));
  }
}

TEST_CASE("annulus basis membership") {
  CHECK(in_sigma_c(L(4), 2));
  CHECK(in_sigma_c(X(3) * L(2) * X(2) * X(2), 2));
  CHECK_FALSE(in_sigma_c(X(2) * L(2) * X(3), 2));
  CHECK(in_sigma_c(GammaWord(), -7));
  CHECK(in_sigma_c(X(2) * L(3), 2));
  CHECK_FALSE(in_sigma_c(L(1) * X(2), 2));
  CHECK_FALSE(in_sigma_c(X(4), 2));
  CHECK_FALSE(in_sigma_c(X(2) * X(2) * L(1), 2));
}

TEST_CASE("torus basis membership") {
  CHECK(in_sigma_prime(X(2) * L(3), 2));
  CHECK_FALSE(in_sigma_prime(X(2) * L(1) * X(2), 2));
  CHECK(in_sigma_prime(GammaWord(), 2));
  CHECK(in_sigma_prime(L(6), 2));
  CHECK_FALSE(in_sigma_prime(X(3), 2));
  CHECK(ReductionConfig::fibered(5).nu == 2);
  CHECK(ReductionConfig::fibered(4).nu == 2);
  CHECK(ReductionConfig::fibered(-3).nu == -2);
}

TEST_CASE("module elements") {
  ModuleElement e(X(1), lp("A"));
  e.add(X(1), lp("-A"));
  CHECK(e.is_zero());
  CHECK(e.str() == "0");
  const ModuleElement a = ModuleElement(X(1) * L(1), lp("A")) + ModuleElement(X(0), lp("-A^2"));
  CHECK(a.str() == "{A}*x(1) l + {-A^2}*x(0)");
  CHECK((a - a).is_zero());
  CHECK(a * LaurentPoly() == ModuleElement());
  const ModuleElement b = ModuleElement(L(2)) + ModuleElement(X(4), lp("2"));
  CHECK(a * b == (a * ModuleElement(L(2))) + (a * ModuleElement(X(4))) * LaurentPoly(2));
  CHECK(ModuleElement::from_lambda(ppoly(1)) == ModuleElement(L(1), lp("-A^3")));
}

TEST_CASE("expressions parse into module elements") {
  CHECK(parse_expression("x(2)") == ModuleElement(X(2)));
  CHECK(parse_expression("l^3") == ModuleElement(L(3)));
  CHECK(parse_expression("0").is_zero());
  CHECK(parse_expression("1") == ModuleElement(GammaWord()));
  CHECK(parse_expression("{-A^3}*l x(5) + {1}*x(2) l^2 x(2)") ==
        ModuleElement(L(1) * X(5), lp("-A^3")) + ModuleElement(X(2) * L(2) * X(2)));
  CHECK(parse_expression("x(0) P(1)") == ModuleElement(X(0) * L(1), lp("-A^3")));
  CHECK(parse_expression("t(0,1)") == ModuleElement::from_lambda(ppoly_k(0, 1)));
  CHECK(parse_expression("x(1) Q(3) x(0)") == splice(X(1) * X(0), 1, qpoly(3)));
  CHECK(parse_expression("{2}") == ModuleElement(GammaWord(), lp("2")));
  CHECK(parse_expression("- x(1) + x(1)").is_zero());
  CHECK(parse_expression("x(-3)") == ModuleElement(X(-3)));
}

TEST_CASE("printed module elements parse back") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(-6, 6), c(-3, 3);
  for (int i = 0; i < 500; ++i) {
    ModuleElement m;
    for (int j = 0; j < 4; ++j) m.add(random_shape(rng), LaurentPoly::monomial(c(rng), e(rng)) + LaurentPoly::A(e(rng)));
    REQUIRE(parse_expression(m.str()) == m);
  }
}

TEST_CASE("malformed expressions report a position") {
  for (const char* bad : {"x(2", "x()", "l^-1", "{A", "{A^}*x(1)", "y(1)", "x(1) +", "P(1,-2)", ""}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_expression(bad), ParseError);
  }
  try {
    parse_expression("x(1) ? x(2)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}
