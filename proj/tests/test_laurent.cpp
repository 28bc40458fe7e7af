#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "kbsm/error.hpp"
#include "kbsm/laurent.hpp"

using namespace kbsm;

namespace {

// Reference arithmetic on plain exponent -> coefficient maps.
using Ref = std::map<int, long long>;

Ref ref_norm(Ref r) {
  std::erase_if(r, [](const auto& t) { return t.second == 0; });
  return r;
}
Ref ref_add(const Ref& a, const Ref& b) {
  Ref r = a;
  for (const auto& [e, c] : b) r[e] += c;
  return ref_norm(r);
}
Ref ref_mul(const Ref& a, const Ref& b) {
  Ref r;
  for (const auto& [e1, c1] : a)
    for (const auto& [e2, c2] : b) r[e1 + e2] += c1 * c2;
  return ref_norm(r);
}
LaurentPoly from_ref(const Ref& r) {
  LaurentPoly p;
  for (const auto& [e, c] : r) p += LaurentPoly::monomial(Integer(static_cast<std::int64_t>(c)), e);
  return p;
}
Ref to_ref(const LaurentPoly& p) {
  Ref r;
  for (const auto& [e, c] : p.terms()) r[e] = c.to_int64();
  return r;
}

Ref random_ref(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(0, 6), exp(-20, 20), coeff(-9, 9);
  Ref r;
  for (int n = size(rng); n > 0; --n) r[exp(rng)] += coeff(rng);
  return ref_norm(r);
}

}  // namespace

TEST_CASE("addition merges like terms and cancels") {
  const LaurentPoly p0 = LaurentPoly::A(2) + LaurentPoly::A(-2);
  CHECK((p0 + (-p0)).is_zero());
  CHECK(LaurentPoly::A(3) + LaurentPoly::A(3) == LaurentPoly::monomial(2, 3));
  const LaurentPoly sum = lp_add(-LaurentPoly::A(2) - LaurentPoly::A(-2), LaurentPoly::A(0));
  CHECK(to_ref(sum) == ref_add(Ref{{2, -1}, {-2, -1}}, Ref{{0, 1}}));
  CHECK(sum.str() == "-A^-2+1-A^2");
}

TEST_CASE("multiplication") {
  for (int k : {-7, 0, 1, 12}) CHECK(LaurentPoly::A(k) * LaurentPoly::A(-k) == LaurentPoly(1));
  CHECK(lp_mul(-LaurentPoly::A(3), -LaurentPoly::A(-3)) == LaurentPoly(1));
  const LaurentPoly sq = loop_value() * loop_value();
  CHECK(to_ref(sq) == ref_mul(Ref{{2, -1}, {-2, -1}}, Ref{{2, -1}, {-2, -1}}));
  CHECK(sq == lp_parse("A^4+2+A^-4"));
}

TEST_CASE("monomials") {
  CHECK(lp_monomial(-1, 3) == -LaurentPoly::A(3));
  CHECK(lp_monomial(-1, 3).str() == "-A^3");
  CHECK(lp_monomial(0, 5).is_zero());
  CHECK(lp_monomial(2, -1).str() == "2A^-1");
}

TEST_CASE("parse and print") {
  CHECK(lp_parse("-A^2-A^-2") == loop_value());
  CHECK(lp_parse("0").is_zero());
  CHECK(lp_print(LaurentPoly()) == "0");
  const LaurentPoly p = lp_parse("3A^-4+1");
  CHECK(p.size() == 2);
  CHECK(p.coeff(-4) == Integer(3));
  CHECK(p.coeff(0) == Integer(1));
  CHECK(lp_parse(" 2 A ^ 3 - A ") == LaurentPoly::monomial(2, 3) - LaurentPoly::A(1));
  CHECK(lp_parse("A") == LaurentPoly::A(1));
  CHECK(lp_parse("-7") == LaurentPoly(-7));

  for (const char* canonical : {"0", "1", "-A^-2+1-A^2", "3A^-4+1", "A", "-A^3", "2A^-1+A^7"})
    CHECK(lp_print(lp_parse(canonical)) == canonical);
}

TEST_CASE("parse errors carry a position") {
  for (const char* bad : {"", "A^", "2A^x", "A+", "3 4", "A^2)"}) {
    INFO(bad);
    CHECK_THROWS_AS(lp_parse(bad), ParseError);
  }
  try {
    lp_parse("1+A^");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("coefficients beyond 64 bits stay exact") {
  LaurentPoly big = LaurentPoly::monomial(Integer(std::int64_t{1} << 62), 0);
  const LaurentPoly sq = big * big * big;
  CHECK(sq.coeff(0) == Integer("98079714615416886934934209737619787751599303819750539264"));
  CHECK((sq - sq).is_zero());
  CHECK(lp_parse(sq.str()) == sq);
  const LaurentPoly back = (sq + LaurentPoly(1)) - sq;
  CHECK(back == LaurentPoly(1));
  CHECK(back.coeff(0).is_small());
}

TEST_CASE("ring axioms on random term maps") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 10000; ++i) {
    const Ref ra = random_ref(rng), rb = random_ref(rng), rc = random_ref(rng);
    const LaurentPoly a = from_ref(ra), b = from_ref(rb), c = from_ref(rc);
    REQUIRE(to_ref(a + b) == ref_add(ra, rb));
    REQUIRE(to_ref(a * b) == ref_mul(ra, rb));
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + LaurentPoly() == a);
    REQUIRE(a * LaurentPoly(1) == a);
    REQUIRE((a - a).is_zero());
    LaurentPoly acc = a;
    acc.add_product(b, c);
    REQUIRE(acc == a + b * c);
  }
}

TEST_CASE("printed form is canonical") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 5000; ++i) {
    const LaurentPoly a = from_ref(random_ref(rng)), b = from_ref(random_ref(rng));
    REQUIRE((a - b).is_zero() == (a.str() == b.str()));
    REQUIRE(lp_parse(a.str()) == a);
  }
}
