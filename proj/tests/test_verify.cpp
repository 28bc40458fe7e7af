#include <catch_amalgamated.hpp>

#include <set>

#include "kbsm/verify.hpp"

using namespace kbsm;

namespace {

void require_all_pass(const SuiteReport& rep) {
  for (const auto& r : rep.results) {
    INFO(rep.suite << ": " << r.name << " [" << r.space << "] " << r.first_failure);
    CHECK(r.ok());
    CHECK(r.instances > 0);
  }
}

std::set<std::string> names(const SuiteReport& rep) {
  std::set<std::string> out;
  for (const auto& r : rep.results) out.insert(r.name);
  return out;
}

VerifyGrid empty_grid() {
  VerifyGrid g;
  g.poly_n = g.poly_k = g.q_n = -1;
  g.radius = g.omega_range = g.omega_k = -1;
  g.torus_n = g.torus_k = -1;
  g.embed_n = g.embed_k = g.embed_torus_n = -1;
  g.basis_shift = -1;
  return g;
}

}  // namespace

TEST_CASE("polynomial suite on the default grid") {
  const SuiteReport rep = verify_polys();
  require_all_pass(rep);
  const auto n = names(rep);
  CHECK(n.count("P_n - A l P_{n-1} + A^2 P_{n-2} = 0"));
  CHECK(n.count("P_{n,k} = A P_{n+1,k-1} + A^-1 P_{n-1,k-1}"));
  CHECK(n.count("P_{n,k} = A l P_{n-1,k} - A^2 P_{n-2,k}"));
  CHECK(n.count("P_n closed form equals recursion"));
  CHECK(n.count("deg Q_n = |n| - 1, leading coefficient sign(n)"));
}

TEST_CASE("torus suite for beta = 7") {
  VerifyGrid g;
  g.betas = {7};
  const SuiteReport rep = verify_torus(g);
  require_all_pass(rep);
  CHECK(rep.results.size() == 5);
}

TEST_CASE("annulus suite on a reduced grid") {
  VerifyGrid g;
  g.radius = 2;
  g.omega_range = 3;
  g.omega_k = 2;
  g.cs = {0, -1};
  const SuiteReport rep = verify_annulus(g);
  require_all_pass(rep);
  CHECK(rep.results.size() == 16);
  CHECK(rep.instances() > 1000);
}

TEST_CASE("diagram suite on the default grid") {
  require_all_pass(verify_diagram());
}

TEST_CASE("an empty grid passes vacuously") {
  const VerifyGrid g = empty_grid();
  for (const SuiteReport& rep : {verify_polys(g), verify_annulus(g), verify_torus(g), verify_diagram(g)}) {
    INFO(rep.suite);
    CHECK(rep.ok());
    CHECK(rep.instances() == 0);
  }
  VerifyGrid none;
  none.cs.clear();
  none.betas.clear();
  CHECK(verify_annulus(none).results.empty());
  CHECK(verify_torus(none).ok());
}

TEST_CASE("a corrupted rule fails the identity checks") {
  ReduceOptions bad;
  bad.corrupt_rule = 'h';
  VerifyGrid g;
  g.radius = 2;
  g.omega_range = 2;
  g.omega_k = 1;
  const SuiteReport rep = verify_annulus_c(0, g, bad);
  CHECK_FALSE(rep.ok());
  bool described = false;
  for (const auto& r : rep.results)
    if (!r.ok()) described = described || !r.first_failure.empty();
  CHECK(described);

  bad.corrupt_rule = 'j';
  CHECK_FALSE(verify_torus_beta(5, {}, bad).ok());
}
