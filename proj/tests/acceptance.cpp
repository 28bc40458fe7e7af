// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic only.
// Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kbsm/fuzz.hpp"
#include "kbsm/verify.hpp"

using namespace kbsm;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string first_problem(const SuiteReport& rep) {
  for (const auto& r : rep.results)
    if (!r.ok()) return "; first failure: " + r.name + " [" + r.space + "] " + r.first_failure;
  return "";
}

Outcome suite(const SuiteReport& rep, std::size_t min_instances = 1) {
  const bool ok = rep.ok() && rep.instances() >= min_instances;
  return {ok, std::to_string(rep.results.size()) + " identities, " + std::to_string(rep.instances()) + " instances" +
                  first_problem(rep)};
}

Outcome fuzz(const std::vector<FuzzReport>& reps) {
  Outcome o{true, ""};
  for (const auto& r : reps) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += r.name + ": " + std::to_string(r.cases) + " cases, " + std::to_string(r.mismatches) + " mismatches";
    if (r.max_fuel) o.detail += ", max fuel " + std::to_string(r.max_fuel);
    o.ok = o.ok && r.ok();
  }
  return o;
}

const ReductionConfig annulus0 = ReductionConfig::annulus(0);
const ReductionConfig fibered5 = ReductionConfig::fibered(5);

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"polynomial identities for n in [-12,12], k in [0,8]; Q claims for |n| <= 15",
       [] { return suite(verify_polys()); }},
      {"annulus engine identities for c in {-2,0,3}, at least 10^4 instances",
       [] { return suite(verify_annulus(), 10'000); }},
      {"torus engine identities for beta in {3,5,7}", [] { return suite(verify_torus()); }},
      {"10^4 random words per space reduce with fuel < 10^5 into the basis, idempotently",
       [] {
         Rng rng(4);
         Outcome o = fuzz({fuzz_normal_form(rng, annulus0, 10'000, 99'999),
                           fuzz_normal_form(rng, fibered5, 10'000, 99'999)});
         return o;
       }},
      {"state sum equals recursive resolution on 500 diagrams; skein linearity on 500 triples",
       [] {
         Rng rng(5);
         return fuzz({fuzz_oracle(rng, 500), fuzz_skein(rng, annulus0, 500)});
       }},
      {"embedded basis words map back to themselves; basis change round trip",
       [] { return suite(verify_diagram()); }},
      {"normal forms unchanged by 10^3 random moves per space",
       [] {
         Rng rng(7);
         return fuzz({fuzz_moves(rng, annulus0, 1000), fuzz_moves(rng, fibered5, 1000)});
       }},
      {"right-anchored and leftmost-innermost strategies agree on 10^3 words per space",
       [] {
         Rng rng(8);
         return fuzz({fuzz_confluence(rng, annulus0, 1000), fuzz_confluence(rng, fibered5, 1000)});
       }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.ok) ++failed;
    std::printf("%s criterion %zu: %s (%s; %.1f s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%s %d/%zu criteria\n", failed ? "FAIL" : "PASS", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
