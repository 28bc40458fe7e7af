// Seeded random words and diagrams, and the differential checks run on them:
// strategy confluence, state-sum oracle, skein linearity, move invariance and
// the normal-form contract.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kbsm/diagram.hpp"
#include "kbsm/moves.hpp"
#include "kbsm/reduce.hpp"
#include "kbsm/states.hpp"
#include "kbsm/word.hpp"

namespace kbsm {

/// Deterministic generator; the draws depend only on the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }
  bool coin() { return eng_() & 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

struct WordShape {
  int max_x = 6;       // number of x generators in [0, max_x]
  int spread = 8;      // |m - anchor| <= spread
  int max_lambda = 5;  // each lambda run in [0, max_lambda]
};

inline GammaWord random_word(Rng& rng, int anchor, const WordShape& shape = {}) {
  const int k = rng.uniform(0, shape.max_x);
  std::vector<int> lam(static_cast<std::size_t>(k) + 1), xs(static_cast<std::size_t>(k));
  for (auto& n : lam) n = rng.uniform(0, shape.max_lambda);
  for (auto& m : xs) m = anchor + rng.uniform(-shape.spread, shape.spread);
  return GammaWord(lam, xs);
}

struct DiagramShape {
  int max_base = 3;
  int max_events = 14;
  int max_strands = 6;
  int max_crossings = 10;
  int min_crossings = 0;
};

/// A valid diagram: random events under the shape limits, then closed up with
/// cups or caps until the strand count returns to the base. At least
/// min_crossings crossings when max_strands >= 2.
inline SliceDiagram random_diagram(Rng& rng, const DiagramShape& shape = {}) {
  SliceDiagram d;
  d.base_strands = rng.uniform(0, shape.max_base);
  int n = d.base_strands;
  int crossings = 0;
  const int len = rng.uniform(0, shape.max_events);
  for (int i = 0; i < len || crossings < shape.min_crossings; ++i) {
    if (i > len + 2 * shape.min_crossings + 2) break;
    std::vector<int> kinds;  // 0 cap, 1 cup, 2 crossing, 3 arrow
    if (n + 2 <= shape.max_strands) kinds.push_back(0);
    if (n >= 2) kinds.push_back(1);
    if (n >= 2 && crossings < shape.max_crossings) {
      kinds.push_back(2);
      kinds.push_back(2);
    }
    if (n >= 1) kinds.push_back(3);
    if (crossings < shape.min_crossings && (n < 2 || i >= len)) kinds = {n < 2 ? 0 : 2};
    switch (rng.pick(kinds)) {
      case 0:
        d.events.push_back(Event::cap(rng.uniform(1, n + 1)));
        n += 2;
        break;
      case 1:
        d.events.push_back(Event::cup(rng.uniform(1, n - 1)));
        n -= 2;
        break;
      case 2:
        d.events.push_back(Event::cross(rng.uniform(1, n - 1), rng.coin() ? 1 : -1));
        ++crossings;
        break;
      default:
        d.events.push_back(Event::arrow(rng.uniform(1, n), rng.coin() ? 1 : -1));
    }
  }
  while (n > d.base_strands) {
    d.events.push_back(Event::cup(rng.uniform(1, n - 1)));
    n -= 2;
  }
  while (n < d.base_strands) {
    d.events.push_back(Event::cap(rng.uniform(1, n + 1)));
    n += 2;
  }
  return d;
}

/// Result of a batch of differential checks. Each counterexample is replayable
/// text: an expression for word checks, a diagram file for diagram checks.
// Shared reducers are cleared past this many cached words to bound memory.
inline constexpr std::size_t reducer_cache_limit = 2'000'000;

inline void trim_cache(Reducer& r) {
  if (r.cached_words() > reducer_cache_limit) r.clear();
}

struct FuzzReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> counterexamples;  // capped at max_kept
  std::uint64_t max_fuel = 0;
  bool ok() const { return mismatches == 0; }

  void record(std::string example, std::size_t max_kept = 5) {
    ++mismatches;
    if (counterexamples.size() < max_kept) counterexamples.push_back(std::move(example));
  }
};

/// Right-anchored and leftmost-innermost normal forms agree on random words.
inline FuzzReport fuzz_confluence(Rng& rng, const ReductionConfig& cfg, std::size_t cases, ReduceOptions opts = {},
                                  const WordShape& shape = {}) {
  FuzzReport r{"confluence " + cfg.str(), 0, 0, {}, 0};
  ReduceOptions left = opts;
  left.strategy = Strategy::LeftmostInnermost;
  left.corrupt_rule = 0;
  ReduceOptions right = opts;
  right.strategy = Strategy::RightAnchored;
  Reducer a(cfg, right), b(cfg, left);
  for (std::size_t i = 0; i < cases; ++i) {
    const GammaWord w = random_word(rng, cfg.anchor(), shape);
    ++r.cases;
    trim_cache(a);
    trim_cache(b);
    try {
      const ModuleElement x = a.reduce(w), y = b.reduce(w);
      if (x != y) r.record("# right: " + x.str() + "\n# left:  " + y.str() + "\n" + w.str() + "\n");
    } catch (const ReductionError& e) {
      r.record("# " + std::string(e.what()) + "\n" + w.str() + "\n");
    }
  }
  return r;
}

/// Random words reduce within the fuel bound into the basis, and normal forms
/// are fixed points. Each word is charged for every rule application its own
/// reduction depends on, cached or not.
inline FuzzReport fuzz_normal_form(Rng& rng, const ReductionConfig& cfg, std::size_t cases, std::uint64_t fuel_bound,
                                   ReduceOptions opts = {}, const WordShape& shape = {}) {
  FuzzReport r{"normal form " + cfg.str(), 0, 0, {}, 0};
  opts.fuel = fuel_bound;
  Reducer red(cfg, opts), again(cfg, opts);
  for (std::size_t i = 0; i < cases; ++i) {
    const GammaWord w = random_word(rng, cfg.anchor(), shape);
    ++r.cases;
    trim_cache(red);
    try {
      const ModuleElement nf = red.reduce(w);
      r.max_fuel = std::max(r.max_fuel, red.last_fuel_used());
      bool closed = true;
      for (const auto& [u, c] : nf) closed = closed && cfg.in_basis(u);
      if (!closed) r.record("# output leaves the basis: " + nf.str() + "\n" + w.str() + "\n");
      else if (again.reduce(nf) != nf) r.record("# not idempotent: " + nf.str() + "\n" + w.str() + "\n");
    } catch (const ReductionError& e) {
      r.record("# " + std::string(e.what()) + "\n" + w.str() + "\n");
    }
  }
  return r;
}

/// Full state enumeration equals recursive skein resolution, term for term.
inline FuzzReport fuzz_oracle(Rng& rng, std::size_t cases, const DiagramShape& shape = {}) {
  FuzzReport r{"state sum oracle", 0, 0, {}, 0};
  ResolveOptions rec;
  rec.method = ResolveOptions::Method::Recursive;
  for (std::size_t i = 0; i < cases; ++i) {
    const SliceDiagram d = random_diagram(rng, shape);
    ++r.cases;
    if (resolve_states(d) != resolve_states(d, rec)) r.record(d.str());
  }
  return r;
}

/// normal_form(D+) = A normal_form(D0) + A^-1 normal_form(Dinf) at a random crossing.
inline FuzzReport fuzz_skein(Rng& rng, const ReductionConfig& cfg, std::size_t cases, ReduceOptions opts = {},
                             DiagramShape shape = {}) {
  FuzzReport r{"skein triple " + cfg.str(), 0, 0, {}, 0};
  shape.min_crossings = std::max(shape.min_crossings, 1);
  Reducer red(cfg, opts);
  for (std::size_t i = 0; i < cases; ++i) {
    const SliceDiagram d = random_diagram(rng, shape);
    const std::size_t n = d.crossing_count();
    if (n == 0) continue;
    ++r.cases;
    const auto t = skein_triple(d, static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1)));
    try {
      const ModuleElement lhs = diagram_normal_form(t.plus, red);
      const ModuleElement rhs = LaurentPoly::A(1) * diagram_normal_form(t.zero, red) +
                                LaurentPoly::A(-1) * diagram_normal_form(t.infinity, red);
      if (lhs != rhs) r.record(t.plus.str());
    } catch (const ReductionError& e) {
      r.record("# " + std::string(e.what()) + "\n" + t.plus.str());
    }
  }
  return r;
}

/// Normal forms are unchanged by a random applicable move at a random site.
inline FuzzReport fuzz_moves(Rng& rng, const ReductionConfig& cfg, std::size_t cases, ReduceOptions opts = {},
                             const DiagramShape& shape = {}) {
  FuzzReport r{"move invariance " + cfg.str(), 0, 0, {}, 0};
  Reducer red(cfg, opts);
  std::size_t attempts = 0;
  while (r.cases < cases && attempts++ < 50 * cases + 100) {
    const SliceDiagram d = random_diagram(rng, shape);
    const Move m = all_moves[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(all_moves.size()) - 1))];
    auto sites = move_sites(d, m);
    // Prefer deletions and rewrites when present so they are exercised as often as insertions.
    std::vector<MoveSite> in_place;
    for (const auto& s : sites)
      if (!s.insert) in_place.push_back(s);
    if (!in_place.empty() && rng.coin()) sites = in_place;
    if (sites.empty()) continue;
    const MoveSite site = rng.pick(sites);
    const SliceDiagram moved = apply_move(d, m, site);
    if (moved.crossing_count() > 12) continue;
    ++r.cases;
    try {
      if (diagram_normal_form(d, red) != diagram_normal_form(moved, red))
        r.record("# " + std::string(move_name(m)) + " " + site.str() + "\n" + d.str());
    } catch (const ReductionError& e) {
      r.record("# " + std::string(e.what()) + "\n" + d.str());
    }
  }
  return r;
}

}  // namespace kbsm
