// Kauffman state sums of slice diagrams and the pipelines onto the two bases.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "kbsm/diagram.hpp"
#include "kbsm/polyfam.hpp"
#include "kbsm/reduce.hpp"
#include "kbsm/word.hpp"

namespace kbsm {

/// Curves of a crossingless diagram. Throws DiagramError if a crossing is present
/// or a curve winds more than once.
inline std::vector<TracedCurve> trace_curves(const SliceDiagram& d) {
  require_valid(d);
  auto curves = detail::Tracer(d).curves();
  for (const auto& c : curves)
    if (c.winding < -1 || c.winding > 1)
      throw DiagramError("traced curve winds " + std::to_string(c.winding) + " times");
  return curves;
}

/// Essential order, regions and nesting of a crossingless diagram. Arrowless
/// empty circles are kept; see CrosslessDiagram::strip_null_circles.
inline CrosslessDiagram crossless_form(const SliceDiagram& d) {
  const auto curves = trace_curves(d);
  const int slices = std::max<int>(1, static_cast<int>(d.events.size()));
  const auto counts = d.strand_counts();
  std::vector<std::vector<int>> at(slices);
  for (int s = 0; s < slices; ++s) at[s].assign(counts[s] + 1, -1);
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (const auto& [s, p] : curves[i].segments) at[s][p] = static_cast<int>(i);

  // Parity of curve `other` below the first segment of curve `i`.
  auto below_odd = [&](std::size_t other, std::size_t i) {
    const auto [s, p] = curves[i].segments.front();
    int n = 0;
    for (int q = 1; q < p; ++q) n += at[s][q] == static_cast<int>(other);
    return (n & 1) != 0;
  };

  std::vector<std::size_t> ess, triv;
  for (std::size_t i = 0; i < curves.size(); ++i) (curves[i].essential() ? ess : triv).push_back(i);

  CrosslessDiagram out;
  out.essential.assign(ess.size(), 0);
  out.regions.assign(ess.size() + 1, {});
  for (std::size_t e : ess) {
    std::size_t rank = 0;
    for (std::size_t f : ess)
      if (f != e && below_odd(f, e)) ++rank;
    out.essential[rank] = curves[e].net;
  }

  const std::size_t t = triv.size();
  std::vector<std::vector<char>> inside(t, std::vector<char>(t, 0));  // inside[a][b]: b lies in a
  std::vector<int> depth(t, 0);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = 0; b < t; ++b)
      if (a != b && below_odd(triv[a], triv[b])) {
        inside[a][b] = 1;
        ++depth[b];
      }
  std::vector<int> parent(t, -1);
  for (std::size_t b = 0; b < t; ++b)
    for (std::size_t a = 0; a < t; ++a)
      if (inside[a][b] && depth[a] == depth[b] - 1) parent[b] = static_cast<int>(a);

  std::function<CircleTree(std::size_t)> build = [&](std::size_t a) {
    CircleTree node{curves[triv[a]].net, {}};
    for (std::size_t b = 0; b < t; ++b)
      if (parent[b] == static_cast<int>(a)) node.children.push_back(build(b));
    return node;
  };
  for (std::size_t a = 0; a < t; ++a) {
    if (parent[a] != -1) continue;
    std::size_t region = 0;
    for (std::size_t e : ess)
      if (below_odd(e, triv[a])) ++region;
    out.regions[region].push_back(build(a));
  }
  out.canonicalize();
  return out;
}

/// Finite R-combination of crossingless diagrams.
struct StateSum {
  std::map<CrosslessDiagram, LaurentPoly> terms;

  void add(const CrosslessDiagram& d, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  void add(const StateSum& o) {
    for (const auto& [d, c] : o.terms) add(d, c);
  }
  std::size_t size() const { return terms.size(); }
  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [d, c] : terms) {
      if (!s.empty()) s += " + ";
      s += "{" + c.str() + "}*" + d.str();
    }
    return s;
  }
  friend bool operator==(const StateSum&, const StateSum&) = default;
};

struct ResolveOptions {
  enum class Method { Enumerate, Recursive };
  std::size_t max_crossings = 20;
  Method method = Method::Enumerate;
  unsigned threads = 0;  // 0: hardware concurrency, used from 12 crossings up
};

namespace detail {

// Crossing smoothings as event edits: the horizontal one joins the two
// strands on each side, the vertical one lets them pass.
inline void smooth_into(std::vector<Event>& out, const Event& e, bool horizontal) {
  if (horizontal) {
    out.push_back(Event::cup(e.pos));
    out.push_back(Event::cap(e.pos));
  }
}

// The A-smoothing of a positive crossing is horizontal, of a negative one vertical.
inline bool horizontal_for(const Event& e, bool a_smoothing) { return (e.kind == EventKind::CrossPos) == a_smoothing; }

inline void add_state(StateSum& sum, const SliceDiagram& smoothed, int a_exp) {
  CrosslessDiagram cd = crossless_form(smoothed);
  const int nulls = cd.strip_null_circles();
  LaurentPoly c = LaurentPoly::A(a_exp);
  for (int i = 0; i < nulls; ++i) c = c * loop_value();
  sum.add(cd, c);
}

inline StateSum enumerate_states(const SliceDiagram& d, std::uint64_t lo, std::uint64_t hi) {
  StateSum sum;
  SliceDiagram s{d.base_strands, {}};
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    s.events.clear();
    int a_exp = 0;
    std::size_t j = 0;
    for (const auto& e : d.events) {
      if (!e.is_crossing()) {
        s.events.push_back(e);
        continue;
      }
      const bool a = (mask >> j++) & 1;
      a_exp += a ? 1 : -1;
      smooth_into(s.events, e, horizontal_for(e, a));
    }
    add_state(sum, s, a_exp);
  }
  return sum;
}

inline void resolve_recursive(const SliceDiagram& d, std::size_t from, int a_exp, StateSum& sum) {
  auto it = std::find_if(d.events.begin() + static_cast<std::ptrdiff_t>(from), d.events.end(),
                         [](const Event& e) { return e.is_crossing(); });
  if (it == d.events.end()) {
    add_state(sum, d, a_exp);
    return;
  }
  const std::size_t i = static_cast<std::size_t>(it - d.events.begin());
  for (bool a : {true, false}) {
    SliceDiagram next{d.base_strands, {}};
    next.events.assign(d.events.begin(), d.events.begin() + static_cast<std::ptrdiff_t>(i));
    smooth_into(next.events, d.events[i], horizontal_for(d.events[i], a));
    const std::size_t resume = next.events.size();
    next.events.insert(next.events.end(), d.events.begin() + static_cast<std::ptrdiff_t>(i) + 1, d.events.end());
    resolve_recursive(next, resume, a_exp + (a ? 1 : -1), sum);
  }
}

}  // namespace detail

/// Sum over all marker assignments of A^{p(s)-n(s)} times the smoothed
/// diagram, with each empty arrowless circle replaced by -A^2 - A^-2.
inline StateSum resolve_states(const SliceDiagram& d, const ResolveOptions& opts = {}) {
  require_valid(d);
  const std::size_t n = d.crossing_count();
  if (n > opts.max_crossings)
    throw CrossingLimitExceeded("diagram has " + std::to_string(n) + " crossings, limit is " +
                                std::to_string(opts.max_crossings));
  StateSum sum;
  if (opts.method == ResolveOptions::Method::Recursive) {
    detail::resolve_recursive(d, 0, 0, sum);
    return sum;
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  if (n < 12) workers = 1;
  if (workers == 1) return detail::enumerate_states(d, 0, total);
  std::vector<StateSum> parts(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] { parts[w] = detail::enumerate_states(d, total * w / workers, total * (w + 1) / workers); });
  for (auto& th : pool) th.join();
  for (const auto& p : parts) sum.add(p);
  return sum;
}

namespace detail {

inline LambdaPoly forest_value(const std::vector<CircleTree>& forest);

// A circle with net n over content sum c_j l^j is sum c_j P_{n,j}.
inline LambdaPoly circle_value(const CircleTree& t) {
  if (t.children.empty()) return ppoly(t.net);
  const LambdaPoly inner = forest_value(t.children);
  LambdaPoly out;
  for (const auto& [j, c] : inner.coeffs()) out += ppoly_k(t.net, j) * c;
  return out;
}

inline LambdaPoly forest_value(const std::vector<CircleTree>& forest) {
  LambdaPoly v(LaurentPoly(1));
  for (const auto& t : forest) v = v * circle_value(t);
  return v;
}

}  // namespace detail

/// Essential curve with net m becomes x_m; each region's circles become the
/// lambda polynomial spliced into that gap.
inline ModuleElement to_gamma(const CrosslessDiagram& d) {
  ModuleElement w = ModuleElement::from_lambda(detail::forest_value(d.regions[0]));
  for (std::size_t j = 0; j < d.essential.size(); ++j)
    w = w * GammaWord::x(d.essential[j]) * ModuleElement::from_lambda(detail::forest_value(d.regions[j + 1]));
  return w;
}

inline ModuleElement to_gamma(const StateSum& s) {
  ModuleElement out;
  for (const auto& [d, c] : s.terms) out.add_scaled(to_gamma(d), c);
  return out;
}

/// Normal form of a diagram in the configured basis.
inline ModuleElement diagram_normal_form(const SliceDiagram& d, Reducer& reducer, const ResolveOptions& ro = {}) {
  return reducer.reduce(to_gamma(resolve_states(d, ro)));
}

inline ModuleElement psi_c(const SliceDiagram& d, int c, const ResolveOptions& ro = {}, ReduceOptions opts = {}) {
  Reducer r(ReductionConfig::annulus(c), opts);
  return diagram_normal_form(d, r, ro);
}

inline ModuleElement phi_beta(const SliceDiagram& d, int beta, const ResolveOptions& ro = {}, ReduceOptions opts = {}) {
  Reducer r(ReductionConfig::fibered(beta), opts);
  return diagram_normal_form(d, r, ro);
}

struct EmbeddedWord {
  SliceDiagram diagram;
  LaurentPoly coefficient;  // coefficient times the image of the diagram is the word
};

/// Crossingless diagram of a word: x_m is an essential curve with |m| arrows,
/// each l a one-arrow circle in its gap, rescaled by -A^-3.
inline EmbeddedWord embed_word(const GammaWord& w) {
  EmbeddedWord out;
  const int k = static_cast<int>(w.x_count());
  out.diagram.base_strands = k;
  int lambdas = 0;
  for (int g = 0; g <= k; ++g) {
    for (int i = 0; i < w.lambda_at(static_cast<std::size_t>(g)); ++i) {
      out.diagram.events.push_back(Event::cap(g + 1));
      out.diagram.events.push_back(Event::arrow(g + 1, 1));
      out.diagram.events.push_back(Event::cup(g + 1));
      ++lambdas;
    }
  }
  for (int j = 1; j <= k; ++j) {
    const int m = w.x_at(static_cast<std::size_t>(j - 1));
    for (int i = 0; i < (m < 0 ? -m : m); ++i) out.diagram.events.push_back(Event::arrow(j, m));
  }
  out.coefficient = LaurentPoly::monomial(Integer(lambdas % 2 ? -1 : 1), -3 * lambdas);
  return out;
}

}  // namespace kbsm
