// Normal forms of words: onto the annulus basis Sigma_c, or onto the
// fibered-torus basis Sigma'_nu.
//
// Rule letters follow the case list of the reduction map:
//   b  basis word, fixed
//   c  w' x_m l^n (x_c)^k, n >= 1           g  l^n x_m l^n' (x_c)^k, n >= 1
//   d  w' x_m (x_c)^k, m > c+1              h  x_m l^n (x_c)^k, m > c+1
//   e  w' x_m (x_c)^k, m < c                i  x_m l^n (x_c)^k, m < c
//   f  w' x_m l^n x_{c+1} (x_c)^k
//   j  x_{nu+1} l^n (x_nu)^k                k  x_nu l^n (x_nu)^k, k >= 1
// where w' contains at least one x. The torus engine uses c = nu.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kbsm/error.hpp"
#include "kbsm/polyfam.hpp"
#include "kbsm/word.hpp"

namespace kbsm {

enum class Strategy {
  RightAnchored,      // strip the trailing (x_c)-run, dispatch on what precedes it
  LeftmostInnermost,  // repair the innermost violation of the basis shape first
};

struct ReduceOptions {
  std::uint64_t fuel = 1'000'000;  // rule applications per input term
  Strategy strategy = Strategy::RightAnchored;
  bool trace = false;
  // Test hook for the fuzz harness: when nonzero, the right-anchored output of
  // this rule is multiplied by A^2.
  char corrupt_rule = 0;
};

struct TraceStep {
  char rule;
  GammaWord input;
  ModuleElement output;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  std::uint64_t fuel_used = 0;

  std::string str() const {
    std::string out;
    for (const auto& s : steps) {
      out += "rule=";
      out += s.rule;
      out += " in=" + s.input.str() + " out=" + s.output.str() + "\n";
    }
    return out;
  }
};

/// One rule application: the rule letter and its (unreduced) right-hand side.
struct Rewrite {
  char rule = 'b';
  ModuleElement output;
};

namespace detail {

// Mutable word under construction: lam always has one more entry than xs.
struct WordBuilder {
  std::vector<int> lam{0};
  std::vector<int> xs;

  WordBuilder() = default;
  // Copy of the first t x's of w together with runs 0..t.
  WordBuilder(const GammaWord& w, std::size_t t)
      : lam(w.lambda_exps().begin(), w.lambda_exps().begin() + static_cast<std::ptrdiff_t>(t) + 1),
        xs(w.x_indices().begin(), w.x_indices().begin() + static_cast<std::ptrdiff_t>(t)) {}

  WordBuilder& l(int n) {
    lam.back() += n;
    return *this;
  }
  WordBuilder& x(int m) {
    xs.push_back(m);
    lam.push_back(0);
    return *this;
  }
  WordBuilder& xpow(int m, int k) {
    for (int i = 0; i < k; ++i) x(m);
    return *this;
  }
  // Everything of w from run `from_gap` on.
  WordBuilder& rest(const GammaWord& w, std::size_t from_gap) {
    lam.back() += w.lambda_at(from_gap);
    for (std::size_t i = from_gap; i < w.x_count(); ++i) {
      xs.push_back(w.x_at(i));
      lam.push_back(w.lambda_at(i + 1));
    }
    return *this;
  }
  std::size_t gap() const { return xs.size(); }
  GammaWord word() const { return GammaWord(lam, xs); }
};

inline LaurentPoly A(int e) { return LaurentPoly::A(e); }

// Right-hand side of a rule as a flat term list; duplicates are merged later.
struct Terms {
  std::vector<std::pair<GammaWord, LaurentPoly>> items;

  void add(GammaWord w, LaurentPoly c) {
    if (!c.is_zero()) items.emplace_back(std::move(w), std::move(c));
  }
  // scale * (sum_j p_j l^j spliced into `gap` of base)
  void splice(const GammaWord& base, std::size_t gap, const LambdaPoly& p, const LaurentPoly& scale) {
    for (const auto& [j, c] : p.coeffs()) add(base.with_lambda_added(gap, j), c * scale);
  }
  ModuleElement element() const {
    ModuleElement e;
    for (const auto& [w, c] : items) e.add(w, c);
    return e;
  }
};

}  // namespace detail

class Reducer {
 public:
  explicit Reducer(ReductionConfig cfg, ReduceOptions opts = {}) : cfg_(cfg), opts_(opts) {}

  const ReductionConfig& config() const { return cfg_; }
  const ReduceOptions& options() const { return opts_; }
  const ReductionTrace& trace() const { return trace_; }
  /// Rule applications charged so far, summed over all input terms.
  std::uint64_t fuel_used() const { return trace_.fuel_used; }
  /// Largest charge of a single input term in the most recent reduce call.
  std::uint64_t last_fuel_used() const { return last_fuel_; }
  bool in_basis(const GammaWord& w) const { return cfg_.in_basis(w); }

  ModuleElement reduce(const GammaWord& w) {
    last_fuel_ = 0;
    return normal_form(w);
  }

  /// Linear extension; the fuel bound applies to each input term separately.
  ModuleElement reduce(const ModuleElement& e) {
    last_fuel_ = 0;
    ModuleElement out;
    for (const auto& [w, c] : e) out.add_scaled(normal_form(w), c);
    return out;
  }

  /// A single rule application under the configured strategy.
  Rewrite step(const GammaWord& w) const {
    detail::Terms t;
    const char rule = apply_rule(w, t);
    return {rule, t.element()};
  }

  /// Words with a cached rewrite.
  std::size_t cached_words() const { return nodes_.size(); }

  /// Drops all cached rewrites and results.
  void clear() {
    nodes_.clear();
    ids_.clear();
    results_.clear();
    trace_ = {};
  }

 private:
  // A word seen during exploration, with its rule application cached.
  struct Node {
    GammaWord word;
    char rule = 0;  // 0 until expanded
    std::vector<std::pair<std::size_t, LaurentPoly>> out;
    std::uint64_t seen = 0;  // epoch of the last traversal that reached it
    bool done = false;       // finished in that traversal
    std::size_t order = 0;   // post-order position in that traversal
    // Edge coefficients flattened to machine words when they fit: the terms
    // of edge i end at small_end[i].
    bool small_ok = false;
    std::vector<std::pair<int, std::int64_t>> small_terms;
    std::vector<std::uint32_t> small_end;
  };

  std::size_t intern(const GammaWord& w) {
    auto [it, inserted] = ids_.try_emplace(w, nodes_.size());
    if (inserted) {
      nodes_.emplace_back();
      nodes_.back().word = w;
    }
    return it->second;
  }

  char apply_rule(const GammaWord& w, detail::Terms& t) const {
    const char rule = opts_.strategy == Strategy::RightAnchored ? step_right(w, t) : step_left(w, t);
    if (opts_.corrupt_rule != 0 && rule == opts_.corrupt_rule && opts_.strategy == Strategy::RightAnchored)
      for (auto& item : t.items) item.second = item.second.shifted(2);
    return rule;
  }

  void expand(std::size_t v) {
    if (nodes_[v].rule != 0) return;
    detail::Terms t;
    const char rule = apply_rule(nodes_[v].word, t);
    std::vector<std::pair<std::size_t, LaurentPoly>> out;
    out.reserve(t.items.size());
    for (auto& [u, c] : t.items) {
      const std::size_t id = intern(u);
      auto it = std::find_if(out.begin(), out.end(), [id](const auto& e) { return e.first == id; });
      if (it == out.end()) out.emplace_back(id, std::move(c));
      else it->second += c;
    }
    std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
    Node& node = nodes_[v];
    node.rule = rule;
    node.out = std::move(out);
    node.small_ok = true;
    for (const auto& [u, c] : node.out) {
      for (const auto& [e, k] : c.terms()) {
        if (!k.is_small()) node.small_ok = false;
        else node.small_terms.emplace_back(e, k.to_int64());
      }
      node.small_end.push_back(static_cast<std::uint32_t>(node.small_terms.size()));
    }
  }

  ModuleElement edges_as_element(std::size_t v) const {
    ModuleElement e;
    for (const auto& [u, c] : nodes_[v].out) e.add(nodes_[u].word, c);
    return e;
  }

  // Explores every word reachable from w by rule applications (depth first,
  // detecting cycles), then pushes coefficients down in topological order.
  ModuleElement normal_form(const GammaWord& w) {
    if (auto it = results_.find(w); it != results_.end()) {
      last_fuel_ = std::max(last_fuel_, it->second.second);
      return it->second.first;
    }
    const std::uint64_t epoch = ++epoch_;
    std::uint64_t charged = 0;
    std::vector<std::size_t> post;
    std::vector<std::pair<std::size_t, std::size_t>> stack;

    const std::size_t root = intern(w);
    nodes_[root].seen = epoch;
    nodes_[root].done = false;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      const std::size_t v = stack.back().first;
      const std::size_t i = stack.back().second;
      if (i == 0 && nodes_[v].out.empty() && nodes_[v].rule == 0) expand(v);
      if (i == 0) {
        if (nodes_[v].rule != 'b' && ++charged > opts_.fuel)
          throw FuelExhausted("fuel of " + std::to_string(opts_.fuel) +
                              " rule applications exhausted at " + nodes_[v].word.str());
        if (opts_.trace)
          trace_.steps.push_back({nodes_[v].rule, nodes_[v].word,
                                  nodes_[v].rule == 'b' ? ModuleElement(nodes_[v].word) : edges_as_element(v)});
      }
      if (i < nodes_[v].out.size()) {
        stack.back().second = i + 1;
        const std::size_t u = nodes_[v].out[i].first;
        if (nodes_[u].seen == epoch) {
          if (!nodes_[u].done)
            throw CycleDetected("reduction of " + nodes_[u].word.str() + " requires itself");
          continue;
        }
        nodes_[u].seen = epoch;
        nodes_[u].done = false;
        stack.emplace_back(u, 0);
      } else {
        nodes_[v].done = true;
        nodes_[v].order = post.size();
        post.push_back(v);
        stack.pop_back();
      }
    }
    trace_.fuel_used += charged;
    last_fuel_ = std::max(last_fuel_, charged);

    ModuleElement result;
    if (!propagate_small(post, root, result)) result = propagate(post, root);
    results_.emplace(w, std::make_pair(result, charged));
    return result;
  }

  // Reverse post-order puts every word before the words it rewrites to, so
  // coefficients can be pushed along the edges in one sweep.
  ModuleElement propagate(const std::vector<std::size_t>& post, std::size_t root) const {
    std::vector<LaurentPoly> acc(post.size());
    acc[nodes_[root].order] = LaurentPoly(1);
    ModuleElement result;
    for (std::size_t idx = post.size(); idx-- > 0;) {
      if (acc[idx].is_zero()) continue;
      const Node& node = nodes_[post[idx]];
      if (node.rule == 'b') {
        result.add(node.word, acc[idx]);
        continue;
      }
      for (const auto& [u, c] : node.out) acc[nodes_[u].order].add_product(acc[idx], c);
      acc[idx] = LaurentPoly();
    }
    return result;
  }

  // Same sweep with dense machine-word accumulators laid out in one arena:
  // a first pass bounds the exponents reaching each word. Returns false,
  // leaving `result` unspecified, if a coefficient leaves the 64-bit range.
  bool propagate_small(const std::vector<std::size_t>& post, std::size_t root, ModuleElement& result) {
    const std::size_t n = post.size();
    lo_.assign(n, std::numeric_limits<int>::max());
    hi_.assign(n, std::numeric_limits<int>::min());
    lo_[nodes_[root].order] = hi_[nodes_[root].order] = 0;
    for (std::size_t idx = n; idx-- > 0;) {
      const Node& node = nodes_[post[idx]];
      if (node.rule == 'b') continue;
      if (!node.small_ok) return false;
      for (std::size_t i = 0; i < node.out.size(); ++i) {
        const std::size_t t = nodes_[node.out[i].first].order;
        const auto first = node.small_terms[i == 0 ? 0 : node.small_end[i - 1]].first;
        const auto last = node.small_terms[node.small_end[i] - 1].first;
        lo_[t] = std::min(lo_[t], lo_[idx] + first);
        hi_[t] = std::max(hi_[t], hi_[idx] + last);
      }
    }
    off_.resize(n + 1);
    off_[0] = 0;
    for (std::size_t idx = 0; idx < n; ++idx) off_[idx + 1] = off_[idx] + static_cast<std::size_t>(hi_[idx] - lo_[idx] + 1);
    arena_.assign(off_[n], 0);
    arena_[off_[nodes_[root].order] - static_cast<std::size_t>(lo_[nodes_[root].order])] = 1;

    for (std::size_t idx = n; idx-- > 0;) {
      const Node& node = nodes_[post[idx]];
      const std::int64_t* src = arena_.data() + off_[idx];
      const std::size_t len = off_[idx + 1] - off_[idx];
      if (node.rule == 'b') {
        std::vector<LaurentPoly::Term> terms;
        for (std::size_t j = 0; j < len; ++j)
          if (src[j] != 0) terms.emplace_back(lo_[idx] + static_cast<int>(j), Integer(src[j]));
        if (!terms.empty()) result.add(node.word, LaurentPoly::from_terms(std::move(terms)));
        continue;
      }
      std::size_t from = 0;
      for (std::size_t i = 0; i < node.out.size(); ++i) {
        const std::size_t t = nodes_[node.out[i].first].order;
        std::int64_t* dst = arena_.data() + off_[t];
        for (; from < node.small_end[i]; ++from) {
          const auto [e, k] = node.small_terms[from];
          std::int64_t* out = dst + (lo_[idx] + e - lo_[t]);
          for (std::size_t j = 0; j < len; ++j) {
            if (src[j] == 0) continue;
            std::int64_t prod;
            if (__builtin_mul_overflow(src[j], k, &prod) || __builtin_add_overflow(out[j], prod, &out[j]))
              return false;
          }
        }
      }
    }
    return true;
  }

  // Rules j and k for the torus engine, applied to x_m l^n (x_nu)^K with m in
  // {nu, nu+1}. Returns 'b' when the word is already in Sigma'_nu.
  char torus_rule(int m, int n, int K, detail::Terms& t) const {
    using detail::A;
    using detail::WordBuilder;
    const int c = cfg_.nu;
    if (m == c + 1) {
      t.add(WordBuilder().x(c).l(n).xpow(c, K).word(), -A(3));
      return 'j';
    }
    if (m == c && K >= 1) {
      const GammaWord base = WordBuilder().xpow(c, K - 1).word();
      t.splice(base, 0, ppoly_k(-1, n), A(-1));
      t.splice(base, 0, ppoly_k(0, n), -A(-2));
      return 'k';
    }
    return 'b';
  }

  char step_right(const GammaWord& w, detail::Terms& t) const {
    using detail::A;
    using detail::WordBuilder;
    const int c = cfg_.anchor();
    const std::size_t k = w.x_count();
    if (k == 0) return 'b';

    std::size_t K = 0;
    while (K < k && w.x_at(k - 1 - K) == c && w.lambda_at(k - K) == 0) ++K;
    const std::size_t j = k - K;
    const int Ki = static_cast<int>(K);
    const int n = w.lambda_at(j);

    if (j == 0) {
      // l^n (x_c)^K
      if (K == 0) return 'b';
      if (n >= 1) {
        t.add(WordBuilder().l(n - 1).x(c + 1).xpow(c, Ki - 1).word(), A(1));
        t.add(WordBuilder().l(n - 1).x(c - 1).xpow(c, Ki - 1).word(), A(-1));
        return 'g';
      }
      return cfg_.torus() ? torus_rule(c, 0, Ki - 1, t) : 'b';
    }

    if (j == 1) {
      // l^{n0} x_m l^n (x_c)^K
      const int n0 = w.lambda_at(0);
      const int m = w.x_at(0);
      if (n0 >= 1) {
        t.add(WordBuilder().l(n0 - 1).x(m + 1).l(n).xpow(c, Ki).word(), A(1));
        t.add(WordBuilder().l(n0 - 1).x(m - 1).l(n).xpow(c, Ki).word(), A(-1));
        return 'g';
      }
      if (m > c + 1) {
        t.add(WordBuilder().x(m - 1).l(n + 1).xpow(c, Ki).word(), A(1));
        t.add(WordBuilder().x(m - 2).l(n).xpow(c, Ki).word(), -A(2));
        return 'h';
      }
      if (m < c) {
        t.add(WordBuilder().x(m + 1).l(n + 1).xpow(c, Ki).word(), A(-1));
        t.add(WordBuilder().x(m + 2).l(n).xpow(c, Ki).word(), -A(-2));
        return 'i';
      }
      return cfg_.torus() ? torus_rule(m, n, Ki, t) : 'b';
    }

    // j >= 2: w' x_m l^n (x_c)^K with w' holding the first j-1 x's
    const int m = w.x_at(j - 1);
    if (n >= 1) {
      t.add(WordBuilder(w, j - 1).x(m - 1).l(n - 1).xpow(c, Ki).word(), A(1));
      t.add(WordBuilder(w, j - 1).x(m + 1).l(n - 1).xpow(c, Ki).word(), A(-1));
      return 'c';
    }
    if (m > c + 1) {
      t.add(WordBuilder(w, j - 1).l(1).x(m - 1).xpow(c, Ki).word(), A(-1));
      t.add(WordBuilder(w, j - 1).x(m - 2).xpow(c, Ki).word(), -A(-2));
      return 'd';
    }
    if (m < c) {
      t.add(WordBuilder(w, j - 1).l(1).x(m + 1).xpow(c, Ki).word(), A(1));
      t.add(WordBuilder(w, j - 1).x(m + 2).xpow(c, Ki).word(), -A(2));
      return 'e';
    }
    // m == c+1: w'' x_{m2} l^{n2} x_{c+1} (x_c)^K
    const int m2 = w.x_at(j - 2);
    const int n2 = w.lambda_at(j - 1);
    const std::size_t g = j - 2;
    t.splice(WordBuilder(w, g).l(1).xpow(c, Ki).word(), g, ppoly_k(c - m2, n2), -A(-1));
    t.splice(WordBuilder(w, g).xpow(c, Ki).word(), g, ppoly_k(c - 1 - m2, n2), LaurentPoly(2));
    t.add(WordBuilder(w, g).x(m2 + 1).l(n2).xpow(c, Ki + 1).word(), A(-2));
    return 'f';
  }

  char step_left(const GammaWord& w, detail::Terms& t) const {
    using detail::A;
    using detail::WordBuilder;
    const int c = cfg_.anchor();
    const std::size_t k = w.x_count();
    if (k == 0) return 'b';

    const int n0 = w.lambda_at(0);
    const int m1 = w.x_at(0);
    if (n0 >= 1) {
      t.add(WordBuilder().l(n0 - 1).x(m1 + 1).rest(w, 1).word(), A(1));
      t.add(WordBuilder().l(n0 - 1).x(m1 - 1).rest(w, 1).word(), A(-1));
      return 'g';
    }
    if (m1 > c + 1) {
      t.add(WordBuilder().x(m1 - 1).l(1).rest(w, 1).word(), A(1));
      t.add(WordBuilder().x(m1 - 2).rest(w, 1).word(), -A(2));
      return 'h';
    }
    if (m1 < c) {
      t.add(WordBuilder().x(m1 + 1).l(1).rest(w, 1).word(), A(-1));
      t.add(WordBuilder().x(m1 + 2).rest(w, 1).word(), -A(-2));
      return 'i';
    }
    for (std::size_t p = 1; p < k; ++p) {
      const int b = w.x_at(p);
      if (b == c) {
        if (w.lambda_at(p + 1) == 0) continue;
        // x_c l = A x_{c-1} + A^-1 x_{c+1}
        t.add(WordBuilder(w, p).x(c - 1).rest(w, p + 1).word().with_lambda_added(p + 1, -1), A(1));
        t.add(WordBuilder(w, p).x(c + 1).rest(w, p + 1).word().with_lambda_added(p + 1, -1), A(-1));
        return 'c';
      }
      // Move one arrow across x_a l^g x_b so that x_b steps towards x_c.
      const int a = w.x_at(p - 1);
      const int g = w.lambda_at(p);
      const int s = b > c ? 1 : -1;
      const LaurentPoly unit = A(-2 * s);
      t.add(WordBuilder(w, p - 1).x(a + s).l(g).x(b - s).rest(w, p + 1).word(), unit);
      const GammaWord joined = WordBuilder(w, p - 1).rest(w, p + 1).word();
      t.splice(joined, p - 1, ppoly_k(b - a - 2 * s, g), LaurentPoly(1));
      t.splice(joined, p - 1, ppoly_k(b - a, g), -unit);
      return 'f';
    }
    // The word is in Sigma_c.
    return cfg_.torus() ? torus_rule(m1, w.lambda_at(1), static_cast<int>(k) - 1, t) : 'b';
  }

  ReductionConfig cfg_;
  ReduceOptions opts_;
  ReductionTrace trace_;
  std::uint64_t epoch_ = 0;
  std::uint64_t last_fuel_ = 0;
  std::vector<Node> nodes_;
  std::unordered_map<GammaWord, std::size_t, GammaWordHash> ids_;
  // Normal forms of reduced input terms with the fuel they were charged.
  std::unordered_map<GammaWord, std::pair<ModuleElement, std::uint64_t>, GammaWordHash> results_;
  std::vector<int> lo_, hi_;  // scratch for propagate_small
  std::vector<std::size_t> off_;
  std::vector<std::int64_t> arena_;
};

inline ModuleElement reduce_c(const ModuleElement& e, int c, std::uint64_t fuel = 1'000'000) {
  ReduceOptions o;
  o.fuel = fuel;
  return Reducer(ReductionConfig::annulus(c), o).reduce(e);
}

inline ModuleElement reduce_nu(const ModuleElement& e, int beta, std::uint64_t fuel = 1'000'000) {
  ReduceOptions o;
  o.fuel = fuel;
  return Reducer(ReductionConfig::fibered(beta), o).reduce(e);
}

inline ModuleElement reduce(const ModuleElement& e, const ReductionConfig& cfg, std::uint64_t fuel = 1'000'000) {
  ReduceOptions o;
  o.fuel = fuel;
  return Reducer(cfg, o).reduce(e);
}

struct IdentityReport {
  bool holds = false;
  ModuleElement lhs;  // normal form of the left side
  ModuleElement rhs;  // normal form of the right side
  ModuleElement difference() const { return lhs - rhs; }
};

/// Compares normal forms; pass a reducer to share its memo across many checks.
inline IdentityReport check_identity(const ModuleElement& lhs, const ModuleElement& rhs, Reducer& reducer) {
  IdentityReport rep;
  rep.lhs = reducer.reduce(lhs);
  rep.rhs = reducer.reduce(rhs);
  rep.holds = rep.lhs == rep.rhs;
  return rep;
}

inline IdentityReport check_identity(const ModuleElement& lhs, const ModuleElement& rhs,
                                     const ReductionConfig& cfg) {
  Reducer reducer(cfg);
  return check_identity(lhs, rhs, reducer);
}

}  // namespace kbsm
