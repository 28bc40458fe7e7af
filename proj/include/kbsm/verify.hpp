// Identity suites: the polynomial recursions, the annulus-engine relations,
// the fibered-torus relations and the diagram round trips, each checked
// exactly over a parameter grid.
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kbsm/polyfam.hpp"
#include "kbsm/reduce.hpp"
#include "kbsm/states.hpp"
#include "kbsm/word.hpp"

namespace kbsm {

/// Outcome of one named identity over its grid.
struct IdentityResult {
  std::string name;
  std::string space;  // "" for pure polynomial identities
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;  // parameters and difference of the first failing instance
  bool ok() const { return failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<IdentityResult> results;

  bool ok() const {
    for (const auto& r : results)
      if (!r.ok()) return false;
    return true;
  }
  std::size_t instances() const {
    std::size_t n = 0;
    for (const auto& r : results) n += r.instances;
    return n;
  }
  void append(const SuiteReport& o) { results.insert(results.end(), o.results.begin(), o.results.end()); }
};

/// Grid sizes. Negative radii or bounds give empty grids (vacuous pass).
struct VerifyGrid {
  int poly_n = 12;      // n in [-poly_n, poly_n] for the P recursions
  int poly_k = 8;       // k in [0, poly_k]
  int q_n = 15;         // |n| <= q_n for the Q claims
  int radius = 4;       // m, k in [c - radius, c + radius] (annulus), m in [nu - radius, nu + radius] (torus)
  int omega_range = 5;  // m, n in [-omega_range, omega_range] for the three-term relations
  int omega_k = 4;      // k in [0, omega_k] for the three-term relations and the P_{c-m} relation
  int torus_n = 4;      // n in [0, torus_n]
  int torus_k = 3;      // k in [0, torus_k]
  int embed_n = 4;        // lambda power of annulus basis words in the round trips
  int embed_k = 4;        // trailing (x_c)-power of annulus basis words in the round trips
  int embed_torus_n = 6;  // lambda power of torus basis words in the round trips
  int basis_shift = 3;    // c2 = c1 +- basis_shift in the basis-change round trip
  std::vector<int> cs{-2, 0, 3};
  std::vector<int> betas{3, 5, 7};
};

/// Words of Sigma_c with lambda power at most n and trailing (x_c)-power at
/// most k: l^j, x_c l^j (x_c)^i and x_{c+1} l^j (x_c)^i.
inline std::vector<GammaWord> sigma_c_words(int c, int n, int k) {
  std::vector<GammaWord> out;
  for (int j = 0; j <= n; ++j) out.push_back(GammaWord::lambda(j));
  for (int e : {0, 1})
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= k; ++i) out.push_back(GammaWord::x(c + e) * GammaWord::lambda(j) * GammaWord::x_power(c, i));
  return out;
}

/// Words of Sigma'_nu with lambda power at most n: l^j and x_nu l^j.
inline std::vector<GammaWord> sigma_prime_words(int nu, int n) {
  std::vector<GammaWord> out;
  for (int j = 0; j <= n; ++j) out.push_back(GammaWord::lambda(j));
  for (int j = 0; j <= n; ++j) out.push_back(GammaWord::x(nu) * GammaWord::lambda(j));
  return out;
}

/// Ambient words used for w1, w2: 1, l^2, x_c, x_{c+1} l, x_c x_c.
inline std::vector<GammaWord> ambient_pool(int c) {
  return {GammaWord(), GammaWord::lambda(2), GammaWord::x(c), GammaWord::x(c + 1) * GammaWord::lambda(1),
          GammaWord::x_power(c, 2)};
}

namespace detail {

inline ModuleElement el(const GammaWord& w) { return ModuleElement(w); }
inline ModuleElement el(const LambdaPoly& p) { return ModuleElement::from_lambda(p); }
inline ModuleElement X(int m) { return ModuleElement(GammaWord::x(m)); }
inline ModuleElement L(int n) { return ModuleElement(GammaWord::lambda(n)); }
inline ModuleElement Xp(int m, int k) { return ModuleElement(GammaWord::x_power(m, k)); }
inline ModuleElement P(int n, int k = 0) { return ModuleElement::from_lambda(ppoly_k(n, k)); }
inline ModuleElement Q(int n) { return ModuleElement::from_lambda(qpoly(n)); }
inline LaurentPoly a(int e) { return LaurentPoly::A(e); }

// Accumulates instances of one identity; equality is tested on normal forms
// of lhs - rhs.
class IdentityCheck {
 public:
  IdentityCheck(std::string name, Reducer* reducer) : reducer_(reducer) {
    res_.name = std::move(name);
    if (reducer_) res_.space = reducer_->config().str();
  }

  void expect_zero(const ModuleElement& lhs_minus_rhs, const std::function<std::string()>& where) {
    ++res_.instances;
    ModuleElement d = reducer_ ? reducer_->reduce(lhs_minus_rhs) : lhs_minus_rhs;
    if (!d.is_zero()) fail(where() + ": difference " + d.str());
  }
  void expect_equal(const LambdaPoly& lhs, const LambdaPoly& rhs, const std::function<std::string()>& where) {
    ++res_.instances;
    if (lhs != rhs) fail(where() + ": " + lhs.str() + " vs " + rhs.str());
  }
  void expect(bool cond, const std::function<std::string()>& where) {
    ++res_.instances;
    if (!cond) fail(where());
  }
  IdentityResult result() const { return res_; }

 private:
  void fail(const std::string& msg) {
    if (res_.failures++ == 0) res_.first_failure = msg;
  }
  Reducer* reducer_;
  IdentityResult res_;
};

inline std::string params(std::initializer_list<std::pair<const char*, int>> ps) {
  std::string s;
  for (const auto& [k, v] : ps) {
    if (!s.empty()) s += ' ';
    s += k;
    s += '=';
    s += std::to_string(v);
  }
  return s;
}

inline std::string params_w(std::initializer_list<std::pair<const char*, int>> ps, const GammaWord& w1,
                            const GammaWord& w2) {
  return params(ps) + " w1=" + w1.str() + " w2=" + w2.str();
}

}  // namespace detail

/// The P_n, P_{n,k} and Q_n identities.
inline SuiteReport verify_polys(const VerifyGrid& g = {}) {
  using namespace detail;
  SuiteReport rep{"polys", {}};
  const LambdaPoly lam = LambdaPoly::lambda(1);

  IdentityCheck rec("P_n - A l P_{n-1} + A^2 P_{n-2} = 0", nullptr);
  IdentityCheck closed("P_n closed form equals recursion", nullptr);
  for (int n = -g.poly_n; n <= g.poly_n; ++n) {
    rec.expect_equal(ppoly(n), lam * ppoly(n - 1) * a(1) - ppoly(n - 2) * a(2),
                     [&] { return params({{"n", n}}); });
    closed.expect_equal(ppoly(n), ppoly_by_recursion(n), [&] { return params({{"n", n}}); });
  }

  IdentityCheck two("P_{n,k} = A P_{n+1,k-1} + A^-1 P_{n-1,k-1}", nullptr);
  IdentityCheck three("P_{n,k} = A l P_{n-1,k} - A^2 P_{n-2,k}", nullptr);
  IdentityCheck base("P_{n,0} = P_n", nullptr);
  for (int n = -g.poly_n; n <= g.poly_n; ++n) {
    if (g.poly_k >= 0) base.expect_equal(ppoly_k(n, 0), ppoly(n), [&] { return params({{"n", n}}); });
    for (int k = 0; k <= g.poly_k; ++k) {
      if (k >= 1)
        two.expect_equal(ppoly_k(n, k), ppoly_k(n + 1, k - 1) * a(1) + ppoly_k(n - 1, k - 1) * a(-1),
                         [&] { return params({{"n", n}, {"k", k}}); });
      three.expect_equal(ppoly_k(n, k), lam * ppoly_k(n - 1, k) * a(1) - ppoly_k(n - 2, k) * a(2),
                         [&] { return params({{"n", n}, {"k", k}}); });
    }
  }

  IdentityCheck anti("Q_{-n} = -Q_n", nullptr);
  IdentityCheck qrec("Q_{n+2} = l Q_{n+1} - Q_n", nullptr);
  IdentityCheck deg("deg Q_n = |n| - 1, leading coefficient sign(n)", nullptr);
  for (int n = -g.q_n; n <= g.q_n; ++n) {
    anti.expect_equal(qpoly(-n), -qpoly(n), [&] { return params({{"n", n}}); });
    if (n + 2 <= g.q_n) qrec.expect_equal(qpoly(n + 2), lam * qpoly(n + 1) - qpoly(n), [&] { return params({{"n", n}}); });
    const LambdaPoly& q = qpoly(n);
    if (n == 0) {
      deg.expect(q.is_zero(), [] { return std::string("Q_0 is not zero"); });
    } else {
      const int expect_deg = (n < 0 ? -n : n) - 1;
      const LaurentPoly expect_lead(n > 0 ? 1 : -1);
      deg.expect(q.degree() == expect_deg && q.leading() == expect_lead, [&] {
        return params({{"n", n}}) + ": Q_n = " + q.str();
      });
    }
  }

  for (auto* c : {&rec, &two, &three, &base, &closed, &anti, &qrec, &deg}) rep.results.push_back(c->result());
  return rep;
}

/// Relations of the annulus engine for one value of c.
inline SuiteReport verify_annulus_c(int c, const VerifyGrid& g = {}, ReduceOptions opts = {}) {
  using namespace detail;
  Reducer red(ReductionConfig::annulus(c), opts);
  SuiteReport rep{"annulus", {}};
  const auto pool = ambient_pool(c);
  const int R = g.radius;

  IdentityCheck e4("x_m = A l x_{m+1} - A^2 x_{m+2}", &red);
  IdentityCheck e5("x_m = A x_{m-1} l - A^2 x_{m-2}", &red);
  IdentityCheck e6("x_m = -A^{m-k} x_k Q_{m-k-1} + A^{m-k-1} x_{k+1} Q_{m-k}", &red);
  IdentityCheck e7("x_m = -A^{k-m} Q_{m-k-1} x_k + A^{k-m+1} Q_{m-k} x_{k+1}", &red);
  IdentityCheck e8("A l^k x_{m+n} + A^-1 x_m P_{n,k} - A x_{m-1} P_{n-1,k} - A^-1 l^k x_{m+n-2} = 0", &red);
  IdentityCheck e9("A P_{n,k} x_m + A^-1 x_{m-n} l^k - A x_{m-n-2} l^k - A^-1 P_{n+1,k} x_{m-1} = 0", &red);
  IdentityCheck e10("A P_{n-m,k} + A^-1 x_m l^k x_n - A x_{m-1} l^k x_{n+1} - A^-1 P_{n-m+2,k} = 0", &red);
  IdentityCheck e11(
      "P_{c-m} x_{c+1} (x_c)^k = A^-2 P_{c-m+1} (x_c)^{k+1} - A^-2 x_{m+1} (x_c)^k + x_{m-1} (x_c)^k", &red);

  for (const auto& w1g : pool) {
    const ModuleElement w1 = el(w1g);
    for (const auto& w2g : pool) {
      const ModuleElement w2 = el(w2g);
      for (int m = c - R; m <= c + R; ++m) {
        const ModuleElement lhs = w1 * X(m) * w2;
        e4.expect_zero(lhs - a(1) * (w1 * L(1) * X(m + 1) * w2) + a(2) * (w1 * X(m + 2) * w2),
                       [&] { return params_w({{"m", m}}, w1g, w2g); });
        e5.expect_zero(lhs - a(1) * (w1 * X(m - 1) * L(1) * w2) + a(2) * (w1 * X(m - 2) * w2),
                       [&] { return params_w({{"m", m}}, w1g, w2g); });
        for (int k = c - R; k <= c + R; ++k) {
          e6.expect_zero(lhs + a(m - k) * (w1 * X(k) * Q(m - k - 1) * w2) -
                             a(m - k - 1) * (w1 * X(k + 1) * Q(m - k) * w2),
                         [&] { return params_w({{"m", m}, {"k", k}}, w1g, w2g); });
          e7.expect_zero(lhs + a(k - m) * (w1 * Q(m - k - 1) * X(k) * w2) -
                             a(k - m + 1) * (w1 * Q(m - k) * X(k + 1) * w2),
                         [&] { return params_w({{"m", m}, {"k", k}}, w1g, w2g); });
        }
      }
      for (int m = -g.omega_range; m <= g.omega_range; ++m) {
        for (int n = -g.omega_range; n <= g.omega_range; ++n) {
          for (int k = 0; k <= g.omega_k; ++k) {
            auto where = [&] { return params_w({{"m", m}, {"n", n}, {"k", k}}, w1g, w2g); };
            e8.expect_zero(w1 *
                               (a(1) * (L(k) * X(m + n)) + a(-1) * (X(m) * P(n, k)) -
                                a(1) * (X(m - 1) * P(n - 1, k)) - a(-1) * (L(k) * X(m + n - 2))) *
                               w2,
                           where);
            e9.expect_zero(w1 *
                               (a(1) * (P(n, k) * X(m)) + a(-1) * (X(m - n) * L(k)) -
                                a(1) * (X(m - n - 2) * L(k)) - a(-1) * (P(n + 1, k) * X(m - 1))) *
                               w2,
                           where);
            e10.expect_zero(w1 *
                                (a(1) * P(n - m, k) + a(-1) * (X(m) * L(k) * X(n)) -
                                 a(1) * (X(m - 1) * L(k) * X(n + 1)) - a(-1) * P(n - m + 2, k)) *
                                w2,
                            where);
          }
        }
      }
    }
    for (int m = c - R; m <= c + R; ++m) {
      for (int k = 0; k <= g.omega_k; ++k) {
        e11.expect_zero(w1 * (P(c - m) * X(c + 1) * Xp(c, k) - a(-2) * (P(c - m + 1) * Xp(c, k + 1)) +
                              a(-2) * (X(m + 1) * Xp(c, k)) - X(m - 1) * Xp(c, k)),
                        [&] { return params({{"m", m}, {"k", k}}) + " w1=" + w1g.str(); });
      }
    }
  }

  for (auto* chk : {&e4, &e5, &e6, &e7, &e8, &e9, &e10, &e11}) rep.results.push_back(chk->result());
  return rep;
}

inline SuiteReport verify_annulus(const VerifyGrid& g = {}, ReduceOptions opts = {}) {
  SuiteReport rep{"annulus", {}};
  for (int c : g.cs) rep.append(verify_annulus_c(c, g, opts));
  return rep;
}

/// Relations of the fibered-torus engine for one value of beta.
inline SuiteReport verify_torus_beta(int beta, const VerifyGrid& g = {}, ReduceOptions opts = {}) {
  using namespace detail;
  const ReductionConfig cfg = ReductionConfig::fibered(beta);
  const int nu = cfg.nu;
  Reducer red(cfg, opts);
  SuiteReport rep{"torus", {}};
  const auto pool = ambient_pool(nu);
  const int R = g.radius;

  IdentityCheck s1("x_{nu+1} l^n (x_nu)^k = -A^3 x_nu l^n (x_nu)^k", &red);
  IdentityCheck s2("x_nu l^n (x_nu)^k = A^-1 P_{-1,n} (x_nu)^{k-1} - A^-2 P_{0,n} (x_nu)^{k-1}", &red);
  IdentityCheck e13("P_{m,n} w - A P_{m-1,n} w - A^-1 x_{nu+1} l^n x_{m+nu} w = 0", &red);
  IdentityCheck e14("l^n x_m w - A l^n x_{m+1} w - A^-1 x_{nu+1} P_{m-nu,n} w = 0", &red);
  IdentityCheck e15("x_{nu+1} l^n x_{nu+1} (x_nu)^k = -A^3 x_nu l^n x_{nu+1} (x_nu)^k", &red);

  for (int n = 0; n <= g.torus_n; ++n) {
    for (int k = 0; k <= g.torus_k; ++k) {
      auto where = [&] { return params({{"n", n}, {"k", k}}); };
      s1.expect_zero(X(nu + 1) * L(n) * Xp(nu, k) + a(3) * (X(nu) * L(n) * Xp(nu, k)), where);
      if (k >= 1)
        s2.expect_zero(X(nu) * L(n) * Xp(nu, k) - a(-1) * (P(-1, n) * Xp(nu, k - 1)) +
                           a(-2) * (P(0, n) * Xp(nu, k - 1)),
                       where);
      e15.expect_zero(X(nu + 1) * L(n) * X(nu + 1) * Xp(nu, k) + a(3) * (X(nu) * L(n) * X(nu + 1) * Xp(nu, k)),
                      where);
    }
  }
  for (const auto& wg : pool) {
    const ModuleElement w = el(wg);
    for (int m = nu - R; m <= nu + R; ++m) {
      for (int n = 0; n <= g.torus_n; ++n) {
        auto where = [&] { return params({{"m", m}, {"n", n}}) + " w=" + wg.str(); };
        e13.expect_zero((P(m, n) - a(1) * P(m - 1, n) - a(-1) * (X(nu + 1) * L(n) * X(m + nu))) * w, where);
        e14.expect_zero((L(n) * X(m) - a(1) * (L(n) * X(m + 1)) - a(-1) * (X(nu + 1) * P(m - nu, n))) * w, where);
      }
    }
  }

  for (auto* chk : {&s1, &s2, &e13, &e14, &e15}) rep.results.push_back(chk->result());
  return rep;
}

inline SuiteReport verify_torus(const VerifyGrid& g = {}, ReduceOptions opts = {}) {
  SuiteReport rep{"torus", {}};
  for (int beta : g.betas) rep.append(verify_torus_beta(beta, g, opts));
  return rep;
}

/// Diagram pipelines on embedded basis words: both round trips, the change of
/// annulus basis and back, and the trivial-circle relation.
inline SuiteReport verify_diagram(const VerifyGrid& g = {}, ReduceOptions opts = {}) {
  using namespace detail;
  SuiteReport rep{"diagram", {}};
  IdentityCheck rt_c("psi_c(embed(w)) = w on Sigma_c", nullptr);
  IdentityCheck rt_nu("phi_beta(embed(w)) = w on Sigma'_nu", nullptr);
  IdentityCheck change("Sigma_c1 -> Sigma_c2 -> Sigma_c1 is the identity", nullptr);
  IdentityCheck loop("a disjoint empty circle multiplies psi_c by -A^2-A^-2", nullptr);

  for (int c : g.cs) {
    Reducer red(ReductionConfig::annulus(c), opts);
    for (const auto& w : sigma_c_words(c, g.embed_n, g.embed_k)) {
      const EmbeddedWord e = embed_word(w);
      const ModuleElement image = diagram_normal_form(e.diagram, red) * e.coefficient;
      rt_c.expect(image == ModuleElement(w), [&] { return "c=" + std::to_string(c) + " w=" + w.str() + ": " + image.str(); });

      SliceDiagram with_loop = e.diagram;
      with_loop.events.insert(with_loop.events.begin(), {Event::cap(1), Event::cup(1)});
      const ModuleElement looped = diagram_normal_form(with_loop, red) * e.coefficient;
      loop.expect(looped == ModuleElement(w) * loop_value(),
                  [&] { return "c=" + std::to_string(c) + " w=" + w.str() + ": " + looped.str(); });
    }
    if (g.basis_shift < 0) continue;
    for (int c2 : {c - g.basis_shift, c + g.basis_shift}) {
      Reducer there(ReductionConfig::annulus(c2), opts);
      for (const auto& w : sigma_c_words(c, g.embed_n, g.embed_k)) {
        const ModuleElement back = red.reduce(there.reduce(ModuleElement(w)));
        change.expect(back == ModuleElement(w), [&] {
          return "c1=" + std::to_string(c) + " c2=" + std::to_string(c2) + " w=" + w.str() + ": " + back.str();
        });
      }
    }
  }
  for (int beta : g.betas) {
    const ReductionConfig cfg = ReductionConfig::fibered(beta);
    Reducer red(cfg, opts);
    for (const auto& w : sigma_prime_words(cfg.nu, g.embed_torus_n)) {
      const EmbeddedWord e = embed_word(w);
      const ModuleElement image = diagram_normal_form(e.diagram, red) * e.coefficient;
      rt_nu.expect(image == ModuleElement(w),
                   [&] { return "beta=" + std::to_string(beta) + " w=" + w.str() + ": " + image.str(); });
    }
  }

  for (auto* chk : {&rt_c, &rt_nu, &change, &loop}) rep.results.push_back(chk->result());
  return rep;
}

}  // namespace kbsm
