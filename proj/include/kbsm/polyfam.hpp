// Polynomials in lambda over Z[A^{+-1}] and the Q, P, P_{n,k} families.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "kbsm/laurent.hpp"

namespace kbsm {

/// Sum of coeff_j * l^j over non-negative degrees j; zero coefficients are never stored.
class LambdaPoly {
 public:
  using Map = std::map<int, LaurentPoly>;

  LambdaPoly() = default;
  LambdaPoly(LaurentPoly constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) coeffs_.emplace(0, std::move(constant));
  }
  static LambdaPoly monomial(LaurentPoly coeff, int degree) {
    LambdaPoly p;
    if (degree < 0) throw std::invalid_argument("negative lambda degree");
    if (!coeff.is_zero()) p.coeffs_.emplace(degree, std::move(coeff));
    return p;
  }
  /// l^degree
  static LambdaPoly lambda(int degree = 1) { return monomial(LaurentPoly(1), degree); }

  bool is_zero() const { return coeffs_.empty(); }
  const Map& coeffs() const { return coeffs_; }
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  LaurentPoly coeff(int j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? LaurentPoly() : it->second;
  }
  LaurentPoly leading() const { return coeffs_.empty() ? LaurentPoly() : coeffs_.rbegin()->second; }

  void add_term(int degree, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(degree, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    for (const auto& [j, c] : o.coeffs_) add_term(j, c);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) {
    for (const auto& [j, c] : o.coeffs_) add_term(j, -c);
    return *this;
  }
  LambdaPoly operator-() const {
    LambdaPoly r = *this;
    for (auto& [j, c] : r.coeffs_) c = -c;
    return r;
  }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }

  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly r;
    for (const auto& [i, ci] : a.coeffs_)
      for (const auto& [j, cj] : b.coeffs_) r.add_term(i + j, ci * cj);
    return r;
  }
  friend LambdaPoly operator*(const LambdaPoly& a, const LaurentPoly& s) {
    LambdaPoly r;
    if (s.is_zero()) return r;
    for (const auto& [j, c] : a.coeffs_) r.coeffs_.emplace(j, c * s);
    return r;
  }
  friend LambdaPoly operator*(const LaurentPoly& s, const LambdaPoly& a) { return a * s; }

  /// Multiplication by l^k.
  LambdaPoly raised(int k) const {
    LambdaPoly r;
    for (const auto& [j, c] : coeffs_) r.coeffs_.emplace_hint(r.coeffs_.end(), j + k, c);
    return r;
  }

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

  /// e.g. "(-A^-2-A^2) + (-A^3)*l^1"; zero prints as "0".
  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [j, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      if (j > 0) out += "*l^" + std::to_string(j);
    }
    return out;
  }

 private:
  Map coeffs_;
};

inline LambdaPoly lam_add(const LambdaPoly& a, const LambdaPoly& b) { return a + b; }
inline LambdaPoly lam_mul(const LambdaPoly& a, const LambdaPoly& b) { return a * b; }
inline LambdaPoly lam_scale(const LambdaPoly& p, const LaurentPoly& r) { return p * r; }

namespace detail {

struct PairHash {
  std::size_t operator()(const std::pair<int, int>& p) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(p.first) << 32) ^
                                  static_cast<unsigned>(p.second));
  }
};

// Memo tables are thread-local, so concurrent callers never share state.
inline std::unordered_map<int, LambdaPoly>& q_memo() {
  thread_local std::unordered_map<int, LambdaPoly> m;
  return m;
}
inline std::unordered_map<int, LambdaPoly>& p_memo() {
  thread_local std::unordered_map<int, LambdaPoly> m;
  return m;
}
inline std::unordered_map<std::pair<int, int>, LambdaPoly, PairHash>& pk_memo() {
  thread_local std::unordered_map<std::pair<int, int>, LambdaPoly, PairHash> m;
  return m;
}

}  // namespace detail

/// Q_0 = 0, Q_1 = 1, Q_{n+2} = l Q_{n+1} - Q_n, Q_{-n} = -Q_n.
inline const LambdaPoly& qpoly(int n) {
  auto& memo = detail::q_memo();
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  LambdaPoly v;
  if (n < 0) {
    v = -qpoly(-n);
  } else if (n == 1) {
    v = LambdaPoly(LaurentPoly(1));
  } else if (n >= 2) {
    // iterate upwards to keep recursion shallow
    LambdaPoly prev = qpoly(0), cur = qpoly(1);
    for (int i = 2; i <= n; ++i) {
      LambdaPoly next = cur.raised(1) - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    v = std::move(cur);
  }
  return memo.emplace(n, std::move(v)).first->second;
}

/// P_n = -A^{n+2} Q_{n+1} + A^{n-2} Q_{n-1}, valid for every integer n.
inline const LambdaPoly& ppoly(int n) {
  auto& memo = detail::p_memo();
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  LambdaPoly v = qpoly(n - 1) * LaurentPoly::A(n - 2) - qpoly(n + 1) * LaurentPoly::A(n + 2);
  return memo.emplace(n, std::move(v)).first->second;
}

/// P_n from the two base cases by P_n = A l P_{n-1} - A^2 P_{n-2},
/// run backwards (A^2 P_{n-2} = A l P_{n-1} - P_n) for negative n.
inline LambdaPoly ppoly_by_recursion(int n) {
  LambdaPoly p0 = loop_value();
  LambdaPoly p1 = LambdaPoly::monomial(-LaurentPoly::A(3), 1);
  if (n == 0) return p0;
  if (n == 1) return p1;
  if (n > 1) {
    for (int i = 2; i <= n; ++i) {
      LambdaPoly next = p1.raised(1) * LaurentPoly::A(1) - p0 * LaurentPoly::A(2);
      p0 = std::move(p1);
      p1 = std::move(next);
    }
    return p1;
  }
  // (hi, lo) = (P_{i+1}, P_i); step down to (P_i, P_{i-1})
  LambdaPoly hi = p1, lo = p0;
  for (int i = 0; i > n; --i) {
    LambdaPoly next = (lo.raised(1) * LaurentPoly::A(1) - hi) * LaurentPoly::A(-2);
    hi = std::move(lo);
    lo = std::move(next);
  }
  return lo;
}

/// P_{n,0} = P_n, P_{n,k} = A P_{n+1,k-1} + A^-1 P_{n-1,k-1}.
inline const LambdaPoly& ppoly_k(int n, int k) {
  if (k < 0) throw std::invalid_argument("ppoly_k: k must be non-negative");
  if (k == 0) return ppoly(n);
  auto& memo = detail::pk_memo();
  if (auto it = memo.find({n, k}); it != memo.end()) return it->second;
  LambdaPoly v = ppoly_k(n + 1, k - 1) * LaurentPoly::A(1) + ppoly_k(n - 1, k - 1) * LaurentPoly::A(-1);
  return memo.emplace(std::pair{n, k}, std::move(v)).first->second;
}

}  // namespace kbsm
