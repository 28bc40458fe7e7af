// Laurent polynomials in A with arbitrary-precision integer coefficients.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbsm/error.hpp"
#include "kbsm/integer.hpp"

namespace kbsm {

/// An element of Z[A, A^-1], stored as exponent-sorted (exponent, coefficient)
/// pairs with no zero coefficients. Equality is structural.
class LaurentPoly {
 public:
  using Term = std::pair<int, Integer>;

  LaurentPoly() = default;
  LaurentPoly(int constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) terms_.emplace_back(0, Integer(constant));
  }

  static LaurentPoly monomial(const Integer& coeff, int exp) {
    LaurentPoly p;
    if (coeff != 0) p.terms_.emplace_back(exp, coeff);
    return p;
  }
  /// A^exp
  static LaurentPoly A(int exp = 1) { return monomial(Integer(1), exp); }

  /// Builds from arbitrary (exponent, coefficient) pairs; merges and drops zeros.
  static LaurentPoly from_terms(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentPoly p;
    for (auto& [e, c] : raw) {
      if (!p.terms_.empty() && p.terms_.back().first == e) {
        p.terms_.back().second += c;
        if (p.terms_.back().second == 0) p.terms_.pop_back();
      } else if (c != 0) {
        p.terms_.emplace_back(e, std::move(c));
      }
    }
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  explicit operator bool() const { return !terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Integer coeff(int exp) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), exp,
        [](const Term& t, int e) { return t.first < e; });
    return (it != terms_.end() && it->first == exp) ? it->second : Integer(0);
  }
  int min_exp() const { return terms_.front().first; }
  int max_exp() const { return terms_.back().first; }

  /// Multiplication by A^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.first += k;
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return merge(o, false); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return merge(o, true); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.size() == 1) return a.times_monomial(b.terms_[0]);
    if (a.size() == 1) return b.times_monomial(a.terms_[0]);
    const int lo = a.min_exp() + b.min_exp();
    const int span = (a.max_exp() - a.min_exp()) + (b.max_exp() - b.min_exp()) + 1;
    std::vector<Integer> dense(static_cast<std::size_t>(span));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        dense[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    LaurentPoly r;
    for (int i = 0; i < span; ++i)
      if (dense[i] != 0) r.terms_.emplace_back(lo + i, std::move(dense[i]));
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// this += a * b without materializing the product when b is a monomial.
  LaurentPoly& add_product(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return *this;
    if (b.size() != 1) return *this += a * b;
    const auto& [eb, cb] = b.terms_[0];
    const bool unit = cb == 1;
    if (terms_.empty()) {
      terms_.reserve(a.size());
      for (const auto& [e, c] : a.terms_) terms_.emplace_back(e + eb, unit ? c : c * cb);
      return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + a.terms_.size());
    auto i = terms_.begin();
    auto j = a.terms_.begin();
    while (i != terms_.end() || j != a.terms_.end()) {
      const int ej = j != a.terms_.end() ? j->first + eb : 0;
      if (j == a.terms_.end() || (i != terms_.end() && i->first < ej)) {
        out.push_back(std::move(*i++));
      } else if (i == terms_.end() || ej < i->first) {
        out.emplace_back(ej, unit ? j->second : j->second * cb);
        ++j;
      } else {
        if (unit) i->second += j->second;
        else i->second += j->second * cb;
        if (i->second != 0) out.push_back(std::move(*i));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }
  /// Arbitrary but total order, used for canonical sorting of containers.
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ < b.terms_;
  }

  /// Ascending exponents, e.g. "-A^-2+1-A^2". Zero prints as "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = c < 0;
      Integer mag = neg ? Integer(-c) : c;
      if (neg)
        out += '-';
      else if (!first)
        out += '+';
      first = false;
      if (e == 0) {
        out += mag.str();
        continue;
      }
      if (mag != 1) out += mag.str();
      out += 'A';
      if (e != 1) {
        out += '^';
        out += std::to_string(e);
      }
    }
    return out;
  }

  /// Parses `term (('+'|'-') term)*` where `term := int? ('A' ('^' int)?)?`.
  /// Whitespace is ignored; a '*' between coefficient and A is tolerated.
  static LaurentPoly parse(std::string_view text) {
    Parser p{text};
    LaurentPoly r = p.poly();
    p.skip();
    if (p.pos != text.size()) p.fail("unexpected character");
    return r;
  }

 private:
  LaurentPoly times_monomial(const Term& m) const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) r.terms_.emplace_back(e + m.first, c * m.second);
    return r;
  }

  LaurentPoly& merge(const LaurentPoly& o, bool subtract) {
    if (o.is_zero()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
        out.push_back(std::move(*i++));
      } else if (i == terms_.end() || j->first < i->first) {
        out.emplace_back(j->first, subtract ? Integer(-j->second) : j->second);
        ++j;
      } else {
        Integer c = subtract ? Integer(i->second - j->second) : Integer(i->second + j->second);
        if (c != 0) out.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
      throw ParseError("laurent polynomial: " + what, pos);
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
      skip();
      return pos < s.size() && s[pos] == c;
    }
    bool digit_next() {
      skip();
      return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    Integer unsigned_int() {
      skip();
      if (!digit_next()) fail("expected digits");
      std::string digits;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
      return Integer(digits);
    }
    int exponent() {
      bool neg = false;
      if (peek('-') || peek('+')) {
        neg = s[pos] == '-';
        ++pos;
      }
      Integer v = unsigned_int();
      if (v > 1000000) fail("exponent out of range");
      int e = static_cast<int>(v.to_int64());
      return neg ? -e : e;
    }
    // One signed term; `sign` already consumed by the caller.
    Term term() {
      skip();
      const std::size_t start = pos;
      Integer coeff(1);
      bool have_coeff = false;
      if (digit_next()) {
        coeff = unsigned_int();
        have_coeff = true;
      }
      if (have_coeff && peek('*')) {
        ++pos;
        if (!peek('A')) fail("expected 'A' after '*'");
      }
      int e = 0;
      if (peek('A')) {
        ++pos;
        e = 1;
        if (peek('^')) {
          ++pos;
          e = exponent();
        }
      } else if (!have_coeff) {
        pos = start;
        fail("expected a term");
      }
      return {e, coeff};
    }
    LaurentPoly poly() {
      std::vector<Term> raw;
      bool neg = false;
      if (peek('-') || peek('+')) {
        neg = s[pos] == '-';
        ++pos;
      }
      for (;;) {
        Term t = term();
        if (neg) t.second = -t.second;
        raw.push_back(std::move(t));
        if (peek('+') || peek('-')) {
          neg = s[pos] == '-';
          ++pos;
        } else {
          break;
        }
      }
      return from_terms(std::move(raw));
    }
  };

  std::vector<Term> terms_;
};

inline LaurentPoly operator*(const LaurentPoly& a, int k) { return a * LaurentPoly(k); }
inline LaurentPoly operator*(int k, const LaurentPoly& a) { return a * LaurentPoly(k); }

inline LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }
inline LaurentPoly lp_monomial(const Integer& coeff, int exp) { return LaurentPoly::monomial(coeff, exp); }
inline LaurentPoly lp_parse(std::string_view text) { return LaurentPoly::parse(text); }
inline std::string lp_print(const LaurentPoly& a) { return a.str(); }

/// The loop value -A^2 - A^-2.
inline LaurentPoly loop_value() { return -(LaurentPoly::A(2) + LaurentPoly::A(-2)); }

}  // namespace kbsm
