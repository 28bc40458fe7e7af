// Text form of module elements.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*  |  '0'
//   term   := ['{' poly '}' ['*']] word  |  '{' poly '}'
//   word   := factor+
//   factor := 'l' ['^' n] | 'x(' m ')' | 't(' n [',' k] ')' | 'P(' n [',' k] ')'
//           | 'Q(' n ')' | '1'
//
// Factors are juxtaposed inner to outer. t, P and Q expand to their lambda
// polynomials, so the result is always a plain combination of words.
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "kbsm/error.hpp"
#include "kbsm/laurent.hpp"
#include "kbsm/polyfam.hpp"
#include "kbsm/word.hpp"

namespace kbsm {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  ModuleElement parse() {
    ModuleElement total;
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    for (;;) {
      ModuleElement t = term();
      if (neg) total -= t;
      else total += t;
      if (accept('+')) neg = false;
      else if (accept('-')) neg = true;
      else break;
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("expression: " + what, pos_); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
      skip();
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an integer");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000) fail("integer out of range");
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }
  int natural() {
    std::size_t at = pos_;
    int v = integer();
    if (v < 0) {
      pos_ = at;
      fail("expected a non-negative integer");
    }
    return v;
  }

  bool factor_start() {
    char c = peek();
    return c == 'l' || c == 'x' || c == 't' || c == 'P' || c == 'Q' || c == '1';
  }

  ModuleElement term() {
    LaurentPoly coeff(1);
    bool braced = false;
    if (accept('{')) {
      std::size_t close = s_.find('}', pos_);
      if (close == std::string_view::npos) fail("unterminated '{'");
      try {
        coeff = LaurentPoly::parse(s_.substr(pos_, close - pos_));
      } catch (const ParseError& e) {
        throw ParseError(std::string("expression: bad coefficient (") + e.what() + ")", pos_ + e.position());
      }
      pos_ = close + 1;
      braced = true;
      accept('*');
    }
    if (peek() == '0' && !braced) {
      ++pos_;
      return {};
    }
    ModuleElement value{GammaWord(), coeff};
    if (!factor_start()) {
      if (braced) return value;
      fail("expected a term");
    }
    while (factor_start()) value = value * factor();
    return value;
  }

  ModuleElement factor() {
    const char c = peek();
    ++pos_;
    switch (c) {
      case '1':
        return ModuleElement(GammaWord());
      case 'l': {
        int n = 1;
        if (accept('^')) n = natural();
        return ModuleElement(GammaWord::lambda(n));
      }
      case 'x': {
        expect('(');
        int m = integer();
        expect(')');
        return ModuleElement(GammaWord::x(m));
      }
      case 't':
      case 'P': {
        expect('(');
        int n = integer();
        int k = 0;
        if (accept(',')) k = natural();
        expect(')');
        return ModuleElement::from_lambda(ppoly_k(n, k));
      }
      case 'Q': {
        expect('(');
        int n = integer();
        expect(')');
        return ModuleElement::from_lambda(qpoly(n));
      }
      default:
        --pos_;
        fail("expected a factor");
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ModuleElement parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

inline std::string to_string(const ModuleElement& e) { return e.str(); }
inline std::string to_string(const GammaWord& w) { return w.str(); }

}  // namespace kbsm
