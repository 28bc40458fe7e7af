// Crossingless annular words l^{n0} x_{m1} l^{n1} ... x_{mk} l^{nk}, their
// formal R-linear combinations, and the basis-shape predicates.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kbsm/laurent.hpp"
#include "kbsm/polyfam.hpp"

namespace kbsm {

class GammaWord {
 public:
  /// The empty word "1".
  GammaWord() : data_(1, 0) {}
  GammaWord(const std::vector<int>& lambda_exps, const std::vector<int>& x_indices) {
    if (lambda_exps.size() != x_indices.size() + 1)
      throw std::invalid_argument("GammaWord: need exactly one lambda run per gap");
    for (int n : lambda_exps)
      if (n < 0) throw std::invalid_argument("GammaWord: negative lambda exponent");
    data_.reserve(lambda_exps.size() + x_indices.size());
    data_.insert(data_.end(), lambda_exps.begin(), lambda_exps.end());
    data_.insert(data_.end(), x_indices.begin(), x_indices.end());
  }
  static GammaWord lambda(int n) { return GammaWord({n}, {}); }
  static GammaWord x(int m) { return GammaWord({0, 0}, {m}); }
  /// (x_m)^k
  static GammaWord x_power(int m, int k) {
    return GammaWord(std::vector<int>(static_cast<std::size_t>(k) + 1, 0),
                     std::vector<int>(static_cast<std::size_t>(k), m));
  }

  std::size_t x_count() const { return data_.size() / 2; }
  /// Runs n_0..n_k.
  std::span<const int> lambda_exps() const { return {data_.data(), x_count() + 1}; }
  /// Indices m_1..m_k.
  std::span<const int> x_indices() const { return {data_.data() + x_count() + 1, x_count()}; }
  int lambda_at(std::size_t gap) const { return data_[gap]; }
  int x_at(std::size_t i) const { return data_[x_count() + 1 + i]; }
  bool is_empty() const { return data_.size() == 1 && data_[0] == 0; }
  int total_lambda() const {
    int s = 0;
    for (int n : lambda_exps()) s += n;
    return s;
  }

  /// Same word with `delta` added to the lambda run at `gap`.
  GammaWord with_lambda_added(std::size_t gap, int delta) const {
    if (gap > x_count()) throw std::out_of_range("GammaWord: gap index out of range");
    GammaWord w = *this;
    w.data_[gap] += delta;
    if (w.data_[gap] < 0) throw std::invalid_argument("GammaWord: negative lambda exponent");
    return w;
  }

  /// Concatenation; the outer run of `a` merges with the inner run of `b`.
  friend GammaWord operator*(const GammaWord& a, const GammaWord& b) {
    const std::size_t ka = a.x_count(), kb = b.x_count();
    GammaWord w;
    w.data_.resize(2 * (ka + kb) + 1);
    auto la = a.lambda_exps(), lb = b.lambda_exps();
    auto xa = a.x_indices(), xb = b.x_indices();
    int* out = w.data_.data();
    out = std::copy(la.begin(), la.end(), out);
    out[-1] += lb[0];
    out = std::copy(lb.begin() + 1, lb.end(), out);
    out = std::copy(xa.begin(), xa.end(), out);
    std::copy(xb.begin(), xb.end(), out);
    return w;
  }

  friend bool operator==(const GammaWord& a, const GammaWord& b) { return a.data_ == b.data_; }
  friend bool operator!=(const GammaWord& a, const GammaWord& b) { return !(a == b); }

  std::size_t hash() const noexcept {
    std::size_t h = data_.size() * 0x9e3779b97f4a7c15ULL;
    for (int v : data_)
      h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// Factors separated by spaces, e.g. "x(3) l^2 x(2)"; the empty word is "1".
  std::string str() const {
    std::string out;
    auto put = [&out](const std::string& f) {
      if (!out.empty()) out += ' ';
      out += f;
    };
    auto run = [&](int n) {
      if (n == 1) put("l");
      else if (n > 1) put("l^" + std::to_string(n));
    };
    run(lambda_at(0));
    for (std::size_t i = 0; i < x_count(); ++i) {
      put("x(" + std::to_string(x_at(i)) + ")");
      run(lambda_at(i + 1));
    }
    return out.empty() ? "1" : out;
  }

 private:
  // n_0..n_k followed by m_1..m_k
  std::vector<int> data_;
};

inline GammaWord word_concat(const GammaWord& a, const GammaWord& b) { return a * b; }

struct GammaWordHash {
  std::size_t operator()(const GammaWord& w) const noexcept { return w.hash(); }
};

/// Print order: fewer x's first, then x indices and lambda runs in
/// descending lexicographic order.
struct TermOrder {
  bool operator()(const GammaWord& a, const GammaWord& b) const {
    if (a.x_count() != b.x_count()) return a.x_count() < b.x_count();
    auto xa = a.x_indices(), xb = b.x_indices();
    if (!std::equal(xa.begin(), xa.end(), xb.begin()))
      return std::lexicographical_compare(xb.begin(), xb.end(), xa.begin(), xa.end());
    auto la = a.lambda_exps(), lb = b.lambda_exps();
    return std::lexicographical_compare(lb.begin(), lb.end(), la.begin(), la.end());
  }
};

/// Finite R-linear combination of words with no zero coefficients.
class ModuleElement {
 public:
  using Map = std::map<GammaWord, LaurentPoly, TermOrder>;

  ModuleElement() = default;
  ModuleElement(const GammaWord& w, LaurentPoly coeff = LaurentPoly(1)) {  // NOLINT
    if (!coeff.is_zero()) terms_.emplace(w, std::move(coeff));
  }
  /// Sum of c_j * l^j, each as a bare lambda word.
  static ModuleElement from_lambda(const LambdaPoly& p) {
    ModuleElement e;
    for (const auto& [j, c] : p.coeffs()) e.terms_.emplace(GammaWord::lambda(j), c);
    return e;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  LaurentPoly coeff(const GammaWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  void add(const GammaWord& w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add_scaled(const ModuleElement& o, const LaurentPoly& s) {
    if (s.is_zero()) return;
    const bool unit = s == LaurentPoly(1);
    for (const auto& [w, c] : o.terms_) add(w, unit ? c : c * s);
  }

  ModuleElement& operator+=(const ModuleElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  ModuleElement& operator-=(const ModuleElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  ModuleElement operator-() const {
    ModuleElement r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const ModuleElement& a, const LaurentPoly& s) {
    ModuleElement r;
    r.add_scaled(a, s);
    return r;
  }
  friend ModuleElement operator*(const LaurentPoly& s, const ModuleElement& a) { return a * s; }

  /// Bilinear extension of word concatenation.
  friend ModuleElement operator*(const ModuleElement& a, const ModuleElement& b) {
    ModuleElement r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add(wa * wb, ca * cb);
    return r;
  }
  friend ModuleElement operator*(const ModuleElement& a, const GammaWord& w) {
    ModuleElement r;
    for (const auto& [wa, ca] : a.terms_) r.add(wa * w, ca);
    return r;
  }
  friend ModuleElement operator*(const GammaWord& w, const ModuleElement& b) {
    ModuleElement r;
    for (const auto& [wb, cb] : b.terms_) r.add(w * wb, cb);
    return r;
  }

  friend bool operator==(const ModuleElement& a, const ModuleElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ModuleElement& a, const ModuleElement& b) { return !(a == b); }

  /// e.g. "{A}*x(1) l + {-A^2}*x(0)"; zero prints as "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "{" + c.str() + "}*" + w.str();
    }
    return out;
  }

 private:
  Map terms_;
};

inline ModuleElement operator*(const LambdaPoly& p, const GammaWord& w) {
  return ModuleElement::from_lambda(p) * w;
}
inline ModuleElement operator*(const GammaWord& w, const LambdaPoly& p) {
  return w * ModuleElement::from_lambda(p);
}

/// Sum over p = sum c_j l^j of c_j * (w with l^j added at `gap`).
inline ModuleElement splice(const GammaWord& w, std::size_t gap, const LambdaPoly& p) {
  if (gap > w.x_count()) throw std::out_of_range("splice: gap index out of range");
  ModuleElement r;
  for (const auto& [j, c] : p.coeffs()) r.add(w.with_lambda_added(gap, j), c);
  return r;
}

/// Linear extension of splice.
inline ModuleElement splice(const ModuleElement& e, std::size_t gap, const LambdaPoly& p) {
  ModuleElement r;
  for (const auto& [w, c] : e) r.add_scaled(splice(w, gap, p), c);
  return r;
}

/// l^n, x_{c+e} l^n (x_c)^k with e in {0,1} and all later runs zero.
inline bool in_sigma_c(const GammaWord& w, int c) {
  const std::size_t k = w.x_count();
  if (k == 0) return true;
  if (w.lambda_at(0) != 0) return false;
  const int m1 = w.x_at(0);
  if (m1 != c && m1 != c + 1) return false;
  for (std::size_t i = 1; i < k; ++i) {
    if (w.x_at(i) != c || w.lambda_at(i + 1) != 0) return false;
  }
  return true;
}

/// l^n or x_nu l^n.
inline bool in_sigma_prime(const GammaWord& w, int nu) {
  const std::size_t k = w.x_count();
  if (k == 0) return true;
  return k == 1 && w.lambda_at(0) == 0 && w.x_at(0) == nu;
}

/// floor(beta / 2) for either sign of beta.
constexpr int nu_of_beta(int beta) { return beta >= 0 ? beta / 2 : -((-beta + 1) / 2); }

struct ReductionConfig {
  enum class Space { Annulus, FiberedTorus };
  Space space = Space::Annulus;
  int c = 0;     // annulus basis index
  int beta = 0;  // fibered torus parameter
  int nu = 0;    // floor(beta / 2)

  static ReductionConfig annulus(int c) { return {Space::Annulus, c, 0, 0}; }
  static ReductionConfig fibered(int beta) {
    return {Space::FiberedTorus, nu_of_beta(beta), beta, nu_of_beta(beta)};
  }
  bool torus() const { return space == Space::FiberedTorus; }
  /// Index playing the role of c in the shared rules.
  int anchor() const { return torus() ? nu : c; }
  bool in_basis(const GammaWord& w) const {
    return torus() ? in_sigma_prime(w, nu) : in_sigma_c(w, c);
  }
  std::string str() const {
    return torus() ? "fibered(beta=" + std::to_string(beta) + ", nu=" + std::to_string(nu) + ")"
                   : "annulus(c=" + std::to_string(c) + ")";
  }
};

}  // namespace kbsm

template <>
struct std::hash<kbsm::GammaWord> {
  std::size_t operator()(const kbsm::GammaWord& w) const noexcept { return w.hash(); }
};
