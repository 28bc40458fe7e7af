// Arbitrary-precision integer that stays in a machine word until an
// operation overflows, then promotes to boost::multiprecision::cpp_int.
#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kbsm {

class Integer {
 public:
  using Big = boost::multiprecision::cpp_int;

  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Integer(const Big& v) { assign(v); }
  explicit Integer(std::string_view digits) { assign(Big(std::string(digits))); }

  Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  bool is_small() const { return !big_; }
  /// Value as a machine word; throws std::overflow_error when it does not fit.
  std::int64_t to_int64() const {
    if (big_) throw std::overflow_error("Integer does not fit in 64 bits");
    return small_;
  }
  Big to_big() const { return big_ ? *big_ : Big(small_); }

  Integer& operator+=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) small_ = r;
    else assign(to_big() + o.to_big());
    return *this;
  }
  Integer& operator-=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) small_ = r;
    else assign(to_big() - o.to_big());
    return *this;
  }
  Integer& operator*=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) small_ = r;
    else assign(to_big() * o.to_big());
    return *this;
  }
  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  Integer operator-() const {
    if (!big_ && small_ != INT64_MIN) return Integer(-small_);
    return Integer(Big(-to_big()));
  }

  int sign() const {
    if (big_) return big_->sign();
    return (small_ > 0) - (small_ < 0);
  }

  friend bool operator==(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // values are normalized, so a big value never fits a word
  }
  friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
  friend bool operator<(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ < b.small_;
    return a.to_big() < b.to_big();
  }
  friend bool operator>(const Integer& a, const Integer& b) { return b < a; }
  friend bool operator<=(const Integer& a, const Integer& b) { return !(b < a); }
  friend bool operator>=(const Integer& a, const Integer& b) { return !(a < b); }

  std::string str() const { return big_ ? big_->str() : std::to_string(small_); }

 private:
  void assign(const Big& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
      small_ = static_cast<std::int64_t>(v);
      big_.reset();
    } else {
      small_ = 0;
      big_ = std::make_unique<Big>(v);
    }
  }

  std::int64_t small_ = 0;
  std::unique_ptr<Big> big_;
};

}  // namespace kbsm
