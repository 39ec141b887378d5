#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ccg {

// Integer extended with a negative infinity. Addition is absorbing on -inf and
// throws on overflow instead of wrapping.
class ExtInt {
 public:
  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : v_(v), neg_inf_(false) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtInt neg_inf() {
    ExtInt x;
    x.neg_inf_ = true;
    return x;
  }

  constexpr bool is_neg_inf() const { return neg_inf_; }
  constexpr bool finite() const { return !neg_inf_; }

  std::int64_t value() const {
    if (neg_inf_) throw std::domain_error("value() of -inf");
    return v_;
  }

  ExtInt& operator+=(ExtInt o) {
    if (neg_inf_ || o.neg_inf_) {
      neg_inf_ = true;
      v_ = 0;
      return *this;
    }
    std::int64_t r;
    if (__builtin_add_overflow(v_, o.v_, &r)) throw std::overflow_error("utility overflow");
    v_ = r;
    return *this;
  }
  friend ExtInt operator+(ExtInt a, ExtInt b) { return a += b; }

  // Difference of two values; -inf on the left yields -inf, -inf on the right
  // is rejected because the result would be +inf.
  friend ExtInt operator-(ExtInt a, ExtInt b) {
    if (b.neg_inf_) throw std::domain_error("subtracting -inf");
    if (a.neg_inf_) return a;
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw std::overflow_error("utility overflow");
    return ExtInt(r);
  }

  friend constexpr bool operator==(ExtInt a, ExtInt b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.v_ == b.v_;
  }
  friend constexpr std::strong_ordering operator<=>(ExtInt a, ExtInt b) {
    if (a.neg_inf_ && b.neg_inf_) return std::strong_ordering::equal;
    if (a.neg_inf_) return std::strong_ordering::less;
    if (b.neg_inf_) return std::strong_ordering::greater;
    return a.v_ <=> b.v_;
  }

  std::string str() const { return neg_inf_ ? std::string("-inf") : std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, ExtInt x) { return os << x.str(); }

 private:
  std::int64_t v_ = 0;
  bool neg_inf_ = false;
};

}  // namespace ccg
