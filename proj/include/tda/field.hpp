#pragma once

#include <cstdint>
#include <string>

#include "tda/errors.hpp"

namespace tda {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Arithmetic in the prime field F_p. Elements are integers in [0, p).
class Field {
 public:
  using value_type = std::uint32_t;

  explicit Field(std::uint32_t p = 2) : p_(p) {
    if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  }

  std::uint32_t characteristic() const { return p_; }

  value_type from_int(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }

  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }

  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  /// (-1)^k as a field element.
  value_type sign(std::size_t k) const { return k % 2 == 0 ? 1 : neg(1); }

  /// Centered representative in (-p/2, p/2], for printing.
  std::int64_t centered(value_type a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace tda
