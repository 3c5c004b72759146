#pragma once

#include <cstdint>
#include <numeric>

#include "steenrod/errors.hpp"

namespace steenrod {

using Coeff = std::int64_t;

// Overflow in any coefficient computation is an error, never wraparound.
inline Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Coeff checked_sub(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Coeff checked_neg(Coeff a) { return checked_sub(0, a); }

/// (-1)^n for any integer n.
constexpr Coeff parity_sign(long long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace steenrod
