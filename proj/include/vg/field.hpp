#pragma once

#include <cstdint>
#include <string>

#include "vg/errors.hpp"
#include "vg/types.hpp"

namespace vg {

/// Arithmetic in GF(p) for a prime p with 2 <= p <= 251. All scalars are
/// canonical residues in [0, p); operations reduce back into that range.
class FieldSpec {
 public:
  explicit FieldSpec(std::uint32_t p) {
    if (p < 2 || p > 251 || !is_prime(p))
      throw NotPrime("field characteristic must be a prime in [2, 251], got " +
                     std::to_string(p));
    p_ = static_cast<Scalar>(p);
  }

  Scalar p() const { return p_; }

  Scalar add(Scalar a, Scalar b) const {
    std::uint32_t s = std::uint32_t{a} + b;
    return static_cast<Scalar>(s >= p_ ? s - p_ : s);
  }

  Scalar sub(Scalar a, Scalar b) const {
    return static_cast<Scalar>(a >= b ? a - b : a + p_ - b);
  }

  Scalar neg(Scalar a) const { return static_cast<Scalar>(a == 0 ? 0 : p_ - a); }

  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((std::uint32_t{a} * b) % p_);
  }

  /// Multiplicative inverse by the extended Euclid algorithm.
  /// Throws ZeroInverse when a == 0.
  Scalar inv(Scalar a) const {
    if (a == 0) throw ZeroInverse("0 has no multiplicative inverse");
    std::int32_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int32_t q = r0 / r1;
      std::int32_t r2 = r0 - q * r1;
      std::int32_t s2 = s0 - q * s1;
      r0 = r1; r1 = r2;
      s0 = s1; s1 = s2;
    }
    if (s0 < 0) s0 += p_;
    return static_cast<Scalar>(s0);
  }

  bool operator==(const FieldSpec&) const = default;

 private:
  static bool is_prime(std::uint32_t n) {
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return n >= 2;
  }

  Scalar p_;
};

}  // namespace vg
