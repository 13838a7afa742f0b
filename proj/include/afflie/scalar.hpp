#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "afflie/errors.hpp"

namespace afflie {

enum class RingKind { integers, integers_mod_n, prime_field, rationals };

/// Names one of the supported exact commutative rings with identity:
/// Z, Z/n, GF(p), or Q.
struct RingSpec {
  RingKind kind = RingKind::integers;
  std::uint64_t modulus = 0;  // meaningful for integers_mod_n / prime_field

  static RingSpec integers() { return {RingKind::integers, 0}; }
  static RingSpec rationals() { return {RingKind::rationals, 0}; }
  /// Z/n, n >= 2. n need not be prime.
  static RingSpec mod(std::uint64_t n);
  /// GF(p); p is checked for primality (deterministic Miller-Rabin).
  static RingSpec gf(std::uint64_t p);

  bool finite() const {
    return kind == RingKind::integers_mod_n || kind == RingKind::prime_field;
  }
  bool modular() const { return finite(); }

  bool operator==(const RingSpec&) const = default;

  std::string str() const;
};

/// Returns true iff n is prime. Deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// An element of a RingSpec ring, stored in canonical form:
/// modular values lie in [0, n); rationals are in lowest terms with a
/// positive denominator; integers have denominator 1. Equality is
/// structural equality of canonical forms.
class Scalar {
 public:
  Scalar() = default;
  Scalar(RingSpec ring, long value) : Scalar(ring, mpq_class(value)) {}
  Scalar(RingSpec ring, mpq_class value);

  const RingSpec& ring() const { return ring_; }
  const mpq_class& value() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  bool operator==(const Scalar& o) const {
    return ring_ == o.ring_ && v_ == o.v_;
  }
  /// Orders by value within one ring; used only for deterministic listings.
  bool operator<(const Scalar& o) const { return v_ < o.v_; }

  std::string str() const;
  /// Parses a decimal string, or "p/q" for rationals. Values are
  /// canonicalized (so "-1" is accepted mod n).
  static Scalar parse(const RingSpec& ring, const std::string& text);

 private:
  RingSpec ring_;
  mpq_class v_ = 0;
};

Scalar zero(const RingSpec& ring);
Scalar one(const RingSpec& ring);

Scalar add(const Scalar& x, const Scalar& y);
Scalar sub(const Scalar& x, const Scalar& y);
Scalar mul(const Scalar& x, const Scalar& y);
Scalar neg(const Scalar& x);

enum class RingOp { add, sub, mul, neg };

/// Dispatch form of the arithmetic above; `y` is ignored for neg.
Scalar ring_arith(RingOp op, const Scalar& x, const Scalar& y);

bool is_unit(const Scalar& x);

/// Multiplicative inverse. Throws NotAUnitError when x is not a unit of
/// its ring (e.g. 2 in Z/4, any non-unit integer).
Scalar invert(const Scalar& x);

/// All elements of a finite ring, exactly once, as 0,1,...,n-1.
/// Throws UnsupportedError for Z and Q.
std::vector<Scalar> enumerate_scalars(const RingSpec& ring);

}  // namespace afflie
