#include "afflie/scalar.hpp"

#include <sstream>

namespace afflie {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // Miller-Rabin with a witness set that is exact for all 64-bit n.
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

RingSpec RingSpec::mod(u64 n) {
  if (n < 2) throw DomainError("Z/n requires n >= 2, got n = " + std::to_string(n));
  return {RingKind::integers_mod_n, n};
}

RingSpec RingSpec::gf(u64 p) {
  if (!is_prime_u64(p))
    throw DomainError("GF(p) requires a prime modulus, got " + std::to_string(p));
  return {RingKind::prime_field, p};
}

std::string RingSpec::str() const {
  switch (kind) {
    case RingKind::integers: return "Z";
    case RingKind::rationals: return "Q";
    case RingKind::integers_mod_n: return "Z/" + std::to_string(modulus);
    case RingKind::prime_field: return "GF(" + std::to_string(modulus) + ")";
  }
  return "?";
}

Scalar::Scalar(RingSpec ring, mpq_class value) : ring_(ring), v_(std::move(value)) {
  v_.canonicalize();
  switch (ring_.kind) {
    case RingKind::rationals:
      break;  // canonicalize() already gives lowest terms, positive denominator
    case RingKind::integers:
      if (v_.get_den() != 1)
        throw DomainError("non-integer value " + v_.get_str() + " in ring Z");
      break;
    case RingKind::integers_mod_n:
    case RingKind::prime_field: {
      if (v_.get_den() != 1)
        throw DomainError("non-integer value " + v_.get_str() + " in ring " +
                          ring_.str());
      mpz_class m(static_cast<unsigned long>(ring_.modulus));
      mpz_class r;
      mpz_mod(r.get_mpz_t(), v_.get_num().get_mpz_t(), m.get_mpz_t());
      v_ = mpq_class(r);
      break;
    }
  }
}

std::string Scalar::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Scalar Scalar::parse(const RingSpec& ring, const std::string& text) {
  if (text.empty()) throw DomainError("empty scalar string");
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw DomainError("cannot parse scalar '" + text + "'");
  if (q.get_den() <= 0)
    throw DomainError("cannot parse scalar '" + text + "'");
  if (ring.kind != RingKind::rationals && text.find('/') != std::string::npos)
    throw DomainError("fraction '" + text + "' not valid in ring " + ring.str());
  return Scalar(ring, q);
}

Scalar zero(const RingSpec& ring) { return Scalar(ring, 0); }
Scalar one(const RingSpec& ring) { return Scalar(ring, 1); }

namespace {
void require_same_ring(const Scalar& x, const Scalar& y) {
  if (!(x.ring() == y.ring()))
    throw DomainError("ring mismatch: " + x.ring().str() + " vs " +
                      y.ring().str());
}
}  // namespace

Scalar add(const Scalar& x, const Scalar& y) {
  require_same_ring(x, y);
  return Scalar(x.ring(), x.value() + y.value());
}

Scalar sub(const Scalar& x, const Scalar& y) {
  require_same_ring(x, y);
  return Scalar(x.ring(), x.value() - y.value());
}

Scalar mul(const Scalar& x, const Scalar& y) {
  require_same_ring(x, y);
  return Scalar(x.ring(), x.value() * y.value());
}

Scalar neg(const Scalar& x) { return Scalar(x.ring(), -x.value()); }

Scalar ring_arith(RingOp op, const Scalar& x, const Scalar& y) {
  switch (op) {
    case RingOp::add: return add(x, y);
    case RingOp::sub: return sub(x, y);
    case RingOp::mul: return mul(x, y);
    case RingOp::neg: return neg(x);
  }
  throw DomainError("unknown ring operation");
}

bool is_unit(const Scalar& x) {
  switch (x.ring().kind) {
    case RingKind::rationals:
      return !x.is_zero();
    case RingKind::integers:
      return x.value() == 1 || x.value() == -1;
    case RingKind::prime_field:
      return !x.is_zero();
    case RingKind::integers_mod_n: {
      mpz_class m(static_cast<unsigned long>(x.ring().modulus));
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), x.value().get_num().get_mpz_t(), m.get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

Scalar invert(const Scalar& x) {
  if (!is_unit(x))
    throw NotAUnitError("cannot invert " + x.str() + " in " + x.ring().str());
  switch (x.ring().kind) {
    case RingKind::rationals:
      return Scalar(x.ring(), 1 / x.value());
    case RingKind::integers:
      return x;  // the only integer units are 1 and -1, both self-inverse
    case RingKind::prime_field:
    case RingKind::integers_mod_n: {
      mpz_class m(static_cast<unsigned long>(x.ring().modulus));
      mpz_class inv;
      if (!mpz_invert(inv.get_mpz_t(), x.value().get_num().get_mpz_t(),
                      m.get_mpz_t()))
        throw NotAUnitError("cannot invert " + x.str() + " in " + x.ring().str());
      return Scalar(x.ring(), mpq_class(inv));
    }
  }
  throw DomainError("unknown ring kind");
}

std::vector<Scalar> enumerate_scalars(const RingSpec& ring) {
  if (!ring.finite())
    throw UnsupportedError("cannot enumerate the infinite ring " + ring.str() +
                           "; use a frame check instead");
  std::vector<Scalar> out;
  out.reserve(ring.modulus);
  for (u64 i = 0; i < ring.modulus; ++i)
    out.push_back(Scalar(ring, mpq_class(static_cast<unsigned long>(i))));
  return out;
}

}  // namespace afflie
