#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace iyb {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 negmod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

u64 powmod(u64 base, u64 exp, u64 m);

/// Extended gcd on non-negative integers: returns g with s*a + t*b = g.
u64 egcd(u64 a, u64 b, i64& s, i64& t);

/// Reduces a signed integer into [0, m).
inline u64 reduce_signed(i64 x, u64 m) {
  i64 r = x % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);

/// A unit u of Z/m with u*a = gcd(a, m) (mod m). Requires a != 0 mod m.
u64 normalizing_unit(u64 a, u64 m);

bool is_prime(u64 n);

/// Smallest primitive root modulo the prime q.
u64 smallest_primitive_root(u64 q);

/// Prime factorization as prime -> exponent.
std::map<u64, u64> factorize(u64 n);

/// If n = p^k for a prime p (k >= 1), returns p; otherwise 0.
u64 prime_power_base(u64 n);

/// Exact size of a finite module, kept factored so that sizes like
/// 125^125 can be compared and divided without overflow.
class Cardinality {
 public:
  Cardinality() = default;
  static Cardinality of(u64 n);

  Cardinality& operator*=(const Cardinality& o);
  Cardinality& operator/=(const Cardinality& o);  // throws if not a divisor
  friend Cardinality operator*(Cardinality a, const Cardinality& b) { return a *= b; }
  friend Cardinality operator/(Cardinality a, const Cardinality& b) { return a /= b; }
  bool operator==(const Cardinality&) const = default;

  bool fits_u64() const;
  u64 to_u64() const;  // throws ResourceLimit when too large
  std::string str() const;
  const std::map<u64, u64>& exponents() const { return exps_; }

 private:
  std::map<u64, u64> exps_;
};

}  // namespace iyb
