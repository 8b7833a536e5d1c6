#include "iyb/arith.hpp"

#include <sstream>
#include <stdexcept>

#include "iyb/error.hpp"

namespace iyb {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 egcd(u64 a, u64 b, i64& s, i64& t) {
  i64 old_r = static_cast<i64>(a), r = static_cast<i64>(b);
  i64 old_s = 1, cur_s = 0;
  i64 old_t = 0, cur_t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  s = old_s;
  t = old_t;
  return static_cast<u64>(old_r);
}

u64 invmod(u64 a, u64 m) {
  i64 s, t;
  if (m == 1) return 0;
  u64 g = egcd(a % m, m, s, t);
  if (g != 1) throw std::domain_error("invmod: not a unit");
  return reduce_signed(s, m);
}

u64 normalizing_unit(u64 a, u64 m) {
  a %= m;
  u64 g = std::gcd(a, m);
  u64 mg = m / g;
  u64 u = mg == 1 ? 1 : invmod((a / g) % mg, mg);
  // Any lift of u mod m/g works; pick the first one that is a unit mod m.
  while (std::gcd(u, m) != 1) u += mg;
  return u % m;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::map<u64, u64> factorize(u64 n) {
  std::map<u64, u64> f;
  for (u64 d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

u64 prime_power_base(u64 n) {
  auto f = factorize(n);
  return f.size() == 1 ? f.begin()->first : 0;
}

u64 smallest_primitive_root(u64 q) {
  if (!is_prime(q)) throw std::domain_error("primitive root: modulus not prime");
  if (q == 2) return 1;
  auto f = factorize(q - 1);
  for (u64 g = 2; g < q; ++g) {
    bool ok = true;
    for (auto [p, e] : f) {
      if (powmod(g, (q - 1) / p, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

Cardinality Cardinality::of(u64 n) {
  if (n == 0) throw std::invalid_argument("Cardinality::of(0)");
  Cardinality c;
  c.exps_ = factorize(n);
  return c;
}

Cardinality& Cardinality::operator*=(const Cardinality& o) {
  for (auto [p, e] : o.exps_) exps_[p] += e;
  return *this;
}

Cardinality& Cardinality::operator/=(const Cardinality& o) {
  for (auto [p, e] : o.exps_) {
    auto it = exps_.find(p);
    if (it == exps_.end() || it->second < e) throw std::domain_error("Cardinality: not a divisor");
    it->second -= e;
    if (it->second == 0) exps_.erase(it);
  }
  return *this;
}

bool Cardinality::fits_u64() const {
  unsigned __int128 v = 1;
  for (auto [p, e] : exps_) {
    for (u64 i = 0; i < e; ++i) {
      v *= p;
      if (v > static_cast<unsigned __int128>(UINT64_MAX)) return false;
    }
  }
  return true;
}

u64 Cardinality::to_u64() const {
  if (!fits_u64()) throw ResourceLimit("cardinality exceeds 64 bits: " + str());
  u64 v = 1;
  for (auto [p, e] : exps_)
    for (u64 i = 0; i < e; ++i) v *= p;
  return v;
}

std::string Cardinality::str() const {
  if (exps_.empty()) return "1";
  if (fits_u64()) return std::to_string(to_u64());
  std::ostringstream os;
  bool first = true;
  for (auto [p, e] : exps_) {
    if (!first) os << "*";
    os << p << "^" << e;
    first = false;
  }
  return os.str();
}

}  // namespace iyb
