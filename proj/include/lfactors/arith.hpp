#pragma once

// Small-integer number theory used throughout: modular powers, primality,
// factorization of group orders, multiplicative orders.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lfactors {

/// Thrown when an operation is applied outside its mathematical domain
/// (zero where a unit is required, mismatched contexts, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Non-negative residue of v modulo m.
inline u64 mod(i64 v, u64 m) {
  const i64 r = v % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Exact power; throws on overflow.
inline u64 ipow(u64 base, unsigned exp) {
  u64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<u64>::max() / base)
      throw std::overflow_error("ipow: result exceeds 64 bits");
    result *= base;
  }
  return result;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// If n = p^a for a prime p, returns p; otherwise 0.
inline u64 prime_of_power(u64 n) {
  const auto ps = prime_factors(n);
  return ps.size() == 1 ? ps.front() : 0;
}

/// Writes n = m * p^v with p not dividing m; returns {m, v}.
inline std::pair<u64, unsigned> split_prime(u64 n, u64 p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return {n, v};
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1 required).
inline u64 mult_order_mod(u64 a, u64 m) {
  if (m == 1) return 1;
  a %= m;
  if (std::gcd(a, m) != 1) throw DomainError("mult_order_mod: not a unit");
  u64 phi = m;
  for (u64 p : prime_factors(m)) phi = phi / p * (p - 1);
  u64 order = phi;
  for (u64 p : prime_factors(phi)) {
    while (order % p == 0 && powmod(a, order / p, m) == 1) order /= p;
  }
  return order;
}

/// Divisors of n in increasing order.
inline std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace arith
}  // namespace lfactors
