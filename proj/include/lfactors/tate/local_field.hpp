#pragma once

// The local field F_q((w)) at finite precision: Laurent expansions with
// residue-field digits, balls a + p^m, and finite combinations of ball
// indicators with coefficients in a ring.

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/galois.hpp"

namespace lfactors::tate {

using arith::i64;
using arith::u64;
using Fq = GfElem;

/// Residue field F_q, q = p^r, with its elements listed as 0, g^0, ..., g^{q-2}.
struct ResidueField {
  u64 p = 0;
  unsigned r = 1;
  u64 q = 0;
  std::vector<Fq> units;  // units[i] = g^i

  static ResidueField make(u64 q) {
    ResidueField k;
    k.p = arith::prime_of_power(q);
    if (k.p == 0) throw DomainError("residue cardinality must be a prime power");
    k.r = arith::split_prime(q, k.p).second;
    k.q = q;
    const Fq g = Fq::generator(k.p, k.r);
    Fq x = Fq::from_int(k.p, 1);
    for (u64 i = 0; i + 1 < q; ++i) {
      k.units.push_back(x);
      x = x * g;
    }
    return k;
  }

  Fq zero() const { return Fq::from_int(p, 0); }

  std::vector<Fq> elements() const {
    std::vector<Fq> out{zero()};
    out.insert(out.end(), units.begin(), units.end());
    return out;
  }

  /// Tr_{F_q/F_p}(a) as an integer in [0, p).
  u64 trace(const Fq& a) const {
    Fq t = zero(), x = a;
    for (unsigned i = 0; i < r; ++i) {
      t = t + x;
      x = x.pow(static_cast<i64>(p));
    }
    return t.coords_in(1)[0];
  }
};

/// Finite Laurent expansion sum a_i w^i, zero digits omitted.
using Laurent = std::map<int, Fq>;

inline int valuation(const Laurent& a) {
  return a.empty() ? std::numeric_limits<int>::max() : a.begin()->first;
}

inline Laurent laurent_mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto it = out.find(i + j);
      const Fq prod = x * y;
      if (it == out.end()) {
        out.emplace(i + j, prod);
      } else {
        it->second = it->second + prod;
      }
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline Laurent laurent_neg(const Laurent& a) {
  Laurent out;
  for (const auto& [i, x] : a) out.emplace(i, -x);
  return out;
}

/// The ball a + p^m; the center keeps only digits below m.
struct Ball {
  int m = 0;
  Laurent center;

  static Ball make(Laurent a, int m) {
    for (auto it = a.begin(); it != a.end();)
      it = (it->first >= m || it->second.is_zero()) ? a.erase(it) : std::next(it);
    return Ball{m, std::move(a)};
  }

  bool contains(const Laurent& x) const {
    for (const auto& [i, c] : center) {
      auto it = x.find(i);
      if (it == x.end() || !(it->second == c)) return false;
    }
    for (const auto& [i, c] : x)
      if (i < m && !center.count(i)) return false;
    return true;
  }

  /// this is a subset of `other`
  bool inside(const Ball& other) const { return m >= other.m && other.contains(center); }

  std::string encode() const {
    std::string s;
    for (const auto& [i, c] : center) {
      if (!s.empty()) s += " + ";
      const std::string enc = c.encode();
      s += (enc.find(' ') == std::string::npos ? enc : "(" + enc + ")") + "*w^" + std::to_string(i);
    }
    return (s.empty() ? "0" : s) + " + p^" + std::to_string(m);
  }

  friend bool operator==(const Ball& a, const Ball& b) { return a.m == b.m && a.center == b.center; }
};

template <class Elem>
struct TestFunction {
  std::vector<std::pair<Ball, Elem>> terms;

  template <class Ring>
  Elem eval(const Ring& ring, const Laurent& x) const {
    Elem acc = ring.zero();
    for (const auto& [b, c] : terms)
      if (b.contains(x)) acc = acc + c;
    return acc;
  }
};

}  // namespace lfactors::tate
