#pragma once

// Coefficient scalars of the two worlds.
//
//   ModScalar  an element of the algebraic closure of F_l (a GfElem of characteristic l)
//   AdicUnit   q^e * t * zeta(s): e an integer, t a Teichmueller tag in F_l-bar^x standing
//              for the prime-to-l root of unity it lifts, s in Z[1/l]/Z naming the
//              l-power root of unity exp(2 pi i s)
//
// world_traits<S> gathers what the engine needs from a world.

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/arith.hpp"
#include "lfactors/galois.hpp"

namespace lfactors {

using arith::i64;
using arith::u64;
using ModScalar = GfElem;

struct PrimeContext {
  u64 ell = 0;
  u64 q = 0;
  u64 p = 0;        // residue characteristic
  unsigned r = 0;   // q = p^r
  u64 q_bar = 0;    // q mod ell
  u64 ord_q = 0;    // multiplicative order of q_bar

  static PrimeContext make(u64 ell, u64 q) {
    if (!arith::is_prime(ell)) throw DomainError("ell=" + std::to_string(ell) + " is not prime");
    const u64 p = arith::prime_of_power(q);
    if (p == 0) throw DomainError("q=" + std::to_string(q) + " is not a prime power");
    if (p == ell) throw DomainError("ell must differ from the residue characteristic");
    PrimeContext ctx;
    ctx.ell = ell;
    ctx.q = q;
    ctx.p = p;
    ctx.r = arith::split_prime(q, p).second;
    ctx.q_bar = q % ell;
    ctx.ord_q = arith::mult_order_mod(ctx.q_bar, ell);
    return ctx;
  }

  ModScalar qbar() const { return ModScalar::from_int(ell, static_cast<i64>(q_bar)); }

  friend bool operator==(const PrimeContext& a, const PrimeContext& b) {
    return a.ell == b.ell && a.q == b.q;
  }
};

/// Rational number modulo 1, kept as num/den with 0 <= num < den, gcd 1.
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(i64 num, i64 den) {
    if (den <= 0) throw DomainError("QmodZ: denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    const i64 g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  i64 num() const { return num_; }
  i64 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend QmodZ operator+(const QmodZ& a, const QmodZ& b) {
    const i64 l = std::lcm(a.den_, b.den_);
    return QmodZ(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
  }
  QmodZ operator-() const { return QmodZ(-num_, den_); }
  friend QmodZ operator-(const QmodZ& a, const QmodZ& b) { return a + (-b); }
  QmodZ times(i64 k) const { return QmodZ(arith::mod(num_ * k, static_cast<u64>(den_)), den_); }

  std::string encode() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static QmodZ parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return QmodZ(std::stoll(s), 1);
      return QmodZ(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse rational '" + text + "'");
    }
  }

  friend bool operator==(const QmodZ& a, const QmodZ& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const QmodZ& a, const QmodZ& b) {
    return std::pair(a.num_ * b.den_, a.den_) < std::pair(b.num_ * a.den_, b.den_);
  }

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

/// Parses a ModScalar: an integer, or a sum of terms c*g_d^i in one generator.
inline ModScalar parse_mod_scalar(u64 ell, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty scalar");
  auto fail = [&]() -> DomainError { return DomainError("cannot parse scalar '" + text + "'"); };
  std::vector<std::pair<i64, unsigned>> terms;  // coefficient, exponent
  unsigned degree = 1;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find('+', pos);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw fail();
    i64 coeff = 1;
    unsigned exp = 0;
    const auto g = term.find("g_");
    try {
      if (g == std::string::npos) {
        coeff = std::stoll(term);
      } else {
        if (g > 0) {
          if (term[g - 1] != '*') throw fail();
          coeff = std::stoll(term.substr(0, g - 1));
        }
        std::string rest = term.substr(g + 2);
        const auto caret = rest.find('^');
        std::size_t used = 0;
        const unsigned d = static_cast<unsigned>(std::stoul(rest.substr(0, caret), &used));
        if (used != (caret == std::string::npos ? rest.size() : caret)) throw fail();
        if (degree != 1 && d != degree) throw DomainError("scalar '" + text + "' mixes generators");
        degree = d;
        exp = caret == std::string::npos ? 1 : static_cast<unsigned>(std::stoul(rest.substr(caret + 1)));
      }
    } catch (const std::logic_error&) {
      throw fail();
    }
    terms.emplace_back(coeff, exp);
    pos = end + 1;
  }
  ModScalar acc = ModScalar::from_int(ell, 0);
  const ModScalar gen = ModScalar::generator(ell, degree);
  for (const auto& [c, e] : terms) acc = acc + ModScalar::from_int(ell, c) * gen.pow(e);
  return acc;
}

class AdicUnit {
 public:
  AdicUnit() = default;
  AdicUnit(i64 e, ModScalar teich, QmodZ sing) : e_(e), t_(std::move(teich)), s_(sing) {
    if (!t_.valid() || t_.is_zero()) throw DomainError("AdicUnit: Teichmueller tag must be nonzero");
    const u64 ell = t_.characteristic();
    if (arith::split_prime(static_cast<u64>(s_.den()), ell).first != 1)
      throw DomainError("AdicUnit: singular part must have " + std::to_string(ell) + "-power denominator");
  }

  static AdicUnit one(u64 ell) { return AdicUnit(0, ModScalar::from_int(ell, 1), QmodZ()); }
  static AdicUnit teichmuller(const ModScalar& t) { return AdicUnit(0, t, QmodZ()); }

  i64 e_q() const { return e_; }
  const ModScalar& teich() const { return t_; }
  const QmodZ& sing() const { return s_; }
  u64 ell() const { return t_.characteristic(); }

  friend AdicUnit operator*(const AdicUnit& a, const AdicUnit& b) {
    return AdicUnit(a.e_ + b.e_, a.t_ * b.t_, a.s_ + b.s_);
  }
  AdicUnit inverse() const { return AdicUnit(-e_, t_.inverse(), -s_); }
  friend AdicUnit operator/(const AdicUnit& a, const AdicUnit& b) { return a * b.inverse(); }
  AdicUnit pow(i64 k) const { return AdicUnit(e_ * k, t_.pow(k), s_.times(k)); }

  bool is_one() const { return e_ == 0 && t_.is_one() && s_.is_zero(); }

  std::string encode() const {
    std::string t = t_.encode();
    if (t.find(' ') != std::string::npos) t = "(" + t + ")";
    return "q^" + std::to_string(e_) + " * " + t + " * zeta(" + s_.encode() + ")";
  }

  static AdicUnit parse(u64 ell, const std::string& text) {
    auto fail = [&]() -> DomainError { return DomainError("cannot parse unit '" + text + "'"); };
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.rfind("q^", 0) != 0) {
      // bare Teichmueller tag
      return teichmuller(parse_mod_scalar(ell, text));
    }
    const auto star1 = s.find('*');
    const auto zeta = s.rfind("*zeta(");
    if (star1 == std::string::npos || zeta == std::string::npos || zeta < star1 || s.back() != ')')
      throw fail();
    i64 e = 0;
    try {
      std::size_t used = 0;
      e = std::stoll(s.substr(2, star1 - 2), &used);
      if (used != star1 - 2) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
    std::string t = s.substr(star1 + 1, zeta - star1 - 1);
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    const std::string sing = s.substr(zeta + 6, s.size() - zeta - 7);
    return AdicUnit(e, parse_mod_scalar(ell, t), QmodZ::parse(sing));
  }

  friend bool operator==(const AdicUnit& a, const AdicUnit& b) {
    return a.e_ == b.e_ && a.t_ == b.t_ && a.s_ == b.s_;
  }

 private:
  i64 e_ = 0;
  ModScalar t_;
  QmodZ s_;
};

/// Least k >= 1 with x^k = 1.
inline u64 mult_order(const ModScalar& x) { return x.mult_order(); }

/// The smallest d with f' | ell^d - 1.
inline unsigned splitting_degree(u64 ell, u64 f_prime) {
  return static_cast<unsigned>(arith::mult_order_mod(ell % f_prime, f_prime));
}

/// Primitive f'-th root of unity in F_{ell^d}, d minimal (f' prime to ell).
inline ModScalar primitive_root_of_unity(u64 ell, u64 f_prime) {
  if (f_prime == 1) return ModScalar::from_int(ell, 1);
  const unsigned d = splitting_degree(ell, f_prime);
  const u64 order = arith::ipow(ell, d) - 1;
  return ModScalar::generator(ell, d).pow(static_cast<i64>(order / f_prime));
}

/// The f-th roots of unity in F_l-bar with multiplicity (f = f' l^v: the f' distinct
/// f'-th roots, each l^v times), sorted by encoding.
inline std::vector<ModScalar> roots_of_unity_with_multiplicity(const PrimeContext& ctx, u64 f) {
  if (f == 0) throw DomainError("roots_of_unity_with_multiplicity: f must be positive");
  const auto [f_prime, v] = arith::split_prime(f, ctx.ell);
  const u64 mult = arith::ipow(ctx.ell, v);
  const ModScalar w = primitive_root_of_unity(ctx.ell, f_prime);
  std::vector<ModScalar> out;
  ModScalar z = ModScalar::from_int(ctx.ell, 1);
  for (u64 i = 0; i < f_prime; ++i) {
    for (u64 j = 0; j < mult; ++j) out.push_back(z);
    z = z * w;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ModScalar& a, const ModScalar& b) { return a.encode() < b.encode(); });
  return out;
}

/// Reduction modulo l: q^e * t * zeta(s) -> q_bar^e * t.
inline ModScalar reduce_unit(const AdicUnit& u, const PrimeContext& ctx) {
  if (u.ell() != ctx.ell) throw DomainError("reduce_unit: characteristic mismatch");
  return ctx.qbar().pow(u.e_q()) * u.teich();
}

template <class S>
struct world_traits;

template <>
struct world_traits<ModScalar> {
  static constexpr bool adic = false;
  static constexpr const char* name = "mod-l";

  static ModScalar one(const PrimeContext& ctx) { return ModScalar::from_int(ctx.ell, 1); }
  static ModScalar q_pow(const PrimeContext& ctx, i64 k) { return ctx.qbar().pow(k); }
  static ModScalar from_adic(const AdicUnit& u, const PrimeContext& ctx) { return reduce_unit(u, ctx); }
  static std::string encode(const ModScalar& x) { return x.encode(); }
  static ModScalar parse(const PrimeContext& ctx, const std::string& s) {
    return parse_mod_scalar(ctx.ell, s);
  }
  static bool is_zero(const ModScalar& x) { return x.is_zero(); }

  /// x^f = 1
  static bool is_f_torsion(const ModScalar& x, u64 f) { return x.pow(static_cast<i64>(f)).is_one(); }

  /// The f-th roots of unity, each once.
  static std::vector<ModScalar> torsion(const PrimeContext& ctx, u64 f) {
    auto roots = roots_of_unity_with_multiplicity(ctx, f);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }

  /// f-th roots of unity with multiplicity, as the inverse roots of 1 - X^f.
  static std::vector<ModScalar> pole_family(const PrimeContext& ctx, u64 f) {
    return roots_of_unity_with_multiplicity(ctx, f);
  }
};

template <>
struct world_traits<AdicUnit> {
  static constexpr bool adic = true;
  static constexpr const char* name = "l-adic";

  static AdicUnit one(const PrimeContext& ctx) { return AdicUnit::one(ctx.ell); }
  static AdicUnit q_pow(const PrimeContext& ctx, i64 k) {
    return AdicUnit(k, ModScalar::from_int(ctx.ell, 1), QmodZ());
  }
  static AdicUnit from_adic(const AdicUnit& u, const PrimeContext&) { return u; }
  static std::string encode(const AdicUnit& x) { return x.encode(); }
  static AdicUnit parse(const PrimeContext& ctx, const std::string& s) { return AdicUnit::parse(ctx.ell, s); }
  static bool is_zero(const AdicUnit&) { return false; }

  static bool is_f_torsion(const AdicUnit& x, u64 f) {
    return x.e_q() == 0 && x.teich().pow(static_cast<i64>(f)).is_one() &&
           x.sing().times(static_cast<i64>(f)).is_zero();
  }

  /// All f-th roots of unity: teich in mu_{f'}, sing in (1/l^v)Z/Z.
  static std::vector<AdicUnit> torsion(const PrimeContext& ctx, u64 f) {
    const auto [f_prime, v] = arith::split_prime(f, ctx.ell);
    const i64 lv = static_cast<i64>(arith::ipow(ctx.ell, v));
    const ModScalar w = primitive_root_of_unity(ctx.ell, f_prime);
    std::vector<AdicUnit> out;
    ModScalar z = ModScalar::from_int(ctx.ell, 1);
    for (u64 i = 0; i < f_prime; ++i) {
      for (i64 j = 0; j < lv; ++j) out.emplace_back(0, z, QmodZ(j, lv));
      z = z * w;
    }
    std::sort(out.begin(), out.end(),
              [](const AdicUnit& a, const AdicUnit& b) { return a.encode() < b.encode(); });
    return out;
  }

  static std::vector<AdicUnit> pole_family(const PrimeContext& ctx, u64 f) { return torsion(ctx, f); }
};

/// Representative of the coset x * mu_f with the smallest encoding.
template <class S>
S canonical_in_torsion_coset(const PrimeContext& ctx, const S& x, u64 f) {
  if (f == 1) return x;
  S best = x;
  std::string best_enc = world_traits<S>::encode(x);
  for (const S& z : world_traits<S>::torsion(ctx, f)) {
    S y = x * z;
    std::string enc = world_traits<S>::encode(y);
    if (enc < best_enc) {
      best_enc = std::move(enc);
      best = std::move(y);
    }
  }
  return best;
}

}  // namespace lfactors
