#pragma once

// Brute-force Tate integrals for pairs of GL1 characters.
//
// F = F_q((w)), theta(x) = psi(Tr a_{-1}(x)) with psi(c) = zeta_p^c (conductor 0),
// dx(O) = 1, d^x x normalized by vol(1 + p) = 1.  The coefficient ring is either
// F_l-bar (ModlRing) or Q(zeta_N), N = p(q - 1) (Char0Ring); in both, zeta_N
// denotes a fixed element of order N (resp. its reduction, of order the
// prime-to-l part of N).  A character is chi(w^k t (1 + y)) = u^k eta(t) with
// eta(g^i) = zeta_{q-1}^{s i}, g the generator of F_q^x.
//
// Integrals are summed shell by shell over |k| <= M and the resulting series
// certified to be rational of the form P(X) / (1 - uX)^e, e in {0, 1}.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/scalars.hpp"
#include "lfactors/tate/cyclotomic.hpp"
#include "lfactors/tate/local_field.hpp"

namespace lfactors::tate {

struct ModlRing {
  using Elem = GfElem;
  static constexpr bool char0 = false;

  u64 ell = 0, q = 0, p = 0, N = 0, N_prime = 0;
  GfElem omega;  // order N_prime

  static ModlRing make(u64 ell, u64 q) {
    const auto ctx = PrimeContext::make(ell, q);
    ModlRing r;
    r.ell = ell;
    r.q = q;
    r.p = ctx.p;
    r.N = ctx.p * (q - 1);
    r.N_prime = arith::split_prime(r.N, ell).first;
    r.omega = primitive_root_of_unity(ell, r.N_prime);
    return r;
  }

  Elem zero() const { return GfElem::from_int(ell, 0); }
  Elem one() const { return GfElem::from_int(ell, 1); }
  Elem from_int(i64 v) const { return GfElem::from_int(ell, v); }
  Elem zeta(i64 j) const { return omega.pow(static_cast<i64>(arith::mod(j, N_prime))); }
  Elem q_pow(i64 k) const { return from_int(static_cast<i64>(q)).pow(k); }
  static bool is_zero(const Elem& x) { return x.is_zero(); }
  static Elem inverse(const Elem& x) { return x.inverse(); }
  static std::string encode(const Elem& x) { return x.encode(); }
};

struct Char0Ring {
  using Elem = CycElem;
  static constexpr bool char0 = true;

  u64 q = 0, p = 0, N = 0;
  std::shared_ptr<const CycField> field;

  static Char0Ring make(u64 q) {
    Char0Ring r;
    r.q = q;
    r.p = arith::prime_of_power(q);
    if (r.p == 0) throw DomainError("q must be a prime power");
    r.N = r.p * (q - 1);
    r.field = CycElem::field(r.N);
    return r;
  }

  Elem zero() const { return CycElem::rational(field, 0); }
  Elem one() const { return CycElem::rational(field, 1); }
  Elem from_int(i64 v) const { return CycElem::rational(field, v); }
  Elem zeta(i64 j) const { return CycElem::zeta(field, j); }
  Elem q_pow(i64 k) const {
    Rational x = 1;
    for (i64 i = 0; i < (k < 0 ? -k : k); ++i) x *= q;
    return CycElem::rational(field, k < 0 ? Rational(1) / x : x);
  }
  static bool is_zero(const Elem& x) { return x.is_zero(); }
  static Elem inverse(const Elem& x) { return x.inverse(); }
  static std::string encode(const Elem& x) { return x.encode(); }
};

/// Reduction Z_(l)[zeta_N] -> F_l-bar, zeta_N -> omega.
inline GfElem reduce_char0(const CycElem& x, const ModlRing& ring) {
  GfElem acc = ring.zero();
  const auto& c = x.coords();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const auto num = boost::multiprecision::numerator(c[i]);
    const auto den = boost::multiprecision::denominator(c[i]);
    const boost::multiprecision::cpp_int l(ring.ell);
    if (den % l == 0) throw DomainError("reduce_char0: coordinate not integral at l");
    boost::multiprecision::cpp_int nm = num % l, dm = den % l;
    if (nm < 0) nm += l;
    const GfElem v = GfElem::from_int(ring.ell, nm.convert_to<i64>()) /
                     GfElem::from_int(ring.ell, dm.convert_to<i64>());
    acc = acc + v * ring.zeta(static_cast<i64>(i));
  }
  return acc;
}

/// chi(w^k t (1 + y)) = u^k eta(t), eta(g^i) = zeta_{q-1}^{s i}.
template <class Ring>
struct Gl1Character {
  typename Ring::Elem u;
  i64 s = 0;
};

template <class Ring>
Gl1Character<Ring> char_product(const Ring& ring, const Gl1Character<Ring>& a, const Gl1Character<Ring>& b) {
  return {a.u * b.u, static_cast<i64>(arith::mod(a.s + b.s, ring.q - 1))};
}

template <class Ring>
Gl1Character<Ring> char_inverse(const Ring& ring, const Gl1Character<Ring>& a) {
  return {Ring::inverse(a.u), static_cast<i64>(arith::mod(-a.s, ring.q - 1))};
}

template <class Ring>
void check_character(const Ring& ring, const Gl1Character<Ring>& c) {
  if (Ring::is_zero(c.u)) throw DomainError("unramified part must be a unit");
  if constexpr (Ring::char0) {
    const i64 s = static_cast<i64>(arith::mod(c.s, ring.q - 1));
    if (s != 0 && 2 * s != static_cast<i64>(ring.q - 1))
      throw DomainError("characteristic-0 tame part must be trivial or quadratic");
  }
}

template <class Ring>
typename Ring::Elem eta_value(const Ring& ring, i64 s, std::size_t i) {
  return ring.zeta(static_cast<i64>(ring.p) * s * static_cast<i64>(i));
}

/// theta(x) = zeta_p^{Tr a_{-1}(x)}, zeta_p = zeta_N^{q-1}.
template <class Ring>
typename Ring::Elem theta(const Ring& ring, const ResidueField& k, const Laurent& x) {
  auto it = x.find(-1);
  if (it == x.end()) return ring.one();
  return ring.zeta(static_cast<i64>(k.trace(it->second) * (ring.q - 1)));
}

template <class Ring>
using TF = TestFunction<typename Ring::Elem>;

template <class Ring>
TF<Ring> indicator(const Ring& ring, const Ball& b) {
  return TF<Ring>{{{b, ring.one()}}};
}

/// Fourier transform for the self-dual measure:
/// the transform of 1_{a + p^m} is q^{-m} theta(a y) 1_{p^{-m}}(y).
template <class Ring>
TF<Ring> fourier(const Ring& ring, const ResidueField& k, const TF<Ring>& phi) {
  TF<Ring> out;
  for (const auto& [ball, c] : phi.terms) {
    const int m = ball.m;
    const auto coeff = c * ring.q_pow(-m);
    const int va = valuation(ball.center);
    if (ball.center.empty() || va >= m) {
      out.terms.emplace_back(Ball::make({}, -m), coeff);
      continue;
    }
    // theta(a y) is constant on cosets of p^{-v(a)} inside p^{-m}
    const auto digits = k.elements();
    const int lo = -m, hi = -va;  // free digits at indices lo .. hi-1
    std::vector<std::size_t> idx(static_cast<std::size_t>(hi - lo), 0);
    while (true) {
      Laurent y0;
      for (int i = lo; i < hi; ++i) {
        const auto& d = digits[idx[static_cast<std::size_t>(i - lo)]];
        if (!d.is_zero()) y0.emplace(i, d);
      }
      out.terms.emplace_back(Ball::make(y0, hi), coeff * theta(ring, k, laurent_mul(ball.center, y0)));
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == digits.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return out;
}

/// Checks fourier(fourier(phi))(x) = phi(-x) on every coset of the finest level.
template <class Ring>
bool fourier_inversion_holds(const Ring& ring, const ResidueField& k, const TF<Ring>& phi) {
  const TF<Ring> twice = fourier(ring, k, fourier(ring, k, phi));
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto* f : {&phi, &twice})
    for (const auto& [b, c] : f->terms) {
      lo = std::min({lo, b.m, valuation(b.center)});
      hi = std::max(hi, b.m);
    }
  if (lo > hi) return true;
  const auto digits = k.elements();
  std::vector<std::size_t> idx(static_cast<std::size_t>(hi - lo), 0);
  while (true) {
    Laurent x;
    for (int i = lo; i < hi; ++i) {
      const auto& d = digits[idx[static_cast<std::size_t>(i - lo)]];
      if (!d.is_zero()) x.emplace(i, d);
    }
    if (!(twice.eval(ring, x) == phi.eval(ring, laurent_neg(x)))) return false;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == digits.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return true;
}

/// c_k = integral over v(x) = k of omega(x) phi(x) d^x x.
template <class Ring>
typename Ring::Elem shell_coefficient(const Ring& ring, const ResidueField& kf, const Gl1Character<Ring>& omega,
                                      const TF<Ring>& phi, int k, int window) {
  if (k < -window || k > window) throw DomainError("shell index outside the precision window");
  auto total = ring.zero();
  const auto uk = omega.u.pow(k);
  for (std::size_t i = 0; i < kf.units.size(); ++i) {
    const Ball shell = Ball::make(Laurent{{k, kf.units[i]}}, k + 1);
    auto part = ring.zero();
    for (const auto& [b, c] : phi.terms) {
      if (shell.inside(b)) {
        part = part + c;
      } else if (b.inside(shell)) {
        part = part + c * ring.q_pow(k + 1 - b.m);
      }
    }
    if (!Ring::is_zero(part)) total = total + part * eta_value(ring, omega.s, i);
  }
  return total * uk;
}

template <class Ring>
std::vector<typename Ring::Elem> rs_series(const Ring& ring, const ResidueField& kf, const Gl1Character<Ring>& omega,
                                           const TF<Ring>& phi, int window) {
  std::vector<typename Ring::Elem> out;
  for (int k = -window; k <= window; ++k) out.push_back(shell_coefficient(ring, kf, omega, phi, k, window));
  return out;
}

template <class Elem>
using LPoly = std::map<int, Elem>;  // Laurent polynomial, zero terms omitted

template <class Ring>
LPoly<typename Ring::Elem> lpoly_mul(const LPoly<typename Ring::Elem>& a, const LPoly<typename Ring::Elem>& b) {
  LPoly<typename Ring::Elem> out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto it = out.find(i + j);
      if (it == out.end()) {
        out.emplace(i + j, x * y);
      } else {
        it->second = it->second + x * y;
      }
    }
  for (auto it = out.begin(); it != out.end();) it = Ring::is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

/// 1 - aX
template <class Ring>
LPoly<typename Ring::Elem> one_minus(const Ring& ring, const typename Ring::Elem& a) {
  return {{0, ring.one()}, {1, ring.zero() - a}};
}

/// P(q^{-1} X^{-1}) as a Laurent polynomial in X.
template <class Ring>
LPoly<typename Ring::Elem> substitute_dual(const Ring& ring, const LPoly<typename Ring::Elem>& p) {
  LPoly<typename Ring::Elem> out;
  for (const auto& [j, c] : p) out.emplace(-j, c * ring.q_pow(-j));
  return out;
}

template <class Ring>
std::string lpoly_render(const LPoly<typename Ring::Elem>& p) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : p) {
    if (!s.empty()) s += " + ";
    s += "(" + Ring::encode(c) + ")X^" + std::to_string(k);
  }
  return s;
}

/// num(X) / (1 - uX)^e
template <class Ring>
struct CertifiedSeries {
  bool ok = false;
  std::string failure;
  LPoly<typename Ring::Elem> num;
  int e = 0;
  int tail_start = 0;
};

/// Certifies a window of coefficients as num / (1 - uX)^e, e in {0, 1}: the low
/// end must vanish and the high end must satisfy c_{k+1} = u c_k for at least
/// 2 * 1 + 4 consecutive terms.
template <class Ring>
CertifiedSeries<Ring> certify(const Ring& ring, const std::vector<typename Ring::Elem>& c,
                              const typename Ring::Elem& u, int window) {
  CertifiedSeries<Ring> out;
  const int min_tail = 2 * 1 + 4;
  auto at = [&](int k) -> const typename Ring::Elem& { return c[static_cast<std::size_t>(k + window)]; };
  for (int k = -window; k < -window + min_tail; ++k)
    if (!Ring::is_zero(at(k))) {
      out.failure = "series does not vanish at the low end of the window";
      return out;
    }
  int t = window;
  while (t > -window && at(t) == u * at(t - 1)) --t;
  if (window - t + 1 < min_tail) {
    out.failure = "window too small to certify the recurrence";
    return out;
  }
  LPoly<typename Ring::Elem> head;
  for (int k = -window; k < t; ++k)
    if (!Ring::is_zero(at(k))) head.emplace(k, at(k));
  out.tail_start = t;
  if (Ring::is_zero(at(t))) {
    out.num = head;
    out.e = 0;
  } else {
    out.num = lpoly_mul<Ring>(head, one_minus(ring, u));
    auto it = out.num.find(t);
    if (it == out.num.end()) {
      out.num.emplace(t, at(t));
    } else {
      it->second = it->second + at(t);
      if (Ring::is_zero(it->second)) out.num.erase(it);
    }
    out.e = 1;
  }
  out.ok = true;
  return out;
}

/// The spanning family used for the ideal: 1_{p^m} (m = -1..2), 1_{1+p^m}
/// (m = 1, 2), 1_{a+p} (a in F_q^x).
template <class Ring>
std::vector<std::pair<std::string, TF<Ring>>> test_family(const Ring& ring, const ResidueField& kf) {
  std::vector<std::pair<std::string, TF<Ring>>> out;
  for (int m = -1; m <= 2; ++m) {
    Ball b = Ball::make({}, m);
    out.emplace_back("1_{" + b.encode() + "}", indicator(ring, b));
  }
  for (int m = 1; m <= 2; ++m) {
    Ball b = Ball::make(Laurent{{0, kf.units[0]}}, m);
    out.emplace_back("1_{" + b.encode() + "}", indicator(ring, b));
  }
  for (std::size_t i = 1; i < kf.units.size(); ++i) {
    Ball b = Ball::make(Laurent{{0, kf.units[i]}}, 1);
    out.emplace_back("1_{" + b.encode() + "}", indicator(ring, b));
  }
  return out;
}

template <class Ring>
struct TateLResult {
  bool ok = false;
  std::string failure;
  std::optional<typename Ring::Elem> root;  // L = 1/(1 - root X) or 1
  std::vector<std::string> phi_names;
  std::vector<CertifiedSeries<Ring>> series;
  std::size_t generator = 0;  // index of the Phi attaining L
  LPoly<typename Ring::Elem> generator_quotient;  // I / L for that Phi, a unit monomial
};

template <class Ring>
TateLResult<Ring> tate_L_via_ideal(const Ring& ring, const ResidueField& kf, const Gl1Character<Ring>& chi,
                                   const Gl1Character<Ring>& chi2, int window = 20) {
  check_character(ring, chi);
  check_character(ring, chi2);
  const auto omega = char_product(ring, chi, chi2);
  TateLResult<Ring> res;
  int max_e = 0;
  for (const auto& [name, phi] : test_family(ring, kf)) {
    auto cert = certify(ring, rs_series(ring, kf, omega, phi, window), omega.u, window);
    if (!cert.ok) {
      res.failure = name + ": " + cert.failure;
      return res;
    }
    max_e = std::max(max_e, cert.e);
    res.phi_names.push_back(name);
    res.series.push_back(std::move(cert));
  }
  if (max_e == 1) res.root = omega.u;
  // every I lies in L R[X^{+-1}] by construction (e <= max_e); find a generator
  for (std::size_t i = 0; i < res.series.size(); ++i) {
    auto quotient = res.series[i].num;
    if (res.series[i].e < max_e) quotient = lpoly_mul<Ring>(quotient, one_minus(ring, omega.u));
    if (quotient.size() == 1) {
      res.generator = i;
      res.generator_quotient = quotient;
      res.ok = true;
      return res;
    }
  }
  res.failure = "no test function in the family attains the candidate generator";
  return res;
}

template <class Ring>
struct EpsilonResult {
  bool ok = false;
  bool consistent = false;
  bool unit = true;  // c is an l-adic unit (characteristic 0 only)
  std::string failure;
  typename Ring::Elem c;
  int k = 0;
  std::size_t phis_used = 0;
  std::optional<typename Ring::Elem> root;       // L(X, omega)
  std::optional<typename Ring::Elem> dual_root;  // L(X, omega^{-1})
};

/// Extracts eps = c X^k from
///   I(q^{-1}X^{-1}, omega^{-1}, phi^) / L(q^{-1}X^{-1}, omega^{-1}) = eps I(X, omega, phi) / L(X, omega)
/// over the test family.
template <class Ring>
EpsilonResult<Ring> epsilon_extract(const Ring& ring, const ResidueField& kf, const Gl1Character<Ring>& chi,
                                    const Gl1Character<Ring>& chi2, int window = 20, u64 ell = 0) {
  EpsilonResult<Ring> res;
  const auto omega = char_product(ring, chi, chi2);
  const auto omega_dual = char_inverse(ring, omega);
  const auto l = tate_L_via_ideal(ring, kf, chi, chi2, window);
  const auto l_dual = tate_L_via_ideal(ring, kf, char_inverse(ring, chi), char_inverse(ring, chi2), window);
  if (!l.ok || !l_dual.ok) {
    res.failure = "L-factor certification failed: " + (l.ok ? l_dual.failure : l.failure);
    return res;
  }
  res.root = l.root;
  res.dual_root = l_dual.root;
  bool have = false;
  res.consistent = true;
  for (const auto& [name, phi] : test_family(ring, kf)) {
    if (!fourier_inversion_holds(ring, kf, phi)) {
      res.failure = name + ": Fourier inversion fails";
      res.consistent = false;
      return res;
    }
    const auto phi_hat = fourier(ring, kf, phi);
    const auto ci = certify(ring, rs_series(ring, kf, omega, phi, window), omega.u, window);
    const auto cj = certify(ring, rs_series(ring, kf, omega_dual, phi_hat, window), omega_dual.u, window);
    if (!ci.ok || !cj.ok) {
      res.failure = name + ": " + (ci.ok ? cj.failure : ci.failure);
      res.consistent = false;
      return res;
    }
    auto rhs = ci.num;
    if (l.root && ci.e == 0) rhs = lpoly_mul<Ring>(rhs, one_minus(ring, omega.u));
    auto lhs_y = cj.num;
    if (l_dual.root && cj.e == 0) lhs_y = lpoly_mul<Ring>(lhs_y, one_minus(ring, omega_dual.u));
    const auto lhs = substitute_dual(ring, lhs_y);
    if (rhs.empty()) {
      if (!lhs.empty()) {
        res.failure = name + ": right side vanishes but left side does not";
        res.consistent = false;
        return res;
      }
      continue;
    }
    if (lhs.empty()) {
      res.failure = name + ": left side vanishes but right side does not";
      res.consistent = false;
      return res;
    }
    const int k = lhs.begin()->first - rhs.begin()->first;
    const auto c = lhs.begin()->second * Ring::inverse(rhs.begin()->second);
    LPoly<typename Ring::Elem> shifted;
    for (const auto& [i, x] : rhs) shifted.emplace(i + k, c * x);
    if (!(shifted == lhs)) {
      res.failure = name + ": the two sides do not differ by a monomial";
      res.consistent = false;
      return res;
    }
    if (!have) {
      res.c = c;
      res.k = k;
      have = true;
    } else if (!(res.c == c) || res.k != k) {
      res.failure = name + ": epsilon depends on the test function";
      res.consistent = false;
      return res;
    }
    ++res.phis_used;
  }
  if (!have) {
    res.failure = "no test function with a nonzero integral";
    return res;
  }
  if constexpr (Ring::char0) {
    if (ell != 0) res.unit = res.c.is_integral_at(ell) && res.c.inverse().is_integral_at(ell);
  }
  res.ok = res.consistent;
  return res;
}

/// gamma = eps L(q^{-1}X^{-1}, dual) / L(X) compared across reduction by
/// cross-multiplying the polynomials 1/L:
///   r(eps_0) r(P_0(X)) Pd_l(Y) = eps_l P_l(X) r(Pd_0(Y)),  Y = q^{-1}X^{-1}.
inline bool gamma_reduces(const Char0Ring& r0, const EpsilonResult<Char0Ring>& e0, const ModlRing& rl,
                          const EpsilonResult<ModlRing>& el) {
  auto red = [&](const CycElem& x) { return reduce_char0(x, rl); };
  auto poly_l = [&](const std::optional<GfElem>& root) -> LPoly<GfElem> {
    return root ? one_minus(rl, *root) : LPoly<GfElem>{{0, rl.one()}};
  };
  auto poly_0 = [&](const std::optional<CycElem>& root) -> LPoly<GfElem> {
    return root ? one_minus(rl, red(*root)) : LPoly<GfElem>{{0, rl.one()}};
  };
  const LPoly<GfElem> eps0{{e0.k, red(e0.c)}};
  const LPoly<GfElem> epsl{{el.k, el.c}};
  const auto left = lpoly_mul<ModlRing>(lpoly_mul<ModlRing>(eps0, poly_0(e0.root)),
                                        substitute_dual(rl, poly_l(el.dual_root)));
  const auto right = lpoly_mul<ModlRing>(lpoly_mul<ModlRing>(epsl, poly_l(el.root)),
                                         substitute_dual(rl, poly_0(e0.dual_root)));
  (void)r0;
  return left == right;
}

}  // namespace lfactors::tate
