#pragma once

// Q(zeta_N) as Q[x] / Phi_N(x) with exact rational coordinates.

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/arith.hpp"

namespace lfactors::tate {

using Rational = boost::multiprecision::cpp_rational;
using RPoly = std::vector<Rational>;  // little-endian

namespace cyc_detail {

inline void trim(RPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RPoly mul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline RPoly sub(RPoly a, const RPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// (quotient, remainder); b nonzero.
inline std::pair<RPoly, RPoly> divmod(RPoly a, const RPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  RPoly q(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / lead;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline RPoly cyclotomic_poly(arith::u64 n) {
  RPoly num(n + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  for (arith::u64 d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = divmod(num, cyclotomic_poly(d)).first;
  }
  return num;
}

}  // namespace cyc_detail

struct CycField {
  arith::u64 N = 1;
  RPoly modulus;  // Phi_N, monic
  std::size_t degree() const { return modulus.size() - 1; }
};

class CycElem {
 public:
  CycElem() = default;
  CycElem(std::shared_ptr<const CycField> field, RPoly coords) : field_(std::move(field)), c_(std::move(coords)) {
    cyc_detail::trim(c_);
    if (c_.size() > field_->degree()) c_ = cyc_detail::divmod(c_, field_->modulus).second;
  }

  static std::shared_ptr<const CycField> field(arith::u64 N) {
    auto f = std::make_shared<CycField>();
    f->N = N;
    f->modulus = cyc_detail::cyclotomic_poly(N);
    return f;
  }

  static CycElem rational(const std::shared_ptr<const CycField>& f, const Rational& r) {
    return CycElem(f, RPoly{r});
  }

  /// zeta_N^j
  static CycElem zeta(const std::shared_ptr<const CycField>& f, arith::i64 j) {
    const auto e = arith::mod(j, f->N);
    RPoly x(e + 1, Rational(0));
    x[e] = 1;
    return CycElem(f, x);
  }

  const RPoly& coords() const { return c_; }
  const std::shared_ptr<const CycField>& field() const { return field_; }
  bool is_zero() const { return c_.empty(); }

  friend CycElem operator+(const CycElem& a, const CycElem& b) {
    RPoly x = a.c_;
    if (x.size() < b.c_.size()) x.resize(b.c_.size(), Rational(0));
    for (std::size_t i = 0; i < b.c_.size(); ++i) x[i] += b.c_[i];
    return CycElem(a.field_, std::move(x));
  }
  CycElem operator-() const {
    RPoly x = c_;
    for (auto& v : x) v = -v;
    return CycElem(field_, std::move(x));
  }
  friend CycElem operator-(const CycElem& a, const CycElem& b) { return a + (-b); }
  friend CycElem operator*(const CycElem& a, const CycElem& b) {
    return CycElem(a.field_, cyc_detail::mul(a.c_, b.c_));
  }

  /// Inverse via the extended Euclidean algorithm against Phi_N.
  CycElem inverse() const {
    if (is_zero()) throw DomainError("CycElem: zero has no inverse");
    RPoly r0 = field_->modulus, r1 = c_;
    RPoly s0, s1{Rational(1)};
    while (!r1.empty()) {
      auto [q, r] = cyc_detail::divmod(r0, r1);
      RPoly s = cyc_detail::sub(s0, cyc_detail::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r0 is a nonzero constant
    const Rational c = r0.front();
    for (auto& v : s0) v /= c;
    return CycElem(field_, s0);
  }

  CycElem pow(arith::i64 e) const {
    if (e < 0) return inverse().pow(-e);
    CycElem result = rational(field_, 1), base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  /// Coordinates have no denominator divisible by ell.
  bool is_integral_at(arith::u64 ell) const {
    for (const auto& v : c_)
      if (boost::multiprecision::denominator(v) % ell == 0) return false;
    return true;
  }

  std::string encode() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i] << ")";
      if (i > 0) os << "*z^" << i;
    }
    return os.str();
  }

  friend bool operator==(const CycElem& a, const CycElem& b) { return a.c_ == b.c_; }

 private:
  std::shared_ptr<const CycField> field_;
  RPoly c_;
};

}  // namespace lfactors::tate
