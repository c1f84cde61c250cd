#pragma once

// Euler factors L(X) = prod (1 - a X)^{-1}, kept as multisets of inverse roots a,
// and gamma classes: rational functions modulo units c X^k, kept as reduced pairs
// of such multisets.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/scalars.hpp"

namespace lfactors {

template <class S>
class EulerFactor {
 public:
  struct Entry {
    std::string key;  // canonical encoding
    S value;
  };

  EulerFactor() = default;
  explicit EulerFactor(const std::vector<S>& roots) {
    entries_.reserve(roots.size());
    for (const S& r : roots) {
      if (world_traits<S>::is_zero(r)) throw DomainError("Euler factor: inverse roots must be nonzero");
      entries_.push_back({world_traits<S>::encode(r), r});
    }
    sort();
  }

  static EulerFactor from_entries(std::vector<Entry> entries) {
    EulerFactor e;
    e.entries_ = std::move(entries);
    e.sort();
    return e;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<S> roots() const {
    std::vector<S> out;
    for (const auto& e : entries_) out.push_back(e.value);
    return out;
  }
  std::size_t degree() const { return entries_.size(); }
  bool is_one() const { return entries_.empty(); }

  /// Sorted (encoded root, multiplicity) list.
  std::vector<std::pair<std::string, unsigned>> serialize() const {
    std::vector<std::pair<std::string, unsigned>> out;
    for (const auto& e : entries_) {
      if (!out.empty() && out.back().first == e.key) {
        ++out.back().second;
      } else {
        out.emplace_back(e.key, 1);
      }
    }
    return out;
  }

  friend bool operator==(const EulerFactor& a, const EulerFactor& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      if (a.entries_[i].key != b.entries_[i].key) return false;
    return true;
  }

 private:
  void sort() {
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const Entry& x, const Entry& y) { return x.key < y.key; });
  }

  std::vector<Entry> entries_;
};

namespace euler_detail {

// Merge-style multiset operations on sorted entry lists.
template <class S>
std::vector<typename EulerFactor<S>::Entry> intersect(const EulerFactor<S>& a, const EulerFactor<S>& b) {
  std::vector<typename EulerFactor<S>::Entry> out;
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].key < y[j].key) {
      ++i;
    } else if (y[j].key < x[i].key) {
      ++j;
    } else {
      out.push_back(x[i]);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class S>
std::vector<typename EulerFactor<S>::Entry> subtract(const EulerFactor<S>& a, const EulerFactor<S>& b) {
  std::vector<typename EulerFactor<S>::Entry> out;
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0, j = 0;
  while (i < x.size()) {
    if (j == y.size() || x[i].key < y[j].key) {
      out.push_back(x[i]);
      ++i;
    } else if (y[j].key < x[i].key) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace euler_detail

/// Inverse roots c * zeta over the f-th roots of unity zeta (with multiplicity):
/// the factor 1 / (1 - (cX)^f).
template <class S>
EulerFactor<S> ef_from_pole_family(const PrimeContext& ctx, const S& c, u64 f) {
  if (world_traits<S>::is_zero(c)) throw DomainError("ef_from_pole_family: c must be nonzero");
  std::vector<S> roots;
  for (const S& z : world_traits<S>::pole_family(ctx, f)) roots.push_back(c * z);
  return EulerFactor<S>(roots);
}

template <class S>
EulerFactor<S> ef_mul(const EulerFactor<S>& a, const EulerFactor<S>& b) {
  auto entries = a.entries();
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return EulerFactor<S>::from_entries(std::move(entries));
}

template <class S>
EulerFactor<S> ef_gcd(const EulerFactor<S>& a, const EulerFactor<S>& b) {
  return EulerFactor<S>::from_entries(euler_detail::intersect(a, b));
}

/// a | b as Euler factors, i.e. roots(a) is a sub-multiset of roots(b).
template <class S>
bool ef_divides(const EulerFactor<S>& a, const EulerFactor<S>& b) {
  return euler_detail::intersect(a, b).size() == a.degree();
}

/// L(q^{-1} X^{-1}) up to a unit: each inverse root b becomes q / b.
template <class S>
EulerFactor<S> ef_dual_substitute(const EulerFactor<S>& e, const PrimeContext& ctx) {
  const S q = world_traits<S>::q_pow(ctx, 1);
  std::vector<S> roots;
  for (const auto& entry : e.entries()) roots.push_back(q * entry.value.inverse());
  return EulerFactor<S>(roots);
}

inline EulerFactor<ModScalar> ef_reduce(const EulerFactor<AdicUnit>& e, const PrimeContext& ctx) {
  std::vector<ModScalar> roots;
  for (const auto& entry : e.entries()) roots.push_back(reduce_unit(entry.value, ctx));
  return EulerFactor<ModScalar>(roots);
}

/// Class of a rational function modulo units of R[X, X^{-1}]:
/// prod_{b in den} (1 - bX) / prod_{a in num} (1 - aX), i.e. the quotient of the
/// Euler factor with inverse roots `num` by the one with inverse roots `den`.
template <class S>
class GammaClass {
 public:
  GammaClass() = default;
  GammaClass(EulerFactor<S> num, EulerFactor<S> den) {
    num_ = EulerFactor<S>::from_entries(euler_detail::subtract(num, den));
    den_ = EulerFactor<S>::from_entries(euler_detail::subtract(den, num));
  }

  const EulerFactor<S>& num() const { return num_; }
  const EulerFactor<S>& den() const { return den_; }
  bool is_unit() const { return num_.is_one() && den_.is_one(); }

  friend bool operator==(const GammaClass& a, const GammaClass& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  EulerFactor<S> num_;
  EulerFactor<S> den_;
};

template <class S>
GammaClass<S> gamma_make(const EulerFactor<S>& num, const EulerFactor<S>& den) {
  return GammaClass<S>(num, den);
}

template <class S>
GammaClass<S> gamma_mul(const GammaClass<S>& a, const GammaClass<S>& b) {
  return GammaClass<S>(ef_mul(a.num(), b.num()), ef_mul(a.den(), b.den()));
}

inline GammaClass<ModScalar> gamma_reduce_modl(const GammaClass<AdicUnit>& g, const PrimeContext& ctx) {
  return GammaClass<ModScalar>(ef_reduce(g.num(), ctx), ef_reduce(g.den(), ctx));
}

namespace euler_detail {

inline std::string x_power(std::size_t k) {
  if (k == 1) return "X";
  return "X^" + std::to_string(k);
}

// Expanded polynomial prod (1 - aX) over the common field, written
// "1 - c_1X - c_2X^2 ..." so that P = 1 - sum c_k X^k.
inline std::string expand_poly(const EulerFactor<ModScalar>& e) {
  const auto& entries = e.entries();
  const u64 ell = entries.front().value.characteristic();
  std::vector<ModScalar> coeffs{ModScalar::from_int(ell, 1)};
  for (const auto& entry : entries) {
    coeffs.push_back(ModScalar::from_int(ell, 0));
    for (std::size_t k = coeffs.size() - 1; k > 0; --k) coeffs[k] = coeffs[k] - entry.value * coeffs[k - 1];
  }
  std::ostringstream os;
  os << "1";
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    const ModScalar c = -coeffs[k];
    if (c.is_zero()) continue;
    os << " - ";
    if (!c.is_one()) {
      const std::string enc = c.encode();
      if (c.degree() == 1) {
        os << enc;
      } else {
        os << "(" << enc << ")";
      }
    }
    os << x_power(k);
  }
  return os.str();
}

inline std::string factored_poly(const EulerFactor<AdicUnit>& e) {
  std::ostringstream os;
  const auto ser = e.serialize();
  for (const auto& [key, mult] : ser) {
    os << "(1 - [" << key << "]X)";
    if (mult > 1) os << "^" << mult;
  }
  return os.str();
}

inline std::string poly_text(const EulerFactor<ModScalar>& e) { return "(" + expand_poly(e) + ")"; }
inline std::string poly_text(const EulerFactor<AdicUnit>& e) {
  const auto ser = e.serialize();
  if (ser.size() == 1 && ser.front().second == 1) return "(1 - [" + ser.front().first + "]X)";
  return "(" + factored_poly(e) + ")";
}

}  // namespace euler_detail

/// "1" for the trivial factor; otherwise 1/P(X).  Mod-l factors are expanded
/// over a common field, l-adic ones are printed factored.
template <class S>
std::string ef_render(const EulerFactor<S>& e) {
  if (e.is_one()) return "1";
  return "1/" + euler_detail::poly_text(e);
}

/// The rational function prod_{den}(1 - bX) / prod_{num}(1 - aX).
template <class S>
std::string gamma_render(const GammaClass<S>& g) {
  if (g.is_unit()) return "1";
  std::string top = g.den().is_one() ? "1" : euler_detail::poly_text(g.den());
  if (g.num().is_one()) return top;
  return top + "/" + euler_detail::poly_text(g.num());
}

}  // namespace lfactors
