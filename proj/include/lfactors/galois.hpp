#pragma once

// Exact arithmetic in the algebraic closure of a prime field, realized as a
// compatible tower of finite fields F_{p^d}.
//
// Each F_{p^d} is presented as F_p[x]/(P_d) with P_d the first monic
// polynomial, in the order of its coefficient vector (x^{d-1} coefficient most
// significant), that is primitive and norm-compatible with every P_{d/r}:
// the image of the generator g_d under the norm map is g_{d/r}.  Embeddings
// F_{p^{d0}} -> F_{p^d} send g_{d0} to g_d^{(p^d-1)/(p^{d0}-1)}, which makes
// any chain of embeddings commute with the direct one.
//
// Elements are stored in canonical form: at the smallest degree whose field
// contains them.  Equality is therefore structural.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/arith.hpp"

namespace lfactors {

namespace gf_detail {

using arith::u64;
using Poly = std::vector<u64>;  // little-endian coefficients mod p

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b mod (monic) m, all coefficients mod p.  a, b have degree < deg m.
inline Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  const std::size_t d = m.size() - 1;
  std::vector<u64> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + arith::mulmod(a[i], b[j], p)) % p;
  }
  for (std::size_t k = prod.size(); k-- > d;) {
    const u64 c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < d; ++i) {
      // x^k = x^{k-d} * x^d and x^d = -sum m_i x^i
      const u64 t = arith::mulmod(c, m[i], p);
      prod[k - d + i] = (prod[k - d + i] + p - t) % p;
    }
  }
  prod.resize(d, 0);
  return prod;
}

inline Poly powmod_poly(Poly base, u64 exp, const Poly& m, u64 p) {
  const std::size_t d = m.size() - 1;
  Poly result(d, 0);
  result[0] = 1 % p;
  base.resize(d, 0);
  while (exp > 0) {
    if (exp & 1U) result = mulmod_poly(result, base, m, p);
    base = mulmod_poly(base, base, m, p);
    exp >>= 1U;
  }
  return result;
}

inline bool is_one(const Poly& a) {
  if (a.empty() || a[0] != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](u64 c) { return c == 0; });
}

// Evaluates the polynomial `f` (little-endian, arbitrary degree) at the field
// element `h` of F_p[x]/(m).
inline Poly evaluate(const Poly& f, const Poly& h, const Poly& m, u64 p) {
  const std::size_t d = m.size() - 1;
  Poly acc(d, 0);
  for (std::size_t k = f.size(); k-- > 0;) {
    acc = mulmod_poly(acc, h, m, p);
    acc[0] = (acc[0] + f[k]) % p;
  }
  return acc;
}

}  // namespace gf_detail

/// The tower of finite fields of one characteristic.  Obtain via `of(p)`;
/// instances live for the duration of the program and are thread-safe.
class GfTower {
 public:
  using u64 = arith::u64;
  using Poly = gf_detail::Poly;

  struct Level {
    unsigned degree = 0;
    Poly modulus;         // monic, size degree + 1
    u64 order = 0;        // p^degree - 1
    std::vector<u64> order_primes;
  };

  struct Embedding {
    // Columns: coordinates in F_{p^d} of h^i, i < d0, where h is the image of
    // the generator of F_{p^{d0}}.
    std::vector<Poly> basis_images;
  };

  static constexpr u64 kMaxFieldSize = u64{1} << 40;

  static const GfTower& of(u64 p) {
    static std::mutex registry_mutex;
    static std::map<u64, std::unique_ptr<GfTower>> registry;
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry.find(p);
    if (it == registry.end()) {
      if (!arith::is_prime(p) || p > (u64{1} << 31))
        throw DomainError("GfTower: characteristic must be a prime below 2^31");
      it = registry.emplace(p, std::unique_ptr<GfTower>(new GfTower(p))).first;
    }
    return *it->second;
  }

  u64 characteristic() const { return p_; }

  const Level& level(unsigned d) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = levels_.find(d);
      if (it != levels_.end()) return *it->second;
    }
    // Lower levels first, outside the lock (they recurse into level()).
    std::vector<const Level*> lower;
    for (u64 r : arith::prime_factors(d)) lower.push_back(&level(d / static_cast<unsigned>(r)));
    auto built = build_level(d, lower);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = levels_.emplace(d, std::move(built));
    return *it->second;
  }

  const Embedding& embedding(unsigned d0, unsigned d) const {
    if (d % d0 != 0) throw DomainError("GfTower::embedding: degree does not divide");
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = embeddings_.find({d0, d});
      if (it != embeddings_.end()) return *it->second;
    }
    const Level& big = level(d);
    const u64 n = big.order / (arith::ipow(p_, d0) - 1);
    Poly x(d, 0);
    if (d == 1) {
      x[0] = (p_ - big.modulus[0]) % p_;
    } else {
      x[1] = 1;
    }
    const Poly h = gf_detail::powmod_poly(x, n, big.modulus, p_);
    auto emb = std::make_unique<Embedding>();
    Poly acc(d, 0);
    acc[0] = 1;
    for (unsigned i = 0; i < d0; ++i) {
      emb->basis_images.push_back(acc);
      acc = gf_detail::mulmod_poly(acc, h, big.modulus, p_);
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = embeddings_.emplace(std::make_pair(d0, d), std::move(emb));
    return *it->second;
  }

 private:
  explicit GfTower(u64 p) : p_(p) {}

  std::unique_ptr<Level> build_level(unsigned d, const std::vector<const Level*>& lower) const {
    const u64 size = arith::ipow(p_, d);
    if (size > kMaxFieldSize) throw DomainError("GfTower: field F_" + std::to_string(p_) + "^" +
                                                std::to_string(d) + " exceeds the supported size");
    auto lvl = std::make_unique<Level>();
    lvl->degree = d;
    lvl->order = size - 1;
    lvl->order_primes = arith::prime_factors(lvl->order);

    Poly x(d, 0);
    for (u64 index = 0; index < size; ++index) {
      // digits of index, most significant = coefficient of x^{d-1}
      Poly m(d + 1, 0);
      m[d] = 1;
      u64 rest = index;
      for (unsigned i = 0; i < d; ++i) {
        m[i] = rest % p_;
        rest /= p_;
      }
      if (m[0] == 0) continue;
      // generator element: x (or the root of the linear polynomial for d = 1)
      Poly gen(d, 0);
      if (d == 1) {
        gen[0] = (p_ - m[0]) % p_;
      } else {
        gen[1] = 1;
      }
      if (!gf_detail::is_one(gf_detail::powmod_poly(gen, lvl->order, m, p_))) continue;
      bool primitive = true;
      for (u64 r : lvl->order_primes) {
        if (gf_detail::is_one(gf_detail::powmod_poly(gen, lvl->order / r, m, p_))) {
          primitive = false;
          break;
        }
      }
      if (!primitive) continue;
      bool compatible = true;
      for (const Level* low : lower) {
        const u64 n = lvl->order / low->order;
        const Poly h = gf_detail::powmod_poly(gen, n, m, p_);
        Poly value = gf_detail::evaluate(low->modulus, h, m, p_);
        gf_detail::trim(value);
        if (!value.empty()) {
          compatible = false;
          break;
        }
      }
      if (!compatible) continue;
      lvl->modulus = std::move(m);
      return lvl;
    }
    throw std::logic_error("GfTower: no compatible primitive polynomial found");
  }

  u64 p_;
  mutable std::mutex mutex_;
  mutable std::map<unsigned, std::unique_ptr<Level>> levels_;
  mutable std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Embedding>> embeddings_;
};

/// An element of the algebraic closure of F_p, in canonical form.
class GfElem {
 public:
  using u64 = arith::u64;
  using Poly = gf_detail::Poly;

  GfElem() = default;

  static GfElem from_int(u64 p, arith::i64 v) {
    GfTower::of(p);
    return GfElem(p, 1, Poly{arith::mod(v, p)});
  }

  /// The distinguished generator g_d of F_{p^d}^x.
  static GfElem generator(u64 p, unsigned d) {
    const auto& tower = GfTower::of(p);
    const auto& lvl = tower.level(d);
    Poly g(d, 0);
    if (d == 1) {
      g[0] = (p - lvl.modulus[0]) % p;
    } else {
      g[1] = 1;
    }
    return canonical(p, d, std::move(g));
  }

  /// Builds an element of F_{p^d} from coordinates in the basis 1, g_d, ..., g_d^{d-1}.
  static GfElem from_coords(u64 p, unsigned d, Poly coords) {
    if (coords.size() > d) throw DomainError("GfElem: too many coordinates");
    coords.resize(d, 0);
    for (auto& c : coords) c %= p;
    GfTower::of(p).level(d);
    return canonical(p, d, std::move(coords));
  }

  u64 characteristic() const { return p_; }
  unsigned degree() const { return d_; }
  const Poly& coords() const { return c_; }
  bool valid() const { return p_ != 0; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
  }
  bool is_one() const { return d_ == 1 && c_[0] == 1; }

  /// Coordinates of this element inside F_{p^d}; d must be a multiple of degree().
  Poly coords_in(unsigned d) const {
    if (d == d_) return c_;
    if (d % d_ != 0) throw DomainError("GfElem::coords_in: degree does not contain the element");
    const auto& tower = GfTower::of(p_);
    const auto& emb = tower.embedding(d_, d);
    Poly out(d, 0);
    for (unsigned i = 0; i < d_; ++i) {
      if (c_[i] == 0) continue;
      for (unsigned j = 0; j < d; ++j)
        out[j] = (out[j] + arith::mulmod(c_[i], emb.basis_images[i][j], p_)) % p_;
    }
    return out;
  }

  friend GfElem operator+(const GfElem& a, const GfElem& b) {
    const unsigned d = common_degree(a, b);
    if (d == 1) return GfElem(a.p_, 1, Poly{(a.c_[0] + b.c_[0]) % a.p_});
    Poly x = a.coords_in(d);
    const Poly y = b.coords_in(d);
    for (unsigned i = 0; i < d; ++i) x[i] = (x[i] + y[i]) % a.p_;
    return canonical(a.p_, d, std::move(x));
  }

  GfElem operator-() const {
    Poly x = c_;
    for (auto& v : x) v = (p_ - v) % p_;
    return GfElem(p_, d_, std::move(x));
  }

  friend GfElem operator-(const GfElem& a, const GfElem& b) { return a + (-b); }

  friend GfElem operator*(const GfElem& a, const GfElem& b) {
    const unsigned d = common_degree(a, b);
    if (d == 1) return GfElem(a.p_, 1, Poly{arith::mulmod(a.c_[0], b.c_[0], a.p_)});
    const auto& m = GfTower::of(a.p_).level(d).modulus;
    return canonical(a.p_, d, gf_detail::mulmod_poly(a.coords_in(d), b.coords_in(d), m, a.p_));
  }

  GfElem pow(arith::i64 e) const {
    if (e < 0) return inverse().pow(-e);
    if (d_ == 1) return GfElem(p_, 1, Poly{arith::powmod(c_[0], static_cast<u64>(e), p_)});
    const auto& m = GfTower::of(p_).level(d_).modulus;
    return canonical(p_, d_, gf_detail::powmod_poly(c_, static_cast<u64>(e), m, p_));
  }

  GfElem inverse() const {
    if (is_zero()) throw DomainError("GfElem::inverse: zero has no inverse");
    const u64 order = GfTower::of(p_).level(d_).order;
    return pow(static_cast<arith::i64>(order - 1));
  }

  friend GfElem operator/(const GfElem& a, const GfElem& b) { return a * b.inverse(); }

  /// Least k >= 1 with x^k = 1.
  u64 mult_order() const {
    if (is_zero()) throw DomainError("mult_order: zero has no multiplicative order");
    const auto& lvl = GfTower::of(p_).level(d_);
    u64 order = lvl.order;
    for (u64 r : lvl.order_primes) {
      while (order % r == 0 && pow(static_cast<arith::i64>(order / r)).is_one()) order /= r;
    }
    return order;
  }

  /// Canonical text: an integer for prime-field elements, otherwise a
  /// polynomial in the generator g_d of the smallest containing field.
  std::string encode() const {
    if (d_ <= 1) return std::to_string(c_.empty() ? 0 : c_[0]);
    std::ostringstream os;
    bool first = true;
    for (unsigned i = d_; i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0) {
        os << c_[i];
        continue;
      }
      if (c_[i] != 1) os << c_[i] << "*";
      os << "g_" << d_;
      if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
  }

  friend bool operator==(const GfElem& a, const GfElem& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.c_ == b.c_;
  }

 private:
  GfElem(u64 p, unsigned d, Poly c) : p_(p), d_(d), c_(std::move(c)) {}

  static unsigned common_degree(const GfElem& a, const GfElem& b) {
    if (a.p_ != b.p_ || a.p_ == 0) throw DomainError("GfElem: characteristic mismatch");
    return std::lcm(a.d_, b.d_);
  }

  // Finds the smallest subfield containing x (coordinates in F_{p^d}) and
  // expresses x there.
  static GfElem canonical(u64 p, unsigned d, Poly x) {
    if (d == 1) return GfElem(p, 1, std::move(x));
    const auto& tower = GfTower::of(p);
    const auto& m = tower.level(d).modulus;
    for (unsigned d0 : arith::divisors(d)) {
      if (d0 == d) break;
      const u64 frob = arith::ipow(p, d0);
      if (gf_detail::powmod_poly(x, frob, m, p) != x) continue;
      const auto& emb = tower.embedding(d0, d);
      if (auto sol = solve(emb.basis_images, x, p)) return GfElem(p, d0, std::move(*sol));
    }
    return GfElem(p, d, std::move(x));
  }

  // Solves sum_i c_i * cols[i] = target over F_p (d rows, d0 unknowns).
  static std::optional<Poly> solve(const std::vector<Poly>& cols, const Poly& target, u64 p) {
    const std::size_t rows = target.size();
    const std::size_t n = cols.size();
    std::vector<Poly> a(rows, Poly(n + 1, 0));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < n; ++c) a[r][c] = cols[c][r];
      a[r][n] = target[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < rows; ++c) {
      std::size_t piv = row;
      while (piv < rows && a[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(a[piv], a[row]);
      const u64 inv = arith::powmod(a[row][c], p - 2, p);
      for (auto& v : a[row]) v = arith::mulmod(v, inv, p);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == row || a[r][c] == 0) continue;
        const u64 f = a[r][c];
        for (std::size_t k = 0; k <= n; ++k)
          a[r][k] = (a[r][k] + p - arith::mulmod(f, a[row][k], p)) % p;
      }
      pivot_col.push_back(c);
      ++row;
    }
    for (std::size_t r = row; r < rows; ++r)
      if (a[r][n] != 0) return std::nullopt;
    Poly sol(n, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) sol[pivot_col[i]] = a[i][n];
    return sol;
  }

  u64 p_ = 0;
  unsigned d_ = 1;
  Poly c_{0};
};

}  // namespace lfactors
