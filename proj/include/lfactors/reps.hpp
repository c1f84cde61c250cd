#pragma once

// Combinatorial model of generic representations.
//
// A cuspidal line is a family of cuspidal representations closed under
// unramified twist; it fixes the size n, the torsion number f, and the dual line.
// A cuspidal symbol is a point on a line: (line, twist u, inertial tag), taken
// up to u -> u * zeta for zeta an f-th root of unity.  nu twists by q^{-1}.
//
// Non-supercuspidal lines (mod-l only) are lines of St_r(mu) = the cuspidal
// subquotient of mu x nu mu x ... of length e(mu) l^r, mu a supercuspidal
// symbol.  In the l-adic world a symbol on such a line is its supercuspidal
// lift with the same (n, f).

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/euler.hpp"
#include "lfactors/scalars.hpp"

namespace lfactors {

inline constexpr u64 kInfinity = std::numeric_limits<u64>::max();

enum class TagMap { negate, identity };

struct NonSupercuspidal {
  unsigned r = 0;
  std::string base_line;
  ModScalar base_twist;
};

struct CuspidalLine {
  std::string label;
  unsigned n = 1;
  u64 f = 1;
  std::string dual_label;
  AdicUnit delta;
  TagMap tag_map = TagMap::negate;
  std::optional<NonSupercuspidal> structure;

  QmodZ dual_tag(const QmodZ& t) const { return tag_map == TagMap::negate ? -t : t; }
};

struct LineSpec {
  std::string label;
  unsigned n = 1;
  std::optional<u64> f;
  std::string dual_label;
  std::optional<AdicUnit> delta;  // defaults to 1
  TagMap tag_map = TagMap::negate;
  std::optional<NonSupercuspidal> structure;
};

/// o and e of a mod-l supercuspidal with torsion number f.
inline std::pair<u64, u64> o_and_e(const PrimeContext& ctx, u64 f) {
  const u64 o = arith::mult_order_mod(arith::powmod(ctx.q_bar, f, ctx.ell), ctx.ell);
  return {o, o > 1 ? o : ctx.ell};
}

class Model {
 public:
  static std::shared_ptr<const Model> make(const PrimeContext& ctx, const std::vector<LineSpec>& specs) {
    auto m = std::shared_ptr<Model>(new Model(ctx));
    for (const auto& s : specs) {
      if (s.label.empty()) throw DomainError("line label must be nonempty");
      if (m->lines_.count(s.label)) throw DomainError("duplicate line '" + s.label + "'");
      if (s.n == 0) throw DomainError("line '" + s.label + "': n must be positive");
      CuspidalLine line;
      line.label = s.label;
      line.n = s.n;
      line.dual_label = s.dual_label.empty() ? s.label : s.dual_label;
      line.delta = s.delta.value_or(AdicUnit::one(ctx.ell));
      if (line.delta.ell() != ctx.ell) throw DomainError("line '" + s.label + "': dual twist over the wrong field");
      line.tag_map = s.tag_map;
      line.structure = s.structure;
      line.f = s.f.value_or(0);
      m->lines_.emplace(s.label, std::move(line));
    }
    // supercuspidal lines first: non-supercuspidal ones derive f from their base
    for (auto& [label, line] : m->lines_) {
      if (line.structure) continue;
      if (line.f == 0) throw DomainError("line '" + label + "': f is required");
      if (line.n % line.f != 0)
        throw DomainError("line '" + label + "': f=" + std::to_string(line.f) + " does not divide n=" +
                          std::to_string(line.n));
    }
    for (auto& [label, line] : m->lines_) {
      if (!line.structure) continue;
      const auto& st = *line.structure;
      auto it = m->lines_.find(st.base_line);
      if (it == m->lines_.end()) throw DomainError("line '" + label + "': unknown base line '" + st.base_line + "'");
      const CuspidalLine& base = it->second;
      if (base.structure) throw DomainError("line '" + label + "': base line '" + st.base_line + "' is not supercuspidal");
      if (!st.base_twist.valid() || st.base_twist.characteristic() != ctx.ell || st.base_twist.is_zero())
        throw DomainError("line '" + label + "': base twist must be a nonzero scalar mod " + std::to_string(ctx.ell));
      const u64 e_base = o_and_e(ctx, base.f).second;
      const u64 mult = e_base * arith::ipow(ctx.ell, st.r);
      if (line.n != base.n * mult)
        throw DomainError("line '" + label + "': n=" + std::to_string(line.n) + " but St_r of base has size " +
                          std::to_string(base.n * mult));
      const u64 f = base.f * mult;
      if (line.f != 0 && line.f != f)
        throw DomainError("line '" + label + "': f=" + std::to_string(line.f) + " but the structure forces f=" +
                          std::to_string(f));
      line.f = f;
    }
    for (auto& [label, line] : m->lines_) {
      auto it = m->lines_.find(line.dual_label);
      if (it == m->lines_.end()) throw DomainError("line '" + label + "': unknown dual line '" + line.dual_label + "'");
      const CuspidalLine& d = it->second;
      if (d.dual_label != label) throw DomainError("line '" + label + "': dual of dual line '" + d.label + "' is '" + d.dual_label + "'");
      if (d.n != line.n || d.f != line.f) throw DomainError("line '" + label + "': dual line '" + d.label + "' has different n or f");
      if (d.tag_map != line.tag_map) throw DomainError("line '" + label + "': dual line has a different tag map");
      if (d.structure.has_value() != line.structure.has_value())
        throw DomainError("line '" + label + "': dual line must share the supercuspidal/non-supercuspidal structure");
      if (!world_traits<AdicUnit>::is_f_torsion(d.delta / line.delta, line.f))
        throw DomainError("line '" + label + "': dual twists do not compose to the identity");
    }
    return m;
  }

  const PrimeContext& ctx() const { return ctx_; }
  const std::map<std::string, CuspidalLine>& lines() const { return lines_; }
  const CuspidalLine& line(const std::string& label) const {
    auto it = lines_.find(label);
    if (it == lines_.end()) throw DomainError("unknown line '" + label + "'");
    return it->second;
  }

 private:
  explicit Model(const PrimeContext& ctx) : ctx_(ctx) {}
  PrimeContext ctx_;
  std::map<std::string, CuspidalLine> lines_;
};

using ModelPtr = std::shared_ptr<const Model>;

template <class S>
struct CuspidalInvariants {
  S q_rho;
  u64 o = kInfinity;
  u64 e = kInfinity;
  u64 f = 1;
  bool banal = true;
};

template <class S>
class CuspidalSymbol {
  using W = world_traits<S>;

 public:
  CuspidalSymbol(ModelPtr model, const std::string& line, const S& twist, QmodZ tag = {})
      : model_(std::move(model)), line_(&model_->line(line)), tag_(tag) {
    if (W::is_zero(twist)) throw DomainError("cuspidal twist must be nonzero");
    if (!W::adic && !tag_.is_zero()) throw DomainError("inertial tags exist only in the l-adic world");
    u_ = canonical_in_torsion_coset(model_->ctx(), twist, line_->f);
    key_ = line_->label + "(" + W::encode(u_) + (tag_.is_zero() ? "" : "; tag " + tag_.encode()) + ")";
  }

  const ModelPtr& model() const { return model_; }
  const PrimeContext& ctx() const { return model_->ctx(); }
  const CuspidalLine& line() const { return *line_; }
  const S& twist() const { return u_; }
  const QmodZ& tag() const { return tag_; }
  unsigned n() const { return line_->n; }
  u64 f() const { return line_->f; }
  const std::string& encode() const { return key_; }

  bool is_supercuspidal() const { return W::adic || !line_->structure.has_value(); }

  CuspidalInvariants<S> invariants() const {
    CuspidalInvariants<S> inv;
    inv.f = f();
    inv.q_rho = W::q_pow(ctx(), static_cast<i64>(inv.f));
    if constexpr (!W::adic) {
      const auto [o, e] = o_and_e(ctx(), inv.f);
      inv.o = o;
      inv.e = e;
      inv.banal = o > 1 && is_supercuspidal();
    }
    return inv;
  }
  bool banal() const { return invariants().banal; }

  CuspidalSymbol twisted(const S& v) const { return CuspidalSymbol(model_, line_->label, u_ * v, tag_); }
  /// nu^a rho: twist by q^{-a}.
  CuspidalSymbol nu(i64 a) const { return twisted(W::q_pow(ctx(), -a)); }

  /// Contragredient: dual line, twist delta / u, mapped tag.
  CuspidalSymbol dual() const {
    const S delta = W::from_adic(line_->delta, ctx());
    return CuspidalSymbol(model_, line_->dual_label, delta * u_.inverse(), line_->dual_tag(tag_));
  }

  /// For a symbol on a non-supercuspidal line, chi_u St_r(mu) -> chi_u mu.
  CuspidalSymbol<ModScalar> nonsc_base() const {
    if (is_supercuspidal()) throw DomainError("symbol is supercuspidal");
    const auto& st = *line_->structure;
    return CuspidalSymbol<ModScalar>(model_, st.base_line, st.base_twist * u_);
  }

  friend bool operator==(const CuspidalSymbol& a, const CuspidalSymbol& b) { return a.key_ == b.key_; }
  friend bool operator<(const CuspidalSymbol& a, const CuspidalSymbol& b) { return a.key_ < b.key_; }

 private:
  ModelPtr model_;
  const CuspidalLine* line_;
  S u_;
  QmodZ tag_;
  std::string key_;
};

/// A scalar v with rho2 = chi_v rho1^vee, if any.  Canonical in v * mu_f.
template <class S>
std::optional<S> cusp_twist_dual(const CuspidalSymbol<S>& rho1, const CuspidalSymbol<S>& rho2) {
  if (rho1.n() != rho2.n()) return std::nullopt;
  const CuspidalSymbol<S> d = rho1.dual();
  if (d.line().label != rho2.line().label || !(d.tag() == rho2.tag())) return std::nullopt;
  return canonical_in_torsion_coset(rho1.ctx(), rho2.twist() * d.twist().inverse(), rho1.f());
}

/// The segment (rho, nu rho, ..., nu^{k-1} rho).
template <class S>
class Segment {
 public:
  Segment(CuspidalSymbol<S> base, unsigned k) : base_(std::move(base)), k_(k) {
    if (k_ == 0) throw DomainError("segment must be nonempty");
    const auto e = base_.invariants().e;
    if (e != kInfinity && k_ >= e)
      throw DomainError("segment not generic: k=" + std::to_string(k_) + ", e(ρ)=" + std::to_string(e));
  }

  const CuspidalSymbol<S>& base() const { return base_; }
  unsigned length() const { return k_; }
  CuspidalSymbol<S> at(unsigned i) const { return base_.nu(i); }
  unsigned gl_size() const { return k_ * base_.n(); }
  bool banal() const {
    const auto inv = base_.invariants();
    return inv.banal && k_ < inv.o;
  }
  std::string encode() const { return "[0," + std::to_string(k_ - 1) + "]_" + base_.encode(); }

  friend bool operator==(const Segment& a, const Segment& b) { return a.k_ == b.k_ && a.base_ == b.base_; }
  friend bool operator<(const Segment& a, const Segment& b) {
    if (a.base_.encode() != b.base_.encode()) return a.base_.encode() < b.base_.encode();
    return a.k_ < b.k_;
  }

 private:
  CuspidalSymbol<S> base_;
  unsigned k_;
};

/// [a, b]_rho, canonically (nu^a rho, [0, b - a]).
template <class S>
Segment<S> make_segment(const CuspidalSymbol<S>& rho, i64 a, i64 b) {
  if (a > b) throw DomainError("segment needs a <= b");
  return Segment<S>(rho.nu(a), static_cast<unsigned>(b - a + 1));
}

/// Dual of [0, k-1]_rho is [1-k, 0]_{rho^vee}.
template <class S>
Segment<S> segment_dual(const Segment<S>& s) {
  return Segment<S>(s.base().dual().nu(1 - static_cast<i64>(s.length())), s.length());
}

template <class S>
Segment<S> segment_twist(const Segment<S>& s, const S& u) {
  return Segment<S>(s.base().twisted(u), s.length());
}

/// Literal precedence test: does the concatenation of the two sequences contain
/// a subsequence rho', nu rho', nu^2 rho', ... longer than both?
template <class S>
bool precedes_bruteforce(const Segment<S>& d1, const Segment<S>& d2) {
  std::vector<CuspidalSymbol<S>> seq;
  for (unsigned i = 0; i < d1.length(); ++i) seq.push_back(d1.at(i));
  for (unsigned i = 0; i < d2.length(); ++i) seq.push_back(d2.at(i));
  std::vector<CuspidalSymbol<S>> next;
  for (const auto& s : seq) next.push_back(s.nu(1));
  std::vector<unsigned> chain(seq.size(), 1);
  unsigned best = 0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i)
      if (next[i] == seq[j]) chain[j] = std::max(chain[j], chain[i] + 1);
    best = std::max(best, chain[j]);
  }
  return best > std::max(d1.length(), d2.length());
}

template <class S>
bool linked_bruteforce(const Segment<S>& d1, const Segment<S>& d2) {
  if (d1.base().line().label != d2.base().line().label) return false;
  return precedes_bruteforce(d1, d2) || precedes_bruteforce(d2, d1);
}

/// r with rho2 = nu^r rho1 on an l-adic line, if any.
inline std::optional<i64> relative_position(const CuspidalSymbol<AdicUnit>& rho1, const CuspidalSymbol<AdicUnit>& rho2) {
  if (rho1.line().label != rho2.line().label || !(rho1.tag() == rho2.tag())) return std::nullopt;
  const AdicUnit w = rho2.twist() / rho1.twist();
  const i64 r = -w.e_q();
  const AdicUnit rest = w * world_traits<AdicUnit>::q_pow(rho1.ctx(), r);
  if (!world_traits<AdicUnit>::is_f_torsion(rest, rho1.f())) return std::nullopt;
  return r;
}

/// Interval criterion on an l-adic line: linked iff the union is a segment
/// and neither contains the other.
inline bool linked_fast(const Segment<AdicUnit>& d1, const Segment<AdicUnit>& d2) {
  const auto r = relative_position(d1.base(), d2.base());
  if (!r) return false;
  const i64 a1 = 0, b1 = d1.length() - 1;
  const i64 a2 = *r, b2 = *r + d2.length() - 1;
  const bool union_is_segment = a2 <= b1 + 1 && a1 <= b2 + 1;
  const bool nested = (a1 <= a2 && b2 <= b1) || (a2 <= a1 && b1 <= b2);
  return union_is_segment && !nested;
}

template <class S>
bool linked(const Segment<S>& d1, const Segment<S>& d2) {
  if constexpr (world_traits<S>::adic) {
    return linked_fast(d1, d2);
  } else {
    return linked_bruteforce(d1, d2);
  }
}

/// Multiset of pairwise unlinked generic segments, sorted.
template <class S>
class GenericRep {
 public:
  GenericRep() = default;
  explicit GenericRep(std::vector<Segment<S>> segs) : segs_(std::move(segs)) {
    for (std::size_t i = 0; i < segs_.size(); ++i)
      for (std::size_t j = i + 1; j < segs_.size(); ++j)
        if (linked(segs_[i], segs_[j]))
          throw DomainError("segments " + std::to_string(i) + " and " + std::to_string(j) + " are linked: " +
                            segs_[i].encode() + " and " + segs_[j].encode());
    std::sort(segs_.begin(), segs_.end());
  }

  const std::vector<Segment<S>>& segments() const { return segs_; }
  bool empty() const { return segs_.empty(); }
  unsigned gl_size() const {
    unsigned n = 0;
    for (const auto& s : segs_) n += s.gl_size();
    return n;
  }
  std::string encode() const {
    if (segs_.empty()) return "()";
    std::string out;
    for (const auto& s : segs_) out += (out.empty() ? "" : " x ") + s.encode();
    return out;
  }

  friend bool operator==(const GenericRep& a, const GenericRep& b) { return a.segs_ == b.segs_; }

 private:
  std::vector<Segment<S>> segs_;
};

template <class S>
GenericRep<S> make_generic(std::vector<Segment<S>> segs) {
  return GenericRep<S>(std::move(segs));
}

/// Concatenation; throws if the union is not generic.
template <class S>
GenericRep<S> rep_union(const GenericRep<S>& a, const GenericRep<S>& b) {
  auto segs = a.segments();
  segs.insert(segs.end(), b.segments().begin(), b.segments().end());
  return GenericRep<S>(std::move(segs));
}

template <class S>
GenericRep<S> rep_dual(const GenericRep<S>& pi) {
  std::vector<Segment<S>> out;
  for (const auto& s : pi.segments()) out.push_back(segment_dual(s));
  return GenericRep<S>(std::move(out));
}

template <class S>
GenericRep<S> rep_twist(const GenericRep<S>& pi, const S& u) {
  std::vector<Segment<S>> out;
  for (const auto& s : pi.segments()) out.push_back(segment_twist(s, u));
  return GenericRep<S>(std::move(out));
}

/// (banal part, totally non-banal part).
inline std::pair<GenericRep<ModScalar>, GenericRep<ModScalar>> banal_split(const GenericRep<ModScalar>& pi) {
  std::vector<Segment<ModScalar>> b, tnb;
  for (const auto& s : pi.segments()) (s.base().banal() ? b : tnb).push_back(s);
  return {GenericRep<ModScalar>(std::move(b)), GenericRep<ModScalar>(std::move(tnb))};
}

/// Teichmueller lift of the twist, tag 0, same line.
inline CuspidalSymbol<AdicUnit> standard_lift(const CuspidalSymbol<ModScalar>& rho) {
  return CuspidalSymbol<AdicUnit>(rho.model(), rho.line().label, AdicUnit::teichmuller(rho.twist()));
}

inline Segment<AdicUnit> standard_lift(const Segment<ModScalar>& s) {
  return Segment<AdicUnit>(standard_lift(s.base()), s.length());
}

inline GenericRep<AdicUnit> standard_lift(const GenericRep<ModScalar>& pi) {
  std::vector<Segment<AdicUnit>> out;
  for (const auto& s : pi.segments()) out.push_back(standard_lift(s));
  return GenericRep<AdicUnit>(std::move(out));
}

/// The unlinked multisegment on the nu-orbit of `base` with the given support:
/// maximal runs of consecutive positions are removed, longest first.
inline std::vector<Segment<AdicUnit>> generic_from_support(const CuspidalSymbol<AdicUnit>& base,
                                                           std::vector<i64> positions) {
  std::map<i64, unsigned> count;
  for (i64 p : positions) ++count[p];
  std::vector<Segment<AdicUnit>> out;
  while (!count.empty()) {
    i64 best_start = 0;
    unsigned best_len = 0;
    for (auto it = count.begin(); it != count.end();) {
      const i64 start = it->first;
      unsigned len = 0;
      while (it != count.end() && it->first == start + static_cast<i64>(len)) {
        ++len;
        ++it;
      }
      if (len > best_len) {
        best_len = len;
        best_start = start;
      }
    }
    for (unsigned i = 0; i < best_len; ++i) {
      auto it = count.find(best_start + static_cast<i64>(i));
      if (--it->second == 0) count.erase(it);
    }
    out.emplace_back(base.nu(best_start), best_len);
  }
  return out;
}

/// Groups segments by nu-orbit and replaces each orbit by generic_from_support of its support.
inline GenericRep<AdicUnit> generic_from_segments(const std::vector<Segment<AdicUnit>>& segs) {
  std::vector<std::pair<CuspidalSymbol<AdicUnit>, std::vector<i64>>> orbits;
  for (const auto& s : segs) {
    bool placed = false;
    for (auto& [base, pos] : orbits) {
      if (auto r = relative_position(base, s.base())) {
        for (unsigned i = 0; i < s.length(); ++i) pos.push_back(*r + i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      std::vector<i64> pos;
      for (unsigned i = 0; i < s.length(); ++i) pos.push_back(i);
      orbits.emplace_back(s.base(), std::move(pos));
    }
  }
  std::vector<Segment<AdicUnit>> out;
  for (const auto& [base, pos] : orbits) {
    auto part = generic_from_support(base, pos);
    out.insert(out.end(), part.begin(), part.end());
  }
  return GenericRep<AdicUnit>(std::move(out));
}

/// The l-adic lifts used for the gcd: one for banal segments, two otherwise.
inline std::vector<GenericRep<AdicUnit>> lift_family_segment(const Segment<ModScalar>& s) {
  const auto& rho = s.base();
  const unsigned k = s.length();
  if (rho.banal()) return {GenericRep<AdicUnit>({standard_lift(s)})};
  const PrimeContext& ctx = rho.ctx();
  if (rho.is_supercuspidal()) {
    const CuspidalSymbol<AdicUnit> tagged(rho.model(), rho.line().label, AdicUnit::teichmuller(rho.twist()),
                                          QmodZ(1, static_cast<i64>(ctx.ell)));
    return {GenericRep<AdicUnit>({standard_lift(s)}), GenericRep<AdicUnit>({Segment<AdicUnit>(tagged, k)})};
  }
  const auto mu = rho.nonsc_base();
  const auto mu_lift = standard_lift(mu);
  const u64 len = mu.invariants().e * arith::ipow(ctx.ell, rho.line().structure->r);
  std::vector<i64> support;
  for (unsigned i = 0; i < k; ++i)
    for (u64 j = 0; j < len; ++j) support.push_back(static_cast<i64>(i + j));
  return {GenericRep<AdicUnit>({standard_lift(s)}), GenericRep<AdicUnit>(generic_from_support(mu_lift, support))};
}

}  // namespace lfactors
