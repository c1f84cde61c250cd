#pragma once

// Rankin-Selberg L-factors and gamma classes of generic representations,
// compatibility with reduction mod l, and the gcd over l-adic lifts.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/euler.hpp"
#include "lfactors/reps.hpp"

namespace lfactors {

template <class S>
EulerFactor<S> L_cuspidal(const CuspidalSymbol<S>& rho1, const CuspidalSymbol<S>& rho2) {
  const auto v = cusp_twist_dual(rho1, rho2);
  if (!v) return {};
  if constexpr (!world_traits<S>::adic) {
    if (!rho1.banal()) return {};
  }
  return ef_from_pole_family(rho1.ctx(), *v, rho1.f());
}

template <class S>
EulerFactor<S> L_segments(const Segment<S>& a, const Segment<S>& b) {
  const bool swap = a.gl_size() < b.gl_size();
  const Segment<S>& d1 = swap ? b : a;
  const Segment<S>& d2 = swap ? a : b;
  if constexpr (!world_traits<S>::adic) {
    if (!d1.base().banal() || !d2.base().banal()) return {};
  }
  const auto top = d1.at(d1.length() - 1);
  EulerFactor<S> out;
  for (unsigned i = 0; i < d2.length(); ++i) out = ef_mul(out, L_cuspidal(top, d2.at(i)));
  return out;
}

template <class S>
EulerFactor<S> L_generic(const GenericRep<S>& pi, const GenericRep<S>& pi2) {
  EulerFactor<S> out;
  for (const auto& a : pi.segments())
    for (const auto& b : pi2.segments()) out = ef_mul(out, L_segments(a, b));
  return out;
}

template <class S>
GammaClass<S> gamma_generic(const GenericRep<S>& pi, const GenericRep<S>& pi2) {
  const PrimeContext* ctx = nullptr;
  if (!pi.empty()) ctx = &pi.segments().front().base().ctx();
  if (!pi2.empty()) ctx = &pi2.segments().front().base().ctx();
  const auto l = L_generic(pi, pi2);
  if (ctx == nullptr) return {};
  const auto l_dual = L_generic(rep_dual(pi), rep_dual(pi2));
  return gamma_make(ef_dual_substitute(l_dual, *ctx), l);
}

/// Every inverse root a of L(St(rho1, k1), St(rho2, k2)), k1 >= k2, satisfies
/// a^f in v^f {q(rho)^{-(k1-1)}, ..., q(rho)^{-(k1+k2-2)}} with rho2 = chi_v rho1^vee;
/// without such v the factor is 1.
template <class S>
bool pole_containment_holds(const Segment<S>& a, const Segment<S>& b, const EulerFactor<S>& l) {
  const bool swap = a.gl_size() < b.gl_size();
  const Segment<S>& d1 = swap ? b : a;
  const Segment<S>& d2 = swap ? a : b;
  const auto v = cusp_twist_dual(d1.base(), d2.base());
  if (!v) return l.is_one();
  const i64 f = static_cast<i64>(d1.base().f());
  const S qf = d1.base().invariants().q_rho;
  std::set<std::string> allowed;
  for (unsigned j = d1.length() - 1; j <= d1.length() + d2.length() - 2; ++j)
    allowed.insert(world_traits<S>::encode(v->pow(f) * qf.pow(-static_cast<i64>(j))));
  for (const auto& e : l.entries())
    if (!allowed.count(world_traits<S>::encode(e.value.pow(f)))) return false;
  return true;
}

/// L(rho, pi1) and L(rho, pi2) have no common inverse root.
template <class S>
bool distinct_line_disjoint(const GenericRep<S>& rho, const GenericRep<S>& pi1, const GenericRep<S>& pi2) {
  return ef_gcd(L_generic(rho, pi1), L_generic(rho, pi2)).is_one();
}

struct CompatReport {
  bool divides = false;
  bool gamma_equal_up_to_unit = false;
  EulerFactor<ModScalar> l_mod;
  EulerFactor<ModScalar> l_lift_reduced;
  GammaClass<ModScalar> gamma_mod;
  GammaClass<ModScalar> gamma_lift_reduced;

  bool ok() const { return divides && gamma_equal_up_to_unit; }
};

inline CompatReport check_compat1(const GenericRep<ModScalar>& pi, const GenericRep<ModScalar>& pi2) {
  CompatReport rep;
  const auto tau = standard_lift(pi);
  const auto tau2 = standard_lift(pi2);
  rep.l_mod = L_generic(pi, pi2);
  const PrimeContext* ctx = nullptr;
  if (!pi.empty()) ctx = &pi.segments().front().base().ctx();
  if (!pi2.empty()) ctx = &pi2.segments().front().base().ctx();
  if (ctx != nullptr) {
    rep.l_lift_reduced = ef_reduce(L_generic(tau, tau2), *ctx);
    rep.gamma_lift_reduced = gamma_reduce_modl(gamma_generic(tau, tau2), *ctx);
  }
  rep.gamma_mod = gamma_generic(pi, pi2);
  rep.divides = ef_divides(rep.l_mod, rep.l_lift_reduced);
  rep.gamma_equal_up_to_unit = rep.gamma_mod == rep.gamma_lift_reduced;
  return rep;
}

/// All l-adic generic reps obtained by choosing one member of each segment's
/// lift family and merging supports orbitwise.
inline std::vector<GenericRep<AdicUnit>> lift_combinations(const GenericRep<ModScalar>& pi) {
  std::vector<std::vector<Segment<AdicUnit>>> partial{{}};
  for (const auto& s : pi.segments()) {
    std::vector<std::vector<Segment<AdicUnit>>> next;
    for (const auto& member : lift_family_segment(s)) {
      for (const auto& acc : partial) {
        auto v = acc;
        v.insert(v.end(), member.segments().begin(), member.segments().end());
        next.push_back(std::move(v));
      }
    }
    partial = std::move(next);
  }
  std::vector<GenericRep<AdicUnit>> out;
  std::set<std::string> seen;
  for (const auto& segs : partial) {
    auto rep = generic_from_segments(segs);
    if (seen.insert(rep.encode()).second) out.push_back(std::move(rep));
  }
  return out;
}

struct GcdCertificateEntry {
  GenericRep<AdicUnit> tau;
  GenericRep<AdicUnit> tau2;
  EulerFactor<ModScalar> reduced;
};

struct GcdResult {
  EulerFactor<ModScalar> gcd;
  std::vector<GcdCertificateEntry> certificate;  // pairs whose reduced factors already have this gcd
  std::size_t pairs = 0;
};

inline GcdResult gcd_over_lifts(const GenericRep<ModScalar>& pi, const GenericRep<ModScalar>& pi2) {
  GcdResult res;
  if (pi.empty() || pi2.empty()) {
    res.pairs = 1;
    res.certificate.push_back({standard_lift(pi), standard_lift(pi2), {}});
    return res;
  }
  const PrimeContext& ctx = pi.segments().front().base().ctx();
  const auto lifts = lift_combinations(pi);
  const auto lifts2 = lift_combinations(pi2);
  std::vector<GcdCertificateEntry> all;
  for (const auto& t : lifts)
    for (const auto& t2 : lifts2) all.push_back({t, t2, ef_reduce(L_generic(t, t2), ctx)});
  res.pairs = all.size();
  res.gcd = all.front().reduced;
  for (const auto& e : all) res.gcd = ef_gcd(res.gcd, e.reduced);

  // greedy certificate: smallest factor first, then whatever shrinks the running gcd most
  std::size_t first = 0;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].reduced.degree() < all[first].reduced.degree()) first = i;
  EulerFactor<ModScalar> running = all[first].reduced;
  res.certificate.push_back(all[first]);
  while (!(running == res.gcd)) {
    std::size_t best = 0;
    std::size_t best_deg = running.degree();
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto d = ef_gcd(running, all[i].reduced).degree();
      if (d < best_deg) {
        best_deg = d;
        best = i;
      }
    }
    running = ef_gcd(running, all[best].reduced);
    res.certificate.push_back(all[best]);
  }

  const auto direct = L_generic(pi, pi2);
  if (!(direct == res.gcd))
    throw std::logic_error("gcd over lifts " + ef_render(res.gcd) + " differs from L = " + ef_render(direct));
  return res;
}

}  // namespace lfactors
