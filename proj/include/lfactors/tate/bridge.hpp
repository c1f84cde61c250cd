#pragma once

// GL1 characters of the oracle as cuspidal symbols of the engine.
//
// l-adic: one line "gl1"; the tame part eta = zeta_{q-1}^s becomes the inertial
// tag s/(q-1), the unramified part q^e zeta_N^j becomes an AdicUnit.
// mod-l: tame parts with equal reductions are the same character, so each
// value eta(g) gets its own line "eta:<value>", dual to "eta:<value^-1>".

#include <map>
#include <string>
#include <vector>

#include "lfactors/reps.hpp"
#include "lfactors/tate/oracle.hpp"

namespace lfactors::tate {

/// q^e zeta_N^j with tame part s: a characteristic-0 character given symbolically.
struct Char0Spec {
  i64 e = 0;
  i64 j = 0;
  i64 s = 0;
};

inline Gl1Character<Char0Ring> to_char0(const Char0Ring& ring, const Char0Spec& c) {
  return {ring.q_pow(c.e) * ring.zeta(c.j), c.s};
}

inline Gl1Character<ModlRing> to_modl(const ModlRing& ring, const Char0Spec& c) {
  return {ring.q_pow(c.e) * ring.zeta(c.j), c.s};
}

/// q^e zeta_N^j as (e, Teichmueller part, l-power part).
inline AdicUnit to_adic_unit(const ModlRing& ring, i64 e, i64 j) {
  const auto [n_prime, v] = arith::split_prime(ring.N, ring.ell);
  const u64 L = ring.N / n_prime;
  // alpha * N' = 1 mod L
  i64 alpha = 0;
  for (u64 a = 0; a < L; ++a)
    if ((a * n_prime) % L == 1 % L) {
      alpha = static_cast<i64>(a);
      break;
    }
  return AdicUnit(e, ring.zeta(j), QmodZ(alpha * j, static_cast<i64>(L)));
}

inline std::string eta_line(const ModlRing& ring, i64 s) {
  return "eta:" + eta_value(ring, s, 1).encode();
}

/// Model with the adic line "gl1" and one mod-l line per tame character value.
inline ModelPtr oracle_model(const ModlRing& ring) {
  const auto ctx = PrimeContext::make(ring.ell, ring.q);
  std::vector<LineSpec> specs;
  specs.push_back({"gl1", 1, 1, "gl1", std::nullopt, TagMap::negate, std::nullopt});
  std::map<std::string, std::string> lines;
  for (u64 s = 0; s + 1 < ring.q; ++s)
    lines[eta_line(ring, static_cast<i64>(s))] = eta_line(ring, -static_cast<i64>(s));
  for (const auto& [label, dual] : lines)
    specs.push_back({label, 1, 1, dual, std::nullopt, TagMap::negate, std::nullopt});
  return Model::make(ctx, specs);
}

inline CuspidalSymbol<ModScalar> engine_symbol(const ModelPtr& model, const ModlRing& ring,
                                               const Gl1Character<ModlRing>& chi) {
  return CuspidalSymbol<ModScalar>(model, eta_line(ring, chi.s), chi.u);
}

inline CuspidalSymbol<AdicUnit> engine_symbol(const ModelPtr& model, const ModlRing& ring, const Char0Spec& c) {
  return CuspidalSymbol<AdicUnit>(model, "gl1", to_adic_unit(ring, c.e, c.j),
                                  QmodZ(c.s, static_cast<i64>(ring.q - 1)));
}

}  // namespace lfactors::tate
