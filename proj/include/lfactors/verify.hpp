#pragma once

// Seeded property suites over random and enumerated instances.  Each suite
// returns a SuiteResult; an Audit collects the pole-containment and
// distinct-line checks on every factor the suites evaluate.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lfactors/factors.hpp"
#include "lfactors/tate/bridge.hpp"
#include "lfactors/tate/oracle.hpp"

namespace lfactors::verify {

struct SuiteResult {
  SuiteResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty() && cases > 0; }
  void fail(std::string msg) {
    if (failures.size() < 20) failures.push_back(std::move(msg));
    else if (failures.size() == 20) failures.push_back("...");
  }
};

struct Audit {
  std::size_t factors = 0;
  std::size_t disjointness = 0;
  std::vector<std::string> failures;

  template <class S>
  void segments(const Segment<S>& a, const Segment<S>& b) {
    ++factors;
    if (!pole_containment_holds(a, b, L_segments(a, b)))
      record("pole containment fails for " + a.encode() + " , " + b.encode());
  }

  template <class S>
  void pair(const GenericRep<S>& pi, const GenericRep<S>& pi2) {
    for (const auto& a : pi.segments())
      for (const auto& b : pi2.segments()) segments(a, b);
    disjoint(pi, pi2);
    disjoint(pi2, pi);
  }

  // L(D, group_A) and L(D, group_B) share no root for segments D of pi and
  // parts of pi2 on distinct lines A != B.
  template <class S>
  void disjoint(const GenericRep<S>& pi, const GenericRep<S>& pi2) {
    std::map<std::string, std::vector<Segment<S>>> by_line;
    for (const auto& s : pi2.segments()) by_line[s.base().line().label].push_back(s);
    if (by_line.size() < 2) return;
    for (const auto& d : pi.segments()) {
      const GenericRep<S> single({d});
      std::vector<EulerFactor<S>> parts;
      for (const auto& [label, segs] : by_line) parts.push_back(L_generic(single, GenericRep<S>(segs)));
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          ++disjointness;
          if (!ef_gcd(parts[i], parts[j]).is_one()) record("lines share a pole against " + d.encode());
        }
    }
  }

  bool ok() const { return failures.empty(); }

 private:
  void record(std::string m) {
    if (failures.size() < 20) failures.push_back(std::move(m));
  }
};

inline const std::vector<std::pair<u64, u64>>& contexts() {
  static const std::vector<std::pair<u64, u64>> v{{3, 2}, {5, 2}, {7, 2}, {2, 3}, {3, 4}, {3, 7}, {5, 11}};
  return v;
}

/// Lines used by the suites: gl1 (n=1, f=1), gl2u (n=2, f=2), gl2r (n=2, f=1),
/// the dual pair gl2a/gl2b (n=2, f=2, dual twist q), and st0 = St_0 of the
/// trivial character of gl1.
inline ModelPtr standard_model(const PrimeContext& ctx) {
  const AdicUnit one = AdicUnit::one(ctx.ell);
  const AdicUnit q = world_traits<AdicUnit>::q_pow(ctx, 1);
  const u64 e1 = o_and_e(ctx, 1).second;
  std::vector<LineSpec> specs;
  specs.push_back({"gl1", 1, 1, "gl1", one, TagMap::negate, std::nullopt});
  specs.push_back({"gl2u", 2, 2, "gl2u", one, TagMap::negate, std::nullopt});
  specs.push_back({"gl2r", 2, 1, "gl2r", one, TagMap::identity, std::nullopt});
  specs.push_back({"gl2a", 2, 2, "gl2b", q, TagMap::negate, std::nullopt});
  specs.push_back({"gl2b", 2, 2, "gl2a", q, TagMap::negate, std::nullopt});
  specs.push_back({"st0", static_cast<unsigned>(e1), std::nullopt, "st0",
                   world_traits<AdicUnit>::q_pow(ctx, static_cast<i64>(e1) - 1), TagMap::negate,
                   NonSupercuspidal{0, "gl1", ModScalar::from_int(ctx.ell, 1)}});
  return Model::make(ctx, specs);
}

class Generator {
 public:
  Generator(ModelPtr model, u64 seed) : model_(std::move(model)), rng_(seed) {
    for (const auto& [label, line] : model_->lines()) labels_.push_back(label);
  }

  const ModelPtr& model() const { return model_; }
  const PrimeContext& ctx() const { return model_->ctx(); }
  std::mt19937_64& rng() { return rng_; }

  u64 below(u64 n) { return std::uniform_int_distribution<u64>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  ModScalar mod_scalar() {
    const u64 ell = ctx().ell;
    if (coin(0.8)) return ModScalar::from_int(ell, static_cast<i64>(1 + below(ell - 1)));
    return ModScalar::generator(ell, 2).pow(static_cast<i64>(below(ell * ell - 1)));
  }

  AdicUnit adic_unit() {
    const i64 e = static_cast<i64>(below(5)) - 2;
    const i64 ell = static_cast<i64>(ctx().ell);
    const QmodZ s = coin(0.6) ? QmodZ() : QmodZ(static_cast<i64>(below(static_cast<u64>(ell))), ell);
    return AdicUnit(e, mod_scalar(), s);
  }

  template <class S>
  S scalar() {
    if constexpr (world_traits<S>::adic) {
      return adic_unit();
    } else {
      return mod_scalar();
    }
  }

  const std::string& line() { return labels_[below(labels_.size())]; }

  template <class S>
  CuspidalSymbol<S> symbol() {
    QmodZ tag;
    if constexpr (world_traits<S>::adic)
      if (coin(0.3)) tag = QmodZ(1, static_cast<i64>(ctx().ell));
    return CuspidalSymbol<S>(model_, line(), scalar<S>(), tag);
  }

  /// Symbol on a line chosen among a small set so that dual coincidences are frequent.
  template <class S>
  CuspidalSymbol<S> symbol_near(const CuspidalSymbol<S>& other) {
    if (!coin(0.6)) return symbol<S>();
    const auto d = other.dual();
    S u = d.twist() * world_traits<S>::q_pow(ctx(), static_cast<i64>(below(5)) - 2);
    if (coin(0.5)) u = u * scalar<S>();
    return CuspidalSymbol<S>(model_, d.line().label, u, d.tag());
  }

  template <class S>
  Segment<S> segment(unsigned max_k = 3) {
    auto rho = symbol<S>();
    const u64 e = rho.invariants().e;
    const u64 cap = std::min<u64>(max_k, e == kInfinity ? max_k : e - 1);
    return Segment<S>(rho, static_cast<unsigned>(1 + below(cap)));
  }

  template <class S>
  GenericRep<S> rep(unsigned max_segments = 3, unsigned max_k = 3) {
    const unsigned n = static_cast<unsigned>(below(max_segments + 1));
    std::vector<Segment<S>> segs;
    for (unsigned i = 0; i < n; ++i) {
      auto s = segment<S>(max_k);
      bool ok = true;
      for (const auto& t : segs)
        if (linked(s, t)) ok = false;
      if (ok) segs.push_back(s);
    }
    return GenericRep<S>(std::move(segs));
  }

  /// A rep whose segments sit on lines dual to those of `other` more often than chance.
  template <class S>
  GenericRep<S> rep_near(const GenericRep<S>& other, unsigned max_segments = 3, unsigned max_k = 3) {
    const unsigned n = static_cast<unsigned>(below(max_segments + 1));
    std::vector<Segment<S>> segs;
    for (unsigned i = 0; i < n; ++i) {
      CuspidalSymbol<S> rho = other.empty() || coin(0.3)
                                  ? symbol<S>()
                                  : symbol_near(other.segments()[below(other.segments().size())].base());
      const u64 e = rho.invariants().e;
      const u64 cap = std::min<u64>(max_k, e == kInfinity ? max_k : e - 1);
      Segment<S> s(rho, static_cast<unsigned>(1 + below(cap)));
      bool ok = true;
      for (const auto& t : segs)
        if (linked(s, t)) ok = false;
      if (ok) segs.push_back(s);
    }
    return GenericRep<S>(std::move(segs));
  }

 private:
  ModelPtr model_;
  std::mt19937_64 rng_;
  std::vector<std::string> labels_;
};

inline u64 mix(u64 seed, u64 a, u64 b = 0) { return seed * 1000003ULL + a * 7919ULL + b; }

// Direct restatement of the cuspidal formula from raw (uncanonicalized) data.
template <class S>
EulerFactor<S> expected_cuspidal(const CuspidalSymbol<S>& r1, const CuspidalSymbol<S>& r2) {
  const auto& line = r1.line();
  if (r2.line().label != line.dual_label) return {};
  if (!(r2.tag() == line.dual_tag(r1.tag()))) return {};
  if constexpr (!world_traits<S>::adic) {
    if (!r1.is_supercuspidal()) return {};
    if (o_and_e(r1.ctx(), line.f).first == 1) return {};
  }
  const S delta = world_traits<S>::from_adic(line.delta, r1.ctx());
  const S v = r1.twist() * r2.twist() * delta.inverse();
  std::vector<S> roots;
  for (const auto& z : world_traits<S>::pole_family(r1.ctx(), line.f)) roots.push_back(v * z);
  return EulerFactor<S>(roots);
}

/// Cuspidal classification: L_cuspidal against the direct formula, both worlds.
inline SuiteResult suite_cuspidal(u64 seed, Audit* audit = nullptr, std::size_t pairs = 60) {
  SuiteResult res{"cuspidal"};
  for (std::size_t c = 0; c < contexts().size(); ++c) {
    const auto ctx = PrimeContext::make(contexts()[c].first, contexts()[c].second);
    Generator gen(standard_model(ctx), mix(seed, c));
    auto run = [&](auto tag) {
      using S = decltype(tag);
      std::size_t nontrivial = 0;
      for (std::size_t i = 0; i < pairs; ++i) {
        const auto r1 = gen.symbol<S>();
        const auto r2 = gen.symbol_near(r1);
        const auto l = L_cuspidal(r1, r2);
        ++res.cases;
        if (!l.is_one()) ++nontrivial;
        if (!(l == expected_cuspidal(r1, r2)))
          res.fail("(" + std::to_string(ctx.ell) + "," + std::to_string(ctx.q) + ") " + r1.encode() + " x " +
                   r2.encode() + ": " + ef_render(l));
        if (!(l == L_cuspidal(r2, r1))) res.fail("asymmetric: " + r1.encode() + " x " + r2.encode());
        if (audit) audit->segments(Segment<S>(r1, 1), Segment<S>(r2, 1));
      }
      res.notes.push_back(std::string(world_traits<S>::name) + " (" + std::to_string(ctx.ell) + "," +
                          std::to_string(ctx.q) + "): " + std::to_string(nontrivial) + "/" +
                          std::to_string(pairs) + " nontrivial");
    };
    run(ModScalar{});
    run(AdicUnit{});
  }
  return res;
}

/// q = 1 mod l: every generic L is 1, and the GL1 oracle finds the unit ideal.
inline SuiteResult suite_degeneration(u64 seed, Audit* audit = nullptr, std::size_t pairs = 100) {
  SuiteResult res{"degeneration"};
  for (std::size_t c = 0; c < contexts().size(); ++c) {
    const auto [ell, q] = contexts()[c];
    if ((q - 1) % ell != 0) continue;
    const auto ctx = PrimeContext::make(ell, q);
    Generator gen(standard_model(ctx), mix(seed, c));
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto pi = gen.rep<ModScalar>();
      const auto pi2 = gen.rep_near(pi);
      ++res.cases;
      if (!L_generic(pi, pi2).is_one()) res.fail("L != 1 for " + pi.encode() + " , " + pi2.encode());
      if (audit) audit->pair(pi, pi2);
    }
    if (q <= 5) {
      const auto ring = tate::ModlRing::make(ell, q);
      const auto kf = tate::ResidueField::make(q);
      const tate::Gl1Character<tate::ModlRing> triv{ring.one(), 0};
      const auto l = tate::tate_L_via_ideal(ring, kf, triv, triv);
      ++res.cases;
      if (!l.ok || l.root) res.fail("oracle does not find the unit ideal for q=" + std::to_string(q));
      for (const auto& s : l.series)
        if (s.e != 0) res.fail("oracle series with a pole for q=" + std::to_string(q));
    }
  }
  return res;
}

template <class S>
std::vector<Segment<S>> enumerate_segments(const ModelPtr& model, const std::vector<S>& twists, unsigned max_k,
                                           u64 max_f, bool supercuspidal_only) {
  std::vector<Segment<S>> out;
  for (const auto& [label, line] : model->lines()) {
    if (line.f > max_f) continue;
    if (supercuspidal_only && line.structure) continue;
    for (const auto& u : twists) {
      const CuspidalSymbol<S> rho(model, label, u);
      const u64 e = rho.invariants().e;
      for (unsigned k = 1; k <= max_k && (e == kInfinity || k < e); ++k) out.emplace_back(rho, k);
    }
  }
  return out;
}

inline std::vector<ModScalar> small_twists(const PrimeContext& ctx) {
  std::vector<ModScalar> out{ModScalar::from_int(ctx.ell, 1)};
  if (ctx.ell > 2) out.push_back(ModScalar::from_int(ctx.ell, 2));
  return out;
}

// Closed form for an l-adic segment pair: prod_j 1/(1 - (v q^{-(k1-1+j)} X)^f).
inline EulerFactor<AdicUnit> adic_segment_formula(const Segment<AdicUnit>& a, const Segment<AdicUnit>& b) {
  const bool swap = a.gl_size() < b.gl_size();
  const auto& d1 = swap ? b : a;
  const auto& d2 = swap ? a : b;
  const auto v = cusp_twist_dual(d1.base(), d2.base());
  if (!v) return {};
  const auto& ctx = d1.base().ctx();
  EulerFactor<AdicUnit> out;
  for (unsigned j = 0; j < d2.length(); ++j) {
    const auto c = *v * world_traits<AdicUnit>::q_pow(ctx, -static_cast<i64>(d1.length() - 1 + j));
    out = ef_mul(out, ef_from_pole_family(ctx, c, d1.base().f()));
  }
  return out;
}

/// Segment formula: banal mod-l factors are reductions of the l-adic closed form.
inline SuiteResult suite_segments(u64 /*seed*/, Audit* audit = nullptr, unsigned max_k = 4) {
  SuiteResult res{"segments"};
  for (const auto& [ell, q] : contexts()) {
    const auto ctx = PrimeContext::make(ell, q);
    const auto model = standard_model(ctx);
    const auto segs = enumerate_segments(model, small_twists(ctx), max_k, 2, true);
    std::size_t banal_pairs = 0;
    for (const auto& a : segs)
      for (const auto& b : segs) {
        ++res.cases;
        const auto l = L_segments(a, b);
        if (audit) audit->segments(a, b);
        if (a.base().banal() && b.base().banal()) {
          ++banal_pairs;
          const auto lifted = ef_reduce(adic_segment_formula(standard_lift(a), standard_lift(b)), ctx);
          if (!(l == lifted))
            res.fail("(" + std::to_string(ell) + "," + std::to_string(q) + ") " + a.encode() + " , " + b.encode() +
                     ": " + ef_render(l) + " vs " + ef_render(lifted));
          if (audit) audit->segments(standard_lift(a), standard_lift(b));
        } else if (!l.is_one()) {
          res.fail("non-banal pair with L != 1: " + a.encode() + " , " + b.encode());
        }
      }
    res.notes.push_back("(" + std::to_string(ell) + "," + std::to_string(q) + "): " + std::to_string(segs.size()) +
                        " segments, " + std::to_string(banal_pairs) + " banal pairs");
  }
  return res;
}

/// Cuspidal-pair product for a segment pair.
template <class S>
GammaClass<S> gamma_steinberg_product(const Segment<S>& a, const Segment<S>& b) {
  GammaClass<S> g;
  for (unsigned i = 0; i < a.length(); ++i)
    for (unsigned j = 0; j < b.length(); ++j)
      g = gamma_mul(g, gamma_generic(GenericRep<S>({Segment<S>(a.at(i), 1)}), GenericRep<S>({Segment<S>(b.at(j), 1)})));
  return g;
}

/// Gamma inductivity on random triples, and the segment/cuspidal product formula.
inline SuiteResult suite_gamma_inductivity(u64 seed, Audit* audit = nullptr, std::size_t triples = 200) {
  SuiteResult res{"gamma-inductivity"};
  for (std::size_t c = 0; c < contexts().size(); ++c) {
    const auto ctx = PrimeContext::make(contexts()[c].first, contexts()[c].second);
    Generator gen(standard_model(ctx), mix(seed, c));
    auto run = [&](auto tag, std::size_t count) {
      using S = decltype(tag);
      for (std::size_t i = 0; i < count; ++i) {
        const auto p1 = gen.rep<S>(2);
        const auto p2 = gen.rep_near(p1, 2);
        GenericRep<S> p3;
        for (int attempt = 0; attempt < 20; ++attempt) {
          try {
            p3 = gen.rep_near(p1, 2);
            (void)rep_union(p2, p3);
            break;
          } catch (const DomainError&) {
            p3 = GenericRep<S>();
          }
        }
        const auto p23 = rep_union(p2, p3);
        ++res.cases;
        const auto whole = gamma_generic(p1, p23);
        const auto parts = gamma_mul(gamma_generic(p1, p2), gamma_generic(p1, p3));
        if (!(whole == parts)) res.fail("inductivity: " + p1.encode() + " ; " + p2.encode() + " ; " + p3.encode());
        if (!(gamma_generic(p1, p23) == gamma_generic(p23, p1))) res.fail("gamma asymmetric: " + p1.encode());
        if (audit) {
          audit->pair(p1, p23);
          audit->pair(p1, p2);
          audit->pair(p1, p3);
        }
        for (const auto& a : p1.segments())
          for (const auto& b : p2.segments()) {
            ++res.cases;
            if (!(gamma_generic(GenericRep<S>({a}), GenericRep<S>({b})) == gamma_steinberg_product(a, b)))
              res.fail("segment gamma vs cuspidal product: " + a.encode() + " , " + b.encode());
          }
      }
    };
    run(ModScalar{}, triples);
    run(AdicUnit{}, triples / 4);
  }
  return res;
}

/// L(pi, pi') = L(pi_b, pi'_b), recomputed from the banal parts.
inline SuiteResult suite_banal_part(u64 seed, Audit* audit = nullptr, std::size_t pairs = 100) {
  SuiteResult res{"banal-part"};
  std::size_t mixed = 0;
  for (std::size_t c = 0; c < contexts().size(); ++c) {
    const auto ctx = PrimeContext::make(contexts()[c].first, contexts()[c].second);
    Generator gen(standard_model(ctx), mix(seed, c));
    const std::size_t count = pairs / contexts().size() + 1;
    for (std::size_t i = 0; i < count; ++i) {
      const auto pi = gen.rep<ModScalar>(4);
      const auto pi2 = gen.rep_near(pi, 4);
      const auto [pb, pt] = banal_split(pi);
      const auto [pb2, pt2] = banal_split(pi2);
      if (!pb.empty() && !pt.empty()) ++mixed;
      ++res.cases;
      // recompute from scratch on the banal parts: every non-banal segment contributes 1
      EulerFactor<ModScalar> direct;
      for (const auto& a : pb.segments())
        for (const auto& b : pb2.segments()) direct = ef_mul(direct, L_segments(a, b));
      if (!(L_generic(pi, pi2) == direct)) res.fail(pi.encode() + " , " + pi2.encode());
      if (!(L_generic(pi, pi2) == L_generic(pb, pb2))) res.fail("banal parts: " + pi.encode());
      if (audit) audit->pair(pi, pi2);
    }
  }
  res.notes.push_back(std::to_string(mixed) + " reps with both banal and non-banal parts");
  return res;
}

/// Reduction compatibility on random pairs, plus the l=3, q=7 strict division.
inline SuiteResult suite_compat(u64 seed, Audit* audit = nullptr, std::size_t pairs = 100) {
  SuiteResult res{"compat"};
  std::size_t strict = 0;
  for (std::size_t c = 0; c < contexts().size(); ++c) {
    const auto ctx = PrimeContext::make(contexts()[c].first, contexts()[c].second);
    Generator gen(standard_model(ctx), mix(seed, c));
    const std::size_t count = pairs / contexts().size() + 1;
    for (std::size_t i = 0; i < count; ++i) {
      const auto pi = gen.rep<ModScalar>();
      const auto pi2 = gen.rep_near(pi);
      const auto rep = check_compat1(pi, pi2);
      ++res.cases;
      if (!rep.divides) res.fail("division fails: " + pi.encode() + " , " + pi2.encode());
      if (!rep.gamma_equal_up_to_unit) res.fail("gamma mismatch: " + pi.encode() + " , " + pi2.encode());
      if (!(rep.l_mod == rep.l_lift_reduced)) ++strict;
      if (audit) {
        audit->pair(pi, pi2);
        audit->pair(standard_lift(pi), standard_lift(pi2));
      }
    }
  }
  const auto ctx = PrimeContext::make(3, 7);
  const auto model = standard_model(ctx);
  const GenericRep<ModScalar> triv({Segment<ModScalar>(CuspidalSymbol<ModScalar>(model, "gl1", ModScalar::from_int(3, 1)), 1)});
  const auto rep = check_compat1(triv, triv);
  ++res.cases;
  const bool witness = rep.divides && rep.l_mod.is_one() && ef_render(rep.l_lift_reduced) == "1/(1 - X)";
  if (!witness) res.fail("l=3, q=7 trivial characters: expected 1 | 1/(1 - X), got " + ef_render(rep.l_mod) + " | " +
                         ef_render(rep.l_lift_reduced));
  res.notes.push_back(std::to_string(strict) + " random strict divisions; l=3 q=7 trivial: " + ef_render(rep.l_mod) +
                      " | " + ef_render(rep.l_lift_reduced));
  return res;
}

/// gcd over lifts equals L on all segment pairs of small length.
inline SuiteResult suite_gcd(u64 /*seed*/, Audit* audit = nullptr, unsigned max_k = 3,
                             std::vector<std::string>* certificates = nullptr) {
  SuiteResult res{"gcd"};
  std::map<std::string, std::size_t> kinds;
  for (const auto& [ell, q] : contexts()) {
    const auto ctx = PrimeContext::make(ell, q);
    const auto model = standard_model(ctx);
    const auto segs = enumerate_segments(model, small_twists(ctx), max_k, kInfinity, false);
    for (const auto& a : segs)
      for (const auto& b : segs) {
        ++res.cases;
        const GenericRep<ModScalar> pi({a}), pi2({b});
        const auto kind = [](const Segment<ModScalar>& s) {
          return std::string(s.base().banal() ? "banal" : s.base().is_supercuspidal() ? "non-banal sc" : "non-banal St");
        };
        ++kinds[kind(a)];
        try {
          const auto g = gcd_over_lifts(pi, pi2);
          if (audit) {
            audit->pair(pi, pi2);
            for (const auto& e : g.certificate) audit->pair(e.tau, e.tau2);
          }
          if (certificates) {
            std::ostringstream os;
            os << "(" << ell << "," << q << ") " << a.encode() << " x " << b.encode() << " : gcd " << ef_render(g.gcd)
               << " over " << g.pairs << " lift pairs; certificate:";
            for (const auto& e : g.certificate)
              os << " {" << e.tau.encode() << " | " << e.tau2.encode() << " -> " << ef_render(e.reduced) << "}";
            certificates->push_back(os.str());
          }
        } catch (const std::exception& ex) {
          res.fail("(" + std::to_string(ell) + "," + std::to_string(q) + ") " + a.encode() + " , " + b.encode() + ": " +
                   ex.what());
        }
      }
  }
  for (const auto& [k, n] : kinds) res.notes.push_back(k + ": " + std::to_string(n) + " pairs");
  return res;
}

/// The GL1 oracle against L_cuspidal in both worlds, epsilon consistency and reduction.
inline SuiteResult suite_oracle(u64 /*seed*/, int window = 20) {
  SuiteResult res{"oracle"};
  const std::map<u64, std::vector<u64>> ells{{2, {3, 5, 7}}, {3, {2, 5, 7}}, {4, {3, 5}}, {5, {2, 3, 7}}};
  std::size_t eps_checked = 0;
  for (const auto& [q, ell_list] : ells) {
    const auto kf = tate::ResidueField::make(q);
    const auto r0 = tate::Char0Ring::make(q);
    std::vector<tate::Char0Spec> specs;
    for (i64 e = 0; e <= 1; ++e)
      for (i64 j = 0; j <= 1; ++j) {
        specs.push_back({e, j, 0});
        if (q % 2 == 1) specs.push_back({e, j, static_cast<i64>(q - 1) / 2});
      }
    // characteristic 0 results depend on omega = chi chi' only
    std::map<std::tuple<i64, i64, i64>, tate::EpsilonResult<tate::Char0Ring>> eps0;
    auto omega_key = [&](const tate::Char0Spec& a, const tate::Char0Spec& b) {
      return std::tuple<i64, i64, i64>(a.e + b.e, static_cast<i64>(arith::mod(a.j + b.j, r0.N)),
                                       static_cast<i64>(arith::mod(a.s + b.s, q - 1)));
    };
    for (const auto& a : specs)
      for (const auto& b : specs) {
        const auto key = omega_key(a, b);
        if (!eps0.count(key))
          eps0.emplace(key, tate::epsilon_extract(r0, kf, tate::to_char0(r0, a), tate::to_char0(r0, b), window));
      }
    for (u64 ell : ell_list) {
      const auto rl = tate::ModlRing::make(ell, q);
      const auto model = tate::oracle_model(rl);
      // l-adic world
      for (const auto& a : specs)
        for (const auto& b : specs) {
          ++res.cases;
          const auto& o = eps0.at(omega_key(a, b));
          const auto engine = L_cuspidal(tate::engine_symbol(model, rl, a), tate::engine_symbol(model, rl, b));
          EulerFactor<AdicUnit> oracle;
          if (o.root) oracle = EulerFactor<AdicUnit>({tate::to_adic_unit(rl, a.e + b.e, a.j + b.j)});
          if (!o.ok) res.fail("q=" + std::to_string(q) + " char 0: " + o.failure);
          if (!(engine == oracle))
            res.fail("q=" + std::to_string(q) + " l=" + std::to_string(ell) + " l-adic: engine " + ef_render(engine) +
                     " oracle " + ef_render(oracle));
          if (o.ok) {
            const bool unit = o.c.is_integral_at(ell) && o.c.inverse().is_integral_at(ell);
            if (!unit) res.fail("q=" + std::to_string(q) + " l=" + std::to_string(ell) + ": epsilon is not an l-adic unit");
          }
        }
      // mod-l world: reductions of the characteristic-0 family plus every tame character
      std::vector<tate::Gl1Character<tate::ModlRing>> chars;
      for (const auto& a : specs) chars.push_back(tate::to_modl(rl, a));
      for (u64 s = 0; s + 1 < q; ++s) chars.push_back({rl.zeta(static_cast<i64>(s)), static_cast<i64>(s)});
      std::map<std::string, tate::EpsilonResult<tate::ModlRing>> epsl;
      for (const auto& a : chars)
        for (const auto& b : chars) {
          ++res.cases;
          const auto w = tate::char_product(rl, a, b);
          const std::string key = w.u.encode() + "|" + std::to_string(w.s);
          if (!epsl.count(key)) epsl.emplace(key, tate::epsilon_extract(rl, kf, a, b, window));
          const auto& o = epsl.at(key);
          if (!o.ok) res.fail("q=" + std::to_string(q) + " l=" + std::to_string(ell) + " mod-l: " + o.failure);
          const auto engine = L_cuspidal(tate::engine_symbol(model, rl, a), tate::engine_symbol(model, rl, b));
          EulerFactor<ModScalar> oracle;
          if (o.root) oracle = EulerFactor<ModScalar>({*o.root});
          if (!(engine == oracle))
            res.fail("q=" + std::to_string(q) + " l=" + std::to_string(ell) + " mod-l: engine " + ef_render(engine) +
                     " oracle " + ef_render(oracle));
        }
      // epsilon reduction through gamma
      for (const auto& a : specs)
        for (const auto& b : specs) {
          ++eps_checked;
          const auto& o0 = eps0.at(omega_key(a, b));
          const auto ma = tate::to_modl(rl, a), mb = tate::to_modl(rl, b);
          const auto w = tate::char_product(rl, ma, mb);
          const std::string key = w.u.encode() + "|" + std::to_string(w.s);
          if (!epsl.count(key)) epsl.emplace(key, tate::epsilon_extract(rl, kf, ma, mb, window));
          const auto& ol = epsl.at(key);
          if (o0.ok && ol.ok && !tate::gamma_reduces(r0, o0, rl, ol))
            res.fail("q=" + std::to_string(q) + " l=" + std::to_string(ell) + ": gamma does not reduce");
        }
    }
  }
  res.notes.push_back(std::to_string(eps_checked) + " epsilon reductions checked");
  return res;
}

/// Fast interval criterion against brute force, and hand-checked circle cases.
inline SuiteResult suite_linkage(u64 /*seed*/) {
  SuiteResult res{"linkage"};
  const auto ctx = PrimeContext::make(7, 2);
  const auto model = standard_model(ctx);
  for (const std::string line : {"gl1", "gl2u"}) {
    const CuspidalSymbol<AdicUnit> rho(model, line, AdicUnit::one(7));
    const CuspidalSymbol<AdicUnit> tagged(model, line, AdicUnit::one(7), QmodZ(1, 7));
    std::vector<Segment<AdicUnit>> segs;
    for (i64 a = -6; a <= 6; ++a)
      for (i64 b = a; b <= 6 && b - a < 4; ++b) {
        segs.push_back(make_segment(rho, a, b));
        if (a == 0) segs.push_back(make_segment(tagged, a, b));
      }
    for (const auto& x : segs)
      for (const auto& y : segs) {
        ++res.cases;
        if (linked_fast(x, y) != linked_bruteforce(x, y)) res.fail("fast/brute disagree: " + x.encode() + " , " + y.encode());
      }
  }
  // circle of size o = 3 (l = 7, q = 2, f = 1)
  const CuspidalSymbol<ModScalar> triv(model, "gl1", ModScalar::from_int(7, 1));
  struct Case {
    i64 a1, b1, a2, b2;
    bool linked;
  };
  const std::vector<Case> cases{{0, 1, 2, 2, true},  {0, 1, 0, 1, false}, {0, 0, 1, 1, true},
                                {0, 0, 0, 0, false}, {0, 1, 1, 1, false}, {0, 0, 3, 3, false},
                                {0, 1, 5, 5, true},  {0, 0, 2, 2, true},  {1, 2, 0, 0, true}};
  for (const auto& c : cases) {
    ++res.cases;
    const auto x = make_segment(triv, c.a1, c.b1), y = make_segment(triv, c.a2, c.b2);
    if (linked(x, y) != c.linked)
      res.fail("circle: [" + std::to_string(c.a1) + "," + std::to_string(c.b1) + "] vs [" + std::to_string(c.a2) + "," +
               std::to_string(c.b2) + "]");
  }
  return res;
}

using SuiteFn = std::function<SuiteResult(u64)>;

inline const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> m{
      {"cuspidal", [](u64 s) { return suite_cuspidal(s); }},
      {"degeneration", [](u64 s) { return suite_degeneration(s); }},
      {"segments", [](u64 s) { return suite_segments(s); }},
      {"gamma-inductivity", [](u64 s) { return suite_gamma_inductivity(s); }},
      {"banal-part", [](u64 s) { return suite_banal_part(s); }},
      {"compat", [](u64 s) { return suite_compat(s); }},
      {"gcd", [](u64 s) { return suite_gcd(s); }},
      {"oracle", [](u64 s) { return suite_oracle(s); }},
      {"linkage", [](u64 s) { return suite_linkage(s); }},
      {"poles", [](u64 s) {
         Audit audit;
         suite_cuspidal(s, &audit);
         suite_degeneration(s, &audit);
         suite_segments(s, &audit);
         suite_gamma_inductivity(s, &audit);
         suite_banal_part(s, &audit);
         suite_compat(s, &audit);
         suite_gcd(s, &audit);
         SuiteResult r{"poles"};
         r.cases = audit.factors + audit.disjointness;
         r.failures = audit.failures;
         r.notes.push_back(std::to_string(audit.factors) + " segment factors, " + std::to_string(audit.disjointness) +
                           " disjointness checks");
         return r;
       }},
  };
  return m;
}

}  // namespace lfactors::verify
