#include <gtest/gtest.h>

#include "lfactors/factors.hpp"
#include "lfactors/verify.hpp"

using namespace lfactors;

namespace {

ModScalar m(u64 ell, i64 v) { return ModScalar::from_int(ell, v); }

ModelPtr gl1_model(u64 ell, u64 q) {
  return Model::make(PrimeContext::make(ell, q), {{"gl1", 1, 1, "gl1", std::nullopt, TagMap::negate, std::nullopt}});
}

template <class S>
GenericRep<S> single(const CuspidalSymbol<S>& rho, unsigned k = 1) {
  return GenericRep<S>({Segment<S>(rho, k)});
}

std::vector<std::string> roots(const EulerFactor<AdicUnit>& e) {
  std::vector<std::string> out;
  for (const auto& r : e.roots()) out.push_back(r.encode());
  return out;
}

}  // namespace

TEST(Factors, Cuspidal) {
  const auto m52 = gl1_model(5, 2);
  const CuspidalSymbol<ModScalar> t5(m52, "gl1", m(5, 1));
  EXPECT_EQ(ef_render(L_cuspidal(t5, t5)), "1/(1 - X)");

  const auto m34 = Model::make(PrimeContext::make(3, 4), {{"gl1", 1, 1, "gl1", std::nullopt, TagMap::negate, std::nullopt},
                                                          {"gl2", 2, 2, "gl2", std::nullopt, TagMap::negate, std::nullopt}});
  for (const std::string line : {"gl1", "gl2"})
    for (i64 u = 1; u <= 2; ++u)
      for (i64 w = 1; w <= 2; ++w)
        EXPECT_TRUE(L_cuspidal(CuspidalSymbol<ModScalar>(m34, line, m(3, u)), CuspidalSymbol<ModScalar>(m34, line, m(3, w))).is_one());

  const auto m52b = Model::make(PrimeContext::make(5, 2), {{"gl2", 2, 2, "gl2", std::nullopt, TagMap::negate, std::nullopt}});
  const CuspidalSymbol<AdicUnit> r(m52b, "gl2", AdicUnit::one(5));
  const auto l = L_cuspidal(r, r.dual());
  EXPECT_EQ(roots(l), (std::vector<std::string>{"q^0 * 1 * zeta(0)", "q^0 * 4 * zeta(0)"}));
  EXPECT_EQ(ef_render(ef_reduce(l, PrimeContext::make(5, 2))), "1/(1 - X^2)");
}

TEST(Factors, Segments) {
  const auto m72 = gl1_model(7, 2);
  const CuspidalSymbol<ModScalar> triv(m72, "gl1", m(7, 1));
  const auto l = L_segments(Segment<ModScalar>(triv, 2), Segment<ModScalar>(triv, 1));
  EXPECT_EQ(ef_render(l), "1/(1 - 4X)");
  EXPECT_EQ(l, L_segments(Segment<ModScalar>(triv, 1), Segment<ModScalar>(triv, 2)));

  const auto m32 = Model::make(PrimeContext::make(3, 2), {{"gl2", 2, 2, "gl2", std::nullopt, TagMap::negate, std::nullopt}});
  const CuspidalSymbol<ModScalar> nb(m32, "gl2", m(3, 1));
  EXPECT_TRUE(L_segments(Segment<ModScalar>(nb, 2), Segment<ModScalar>(nb, 1)).is_one());

  const CuspidalSymbol<AdicUnit> a(m72, "gl1", AdicUnit::one(7));
  EXPECT_EQ(roots(L_segments(Segment<AdicUnit>(a, 2), Segment<AdicUnit>(a, 2))),
            (std::vector<std::string>{"q^-1 * 1 * zeta(0)", "q^-2 * 1 * zeta(0)"}));
}

TEST(Factors, Generic) {
  const auto m32 = Model::make(PrimeContext::make(3, 2), {{"gl1", 1, 1, "gl1", std::nullopt, TagMap::negate, std::nullopt},
                                                          {"gl2", 2, 2, "gl2", std::nullopt, TagMap::negate, std::nullopt}});
  const CuspidalSymbol<ModScalar> triv(m32, "gl1", m(3, 1)), sc(m32, "gl2", m(3, 1));
  const GenericRep<ModScalar> pi({Segment<ModScalar>(triv, 1), Segment<ModScalar>(sc, 1)});
  EXPECT_EQ(ef_render(L_generic(pi, single(triv))), "1/(1 - X)");
  EXPECT_TRUE(L_generic(pi, GenericRep<ModScalar>()).is_one());
  EXPECT_TRUE(L_generic(GenericRep<ModScalar>(), pi).is_one());
}

TEST(Factors, Gamma) {
  const auto m52 = gl1_model(5, 2);
  const AdicUnit u(1, m(5, 2), QmodZ()), w(0, m(5, 3), QmodZ(1, 5));
  const auto g = gamma_generic(single(CuspidalSymbol<AdicUnit>(m52, "gl1", u)), single(CuspidalSymbol<AdicUnit>(m52, "gl1", w)));
  const AdicUnit q(1, m(5, 1), QmodZ());
  EXPECT_EQ(g.num(), EulerFactor<AdicUnit>({q * u * w}));
  EXPECT_EQ(g.den(), EulerFactor<AdicUnit>({u * w}));

  const auto m37 = gl1_model(3, 7);
  const CuspidalSymbol<ModScalar> t(m37, "gl1", m(3, 1));
  EXPECT_TRUE(gamma_generic(single(t), single(t)).is_unit());
}

TEST(Factors, Compat) {
  const auto m37 = gl1_model(3, 7);
  const auto t = single(CuspidalSymbol<ModScalar>(m37, "gl1", m(3, 1)));
  const auto r = check_compat1(t, t);
  EXPECT_TRUE(r.divides);
  EXPECT_TRUE(r.gamma_equal_up_to_unit);
  EXPECT_EQ(ef_render(r.l_mod), "1");
  EXPECT_EQ(ef_render(r.l_lift_reduced), "1/(1 - X)");

  const auto m72 = gl1_model(7, 2);
  const auto b = single(CuspidalSymbol<ModScalar>(m72, "gl1", m(7, 1)), 2);
  const auto rb = check_compat1(b, b);
  EXPECT_TRUE(rb.ok());
  EXPECT_EQ(rb.l_mod, rb.l_lift_reduced);
}

TEST(Factors, GcdOverLifts) {
  const auto m37 = gl1_model(3, 7);
  const auto t = single(CuspidalSymbol<ModScalar>(m37, "gl1", m(3, 1)));
  const auto g = gcd_over_lifts(t, t);
  EXPECT_TRUE(g.gcd.is_one());
  EXPECT_EQ(g.pairs, 4u);
  ASSERT_EQ(g.certificate.size(), 1u);
  EXPECT_TRUE(g.certificate[0].reduced.is_one());

  const auto m72 = gl1_model(7, 2);
  const auto a = single(CuspidalSymbol<ModScalar>(m72, "gl1", m(7, 1)), 2);
  const auto b = single(CuspidalSymbol<ModScalar>(m72, "gl1", m(7, 1)));
  const auto gb = gcd_over_lifts(a, b);
  EXPECT_EQ(gb.pairs, 1u);
  EXPECT_EQ(ef_render(gb.gcd), "1/(1 - 4X)");
}

TEST(Factors, PoleContainmentAndDisjointness) {
  const auto m72 = gl1_model(7, 2);
  const CuspidalSymbol<AdicUnit> a(m72, "gl1", AdicUnit::one(7));
  const Segment<AdicUnit> s2(a, 2), s1(a, 1);
  EXPECT_TRUE(pole_containment_holds(s2, s2, L_segments(s2, s2)));
  EXPECT_FALSE(pole_containment_holds(s2, s1, EulerFactor<AdicUnit>({AdicUnit::one(7)})));
  const auto ctx = PrimeContext::make(7, 2);
  const auto model = verify::standard_model(ctx);
  const auto rho = single(CuspidalSymbol<ModScalar>(model, "gl1", m(7, 1)));
  const auto p1 = single(CuspidalSymbol<ModScalar>(model, "gl1", m(7, 1)));
  const auto p2 = single(CuspidalSymbol<ModScalar>(model, "gl2u", m(7, 1)));
  EXPECT_TRUE(distinct_line_disjoint(rho, p1, p2));
}

class FactorsProperty : public ::testing::TestWithParam<std::pair<u64, u64>> {};

TEST_P(FactorsProperty, SymmetryTwistAndDivision) {
  const auto [ell, q] = GetParam();
  const auto ctx = PrimeContext::make(ell, q);
  verify::Generator gen(verify::standard_model(ctx), 77 + ell * 100 + q);
  auto run = [&](auto tag) {
    using S = decltype(tag);
    for (int i = 0; i < 60; ++i) {
      const auto pi = gen.template rep<S>(2);
      const auto pi2 = gen.rep_near(pi, 2);
      const auto l = L_generic(pi, pi2);
      EXPECT_EQ(l, L_generic(pi2, pi));
      EXPECT_EQ(gamma_generic(pi, pi2), gamma_generic(pi2, pi));
      // L(chi_u pi, pi') has the roots of L(pi, pi') times u
      const S u = gen.template scalar<S>();
      std::vector<S> shifted;
      for (const auto& r : l.roots()) shifted.push_back(r * u);
      EXPECT_EQ(L_generic(rep_twist(pi, u), pi2), EulerFactor<S>(shifted));
      // L(pi1 x pi2, pi3) divides L(pi1, pi3) L(pi2, pi3) when the union is generic
      const auto pi3 = gen.rep_near(pi, 2);
      try {
        const auto u12 = rep_union(pi, pi3);
        EXPECT_TRUE(ef_divides(L_generic(u12, pi2), ef_mul(L_generic(pi, pi2), L_generic(pi3, pi2))));
      } catch (const DomainError&) {
      }
    }
  };
  run(ModScalar{});
  run(AdicUnit{});
}

INSTANTIATE_TEST_SUITE_P(Contexts, FactorsProperty,
                         ::testing::Values(std::pair<u64, u64>{3, 2}, std::pair<u64, u64>{5, 2},
                                           std::pair<u64, u64>{7, 2}, std::pair<u64, u64>{3, 7}));
