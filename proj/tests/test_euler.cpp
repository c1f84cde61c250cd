#include <gtest/gtest.h>

#include <random>

#include "lfactors/euler.hpp"

using namespace lfactors;

namespace {

ModScalar m(u64 ell, i64 v) { return ModScalar::from_int(ell, v); }

EulerFactor<ModScalar> ef(u64 ell, std::initializer_list<i64> roots) {
  std::vector<ModScalar> v;
  for (auto r : roots) v.push_back(m(ell, r));
  return EulerFactor<ModScalar>(v);
}

AdicUnit a(u64 ell, i64 e, i64 t, i64 sn = 0, i64 sd = 1) { return AdicUnit(e, m(ell, t), QmodZ(sn, sd)); }

}  // namespace

TEST(Euler, PoleFamily) {
  const auto c7 = PrimeContext::make(7, 2);
  EXPECT_EQ(ef_from_pole_family(c7, m(7, 1), 3), ef(7, {1, 2, 4}));
  EXPECT_EQ(ef_from_pole_family(c7, m(7, 5), 1), ef(7, {5}));
  const auto c3 = PrimeContext::make(3, 2);
  EXPECT_EQ(ef_from_pole_family(c3, AdicUnit::one(3), 3),
            EulerFactor<AdicUnit>({a(3, 0, 1), a(3, 0, 1, 1, 3), a(3, 0, 1, 2, 3)}));
  EXPECT_THROW(ef_from_pole_family(c7, m(7, 0), 2), DomainError);
}

TEST(Euler, LatticeOperations) {
  EXPECT_EQ(ef_gcd(ef(5, {1, 2}), ef(5, {2, 4})), ef(5, {2}));
  EXPECT_TRUE(ef_divides(ef(5, {2}), ef(5, {2, 4})));
  EXPECT_FALSE(ef_divides(ef(5, {3}), ef(5, {2, 4})));
  EXPECT_EQ(ef_mul(ef(5, {1}), EulerFactor<ModScalar>()), ef(5, {1}));
  EXPECT_EQ(ef_gcd(ef(5, {2, 2, 3}), ef(5, {2, 2, 2})), ef(5, {2, 2}));
}

TEST(Euler, DualSubstitute) {
  const auto c = PrimeContext::make(5, 2);
  EXPECT_EQ(ef_dual_substitute(ef(5, {1}), c), ef(5, {2}));
  EXPECT_EQ(ef_dual_substitute(ef(5, {3}), c), ef(5, {4}));
  const auto u = a(5, 3, 2, 1, 5);
  EXPECT_EQ(ef_dual_substitute(EulerFactor<AdicUnit>({u}), c), EulerFactor<AdicUnit>({a(5, -2, 3, 4, 5)}));
}

TEST(Euler, Reduce) {
  EXPECT_EQ(ef_reduce(EulerFactor<AdicUnit>({AdicUnit::one(3)}), PrimeContext::make(3, 7)), ef(3, {1}));
  EXPECT_EQ(ef_reduce(EulerFactor<AdicUnit>({a(3, 0, 1, 1, 3)}), PrimeContext::make(3, 2)), ef(3, {1}));
  EXPECT_EQ(ef_reduce(EulerFactor<AdicUnit>({a(5, -1, 1)}), PrimeContext::make(5, 2)), ef(5, {3}));
}

TEST(Euler, Gamma) {
  EXPECT_TRUE(gamma_make(ef(5, {2}), ef(5, {2})).is_unit());
  const auto ctx = PrimeContext::make(3, 7);
  const auto g = gamma_make(EulerFactor<AdicUnit>({a(3, 1, 1)}), EulerFactor<AdicUnit>({a(3, 0, 1)}));
  EXPECT_FALSE(g.is_unit());
  EXPECT_TRUE(gamma_reduce_modl(g, ctx).is_unit());
  const auto x = gamma_make(ef(5, {3}), EulerFactor<ModScalar>());
  const auto y = gamma_make(EulerFactor<ModScalar>(), ef(5, {3}));
  EXPECT_TRUE(gamma_mul(x, y).is_unit());
}

TEST(Euler, Render) {
  EXPECT_EQ(ef_render(EulerFactor<ModScalar>()), "1");
  EXPECT_EQ(ef_render(ef(5, {1})), "1/(1 - X)");
  EXPECT_EQ(ef_render(ef(7, {1, 2, 4})), "1/(1 - X^3)");
  EXPECT_EQ(ef_render(ef(7, {4})), "1/(1 - 4X)");
  EXPECT_EQ(ef_render(ef(7, {1, 1})), "1/(1 - 2X - 6X^2)");
  EXPECT_EQ(ef_render(EulerFactor<AdicUnit>({a(3, -1, 1), a(3, -1, 1)})), "1/((1 - [q^-1 * 1 * zeta(0)]X)^2)");
  EXPECT_EQ(gamma_render(gamma_make(ef(5, {2}), ef(5, {1}))), "(1 - X)/(1 - 2X)");
  // extension-field coefficients are parenthesized
  const auto g = ModScalar::generator(3, 2);
  EXPECT_EQ(ef_render(EulerFactor<ModScalar>({g})), "1/(1 - (g_2)X)");
}

TEST(EulerProperty, LatticeLaws) {
  std::mt19937_64 rng(11);
  auto draw = [&] {
    std::uniform_int_distribution<int> n(0, 5), v(1, 6);
    std::vector<ModScalar> r;
    for (int i = n(rng); i > 0; --i) r.push_back(m(7, v(rng)));
    return EulerFactor<ModScalar>(r);
  };
  const auto ctx = PrimeContext::make(7, 2);
  for (int i = 0; i < 300; ++i) {
    const auto A = draw(), B = draw(), C = draw();
    EXPECT_EQ(ef_gcd(A, B), ef_gcd(B, A));
    EXPECT_EQ(ef_gcd(ef_gcd(A, B), C), ef_gcd(A, ef_gcd(B, C)));
    EXPECT_EQ(ef_gcd(A, A), A);
    EXPECT_TRUE(ef_divides(ef_gcd(A, B), A));
    if (ef_divides(A, B) && ef_divides(B, A)) {
      EXPECT_EQ(A, B);
    }
    EXPECT_EQ(ef_dual_substitute(ef_dual_substitute(A, ctx), ctx), A);
  }
}

TEST(EulerProperty, ReductionCommutesWithProducts) {
  std::mt19937_64 rng(12);
  const auto ctx = PrimeContext::make(5, 2);
  auto draw = [&] {
    std::uniform_int_distribution<int> n(0, 4), e(-2, 2), t(1, 4), s(0, 4);
    std::vector<AdicUnit> r;
    for (int i = n(rng); i > 0; --i) r.push_back(a(5, e(rng), t(rng), s(rng), 5));
    return EulerFactor<AdicUnit>(r);
  };
  for (int i = 0; i < 200; ++i) {
    const auto A = draw(), B = draw(), C = draw(), D = draw();
    EXPECT_EQ(ef_reduce(ef_mul(A, B), ctx), ef_mul(ef_reduce(A, ctx), ef_reduce(B, ctx)));
    const auto g1 = gamma_make(A, B), g2 = gamma_make(C, D);
    EXPECT_EQ(gamma_reduce_modl(gamma_mul(g1, g2), ctx),
              gamma_mul(gamma_reduce_modl(g1, ctx), gamma_reduce_modl(g2, ctx)));
  }
}
