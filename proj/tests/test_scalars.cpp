#include <gtest/gtest.h>

#include <random>

#include "lfactors/scalars.hpp"

using namespace lfactors;

namespace {

std::vector<std::string> encodings(const std::vector<ModScalar>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.encode());
  return out;
}

}  // namespace

TEST(Scalars, MultOrder) {
  EXPECT_EQ(mult_order(ModScalar::from_int(5, 2)), 4u);
  EXPECT_EQ(mult_order(ModScalar::from_int(11, 1)), 1u);
  EXPECT_EQ(mult_order(ModScalar::from_int(7, 2)), 3u);
  EXPECT_THROW(mult_order(ModScalar::from_int(7, 0)), DomainError);
}

TEST(Scalars, RootsOfUnity) {
  const auto c7 = PrimeContext::make(7, 2);
  EXPECT_EQ(encodings(roots_of_unity_with_multiplicity(c7, 3)), (std::vector<std::string>{"1", "2", "4"}));
  EXPECT_EQ(encodings(roots_of_unity_with_multiplicity(c7, 1)), (std::vector<std::string>{"1"}));
  const auto c3 = PrimeContext::make(3, 2);
  EXPECT_EQ(encodings(roots_of_unity_with_multiplicity(c3, 3)), (std::vector<std::string>{"1", "1", "1"}));
  // 4th roots of unity mod 3 need F_9
  const auto r4 = roots_of_unity_with_multiplicity(c3, 4);
  ASSERT_EQ(r4.size(), 4u);
  for (const auto& z : r4) EXPECT_TRUE(z.pow(4).is_one());
}

TEST(Scalars, ReduceUnit) {
  EXPECT_EQ(reduce_unit(AdicUnit(-1, ModScalar::from_int(5, 1), QmodZ()), PrimeContext::make(5, 2)).encode(), "3");
  EXPECT_EQ(reduce_unit(AdicUnit(0, ModScalar::from_int(3, 1), QmodZ(1, 3)), PrimeContext::make(3, 2)).encode(), "1");
  EXPECT_EQ(reduce_unit(AdicUnit(1, ModScalar::from_int(3, 1), QmodZ()), PrimeContext::make(3, 7)).encode(), "1");
}

TEST(Scalars, AdicUnitGroupLaw) {
  const AdicUnit a(2, ModScalar::from_int(7, 3), QmodZ(2, 7));
  const AdicUnit b(-1, ModScalar::from_int(7, 5), QmodZ(6, 7));
  EXPECT_EQ(a * b, AdicUnit(1, ModScalar::from_int(7, 1), QmodZ(1, 7)));
  EXPECT_TRUE((a * a.inverse()).is_one());
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_FALSE(AdicUnit(1, ModScalar::from_int(7, 1), QmodZ()) == AdicUnit::one(7));
}

TEST(Scalars, Encodings) {
  const AdicUnit a(-2, ModScalar::generator(3, 2), QmodZ(1, 9));
  EXPECT_EQ(a.encode(), "q^-2 * g_2 * zeta(1/9)");
  EXPECT_EQ(AdicUnit::parse(3, a.encode()), a);
  const AdicUnit b(0, ModScalar::generator(3, 2) + ModScalar::from_int(3, 1), QmodZ());
  EXPECT_EQ(b.encode(), "q^0 * (g_2 + 1) * zeta(0)");
  EXPECT_EQ(AdicUnit::parse(3, b.encode()), b);
  EXPECT_EQ(AdicUnit::parse(5, "3"), AdicUnit::teichmuller(ModScalar::from_int(5, 3)));
  EXPECT_EQ(parse_mod_scalar(3, "2*g_2 + 1"), ModScalar::generator(3, 2) * ModScalar::from_int(3, 2) + ModScalar::from_int(3, 1));
  EXPECT_EQ(QmodZ::parse("2/6"), QmodZ(1, 3));
  EXPECT_EQ(QmodZ(-1, 3).encode(), "2/3");
  EXPECT_THROW(parse_mod_scalar(5, "x"), DomainError);
  EXPECT_THROW(AdicUnit::parse(5, "q^1 * 2"), DomainError);
}

TEST(Scalars, ContextValidation) {
  EXPECT_THROW(PrimeContext::make(4, 3), DomainError);
  EXPECT_THROW(PrimeContext::make(3, 6), DomainError);
  EXPECT_THROW(PrimeContext::make(2, 4), DomainError);
  const auto c = PrimeContext::make(3, 4);
  EXPECT_EQ(c.p, 2u);
  EXPECT_EQ(c.r, 2u);
  EXPECT_EQ(c.q_bar, 1u);
}

TEST(ScalarsProperty, ReductionIsAHomomorphism) {
  std::mt19937_64 rng(7);
  for (auto [ell, q] : std::vector<std::pair<u64, u64>>{{3, 2}, {5, 2}, {7, 2}, {3, 7}, {5, 11}}) {
    const auto ctx = PrimeContext::make(ell, q);
    auto draw = [&] {
      std::uniform_int_distribution<long long> e(-3, 3), t(1, static_cast<long long>(ell - 1)), s(0, static_cast<long long>(ell * ell - 1));
      return AdicUnit(e(rng), ModScalar::from_int(ell, t(rng)), QmodZ(s(rng), static_cast<long long>(ell * ell)));
    };
    for (int i = 0; i < 50; ++i) {
      const auto u = draw(), v = draw();
      EXPECT_EQ(reduce_unit(u * v, ctx), reduce_unit(u, ctx) * reduce_unit(v, ctx));
    }
  }
}

TEST(ScalarsProperty, RootsMultiplyOutToOneMinusXf) {
  for (auto [ell, q] : std::vector<std::pair<u64, u64>>{{3, 2}, {5, 2}, {7, 2}, {2, 3}}) {
    const auto ctx = PrimeContext::make(ell, q);
    for (u64 f = 1; f <= 6; ++f) {
      // prod (1 - z X) over the multiset, coefficients in F_l-bar
      std::vector<ModScalar> poly{ModScalar::from_int(ell, 1)};
      for (const auto& z : roots_of_unity_with_multiplicity(ctx, f)) {
        std::vector<ModScalar> next(poly.size() + 1, ModScalar::from_int(ell, 0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
          next[i] = next[i] + poly[i];
          next[i + 1] = next[i + 1] - z * poly[i];
        }
        poly = next;
      }
      ASSERT_EQ(poly.size(), f + 1);
      for (std::size_t i = 1; i < f; ++i) EXPECT_TRUE(poly[i].is_zero()) << "l=" << ell << " f=" << f << " i=" << i;
      EXPECT_EQ(poly[f], ModScalar::from_int(ell, -1));
    }
  }
}

TEST(ScalarsProperty, TorsionCosetRepresentativeIsCanonical) {
  const auto ctx = PrimeContext::make(7, 2);
  const auto x = ModScalar::from_int(7, 3);
  const auto c = canonical_in_torsion_coset(ctx, x, 3);
  for (const auto& z : world_traits<ModScalar>::torsion(ctx, 3)) EXPECT_EQ(canonical_in_torsion_coset(ctx, x * z, 3), c);
  const AdicUnit u(1, ModScalar::from_int(7, 3), QmodZ(1, 7));
  const auto cu = canonical_in_torsion_coset(ctx, u, 7);
  for (const auto& z : world_traits<AdicUnit>::torsion(ctx, 7)) EXPECT_EQ(canonical_in_torsion_coset(ctx, u * z, 7), cu);
}
