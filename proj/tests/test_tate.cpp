#include <gtest/gtest.h>

#include "lfactors/tate/bridge.hpp"
#include "lfactors/tate/oracle.hpp"

using namespace lfactors;
using namespace lfactors::tate;

namespace {

template <class Ring>
Gl1Character<Ring> triv(const Ring& r) {
  return {r.one(), 0};
}

Ball ball(const ResidueField& k, std::size_t unit_index, int m) {
  return Ball::make(Laurent{{0, k.units[unit_index]}}, m);
}

}  // namespace

TEST(Tate, Cyclotomic) {
  const auto f = CycElem::field(6);
  EXPECT_EQ(f->degree(), 2u);
  const auto z = CycElem::zeta(f, 1);
  EXPECT_EQ(z.pow(6), CycElem::rational(f, 1));
  EXPECT_EQ(z.pow(3), CycElem::rational(f, -1));
  const auto x = z + CycElem::rational(f, Rational(1, 3));
  EXPECT_EQ(x * x.inverse(), CycElem::rational(f, 1));
  EXPECT_FALSE(x.is_integral_at(3));
  EXPECT_TRUE(x.is_integral_at(2));
}

TEST(Tate, ShellCoefficients) {
  const auto k2 = ResidueField::make(2);
  const auto r2 = Char0Ring::make(2);
  const auto one_O = indicator(r2, Ball::make({}, 0));
  for (int k = 0; k < 5; ++k) EXPECT_EQ(shell_coefficient(r2, k2, triv(r2), one_O, k, 20), r2.one());
  EXPECT_TRUE(shell_coefficient(r2, k2, triv(r2), one_O, -1, 20).is_zero());

  const auto k3 = ResidueField::make(3);
  const auto m32 = ModlRing::make(2, 3);
  const auto one_O3 = indicator(m32, Ball::make({}, 0));
  for (int k = -3; k < 5; ++k) EXPECT_TRUE(shell_coefficient(m32, k3, triv(m32), one_O3, k, 20).is_zero());

  const auto r3 = Char0Ring::make(3);
  const Gl1Character<Char0Ring> quad{r3.one(), 1};
  for (int k = -3; k < 5; ++k)
    EXPECT_TRUE(shell_coefficient(r3, k3, quad, indicator(r3, Ball::make({}, 0)), k, 20).is_zero());
  EXPECT_THROW(shell_coefficient(r2, k2, triv(r2), one_O, 21, 20), DomainError);
}

TEST(Tate, SeriesCertification) {
  const auto k2 = ResidueField::make(2);
  const auto r2 = Char0Ring::make(2);
  const auto s = certify(r2, rs_series(r2, k2, triv(r2), indicator(r2, Ball::make({}, 0)), 20), r2.one(), 20);
  ASSERT_TRUE(s.ok);
  EXPECT_EQ(s.e, 1);
  EXPECT_EQ(lpoly_render<Char0Ring>(s.num), "((1))X^0");

  const auto c = rs_series(r2, k2, triv(r2), indicator(r2, ball(k2, 0, 1)), 20);
  for (int k = -20; k <= 20; ++k) EXPECT_EQ(c[static_cast<std::size_t>(k + 20)], k == 0 ? r2.one() : r2.zero());

  const auto k3 = ResidueField::make(3);
  const auto m32 = ModlRing::make(2, 3);
  const auto z = certify(m32, rs_series(m32, k3, triv(m32), indicator(m32, Ball::make({}, 0)), 20), m32.one(), 20);
  ASSERT_TRUE(z.ok);
  EXPECT_TRUE(z.num.empty());
  EXPECT_EQ(z.e, 0);
}

TEST(Tate, LFactorViaIdeal) {
  const auto k2 = ResidueField::make(2);
  const auto r2 = Char0Ring::make(2);
  const auto l = tate_L_via_ideal(r2, k2, triv(r2), triv(r2));
  ASSERT_TRUE(l.ok);
  ASSERT_TRUE(l.root.has_value());
  EXPECT_EQ(*l.root, r2.one());

  for (u64 q : {3ULL, 4ULL, 5ULL}) {
    const auto kq = ResidueField::make(q);
    const u64 ell = arith::prime_factors(q - 1).front();
    const auto rl = ModlRing::make(ell, q);
    const auto d = tate_L_via_ideal(rl, kq, triv(rl), triv(rl));
    ASSERT_TRUE(d.ok) << d.failure;
    EXPECT_FALSE(d.root.has_value()) << "q=" << q;
  }

  const auto k5 = ResidueField::make(5);
  const auto m75 = ModlRing::make(7, 5);
  const auto t = tate_L_via_ideal(m75, k5, Gl1Character<ModlRing>{m75.one(), 1}, triv(m75));
  ASSERT_TRUE(t.ok);
  EXPECT_FALSE(t.root.has_value());
  EXPECT_THROW(tate_L_via_ideal(Char0Ring::make(5), k5, Gl1Character<Char0Ring>{Char0Ring::make(5).one(), 1},
                                triv(Char0Ring::make(5))),
               DomainError);
}

TEST(Tate, Fourier) {
  const auto k3 = ResidueField::make(3);
  const auto r3 = Char0Ring::make(3);
  const auto f0 = fourier(r3, k3, indicator(r3, Ball::make({}, 0)));
  ASSERT_EQ(f0.terms.size(), 1u);
  EXPECT_EQ(f0.terms[0].first, Ball::make({}, 0));
  EXPECT_EQ(f0.terms[0].second, r3.one());

  const auto f1 = fourier(r3, k3, indicator(r3, Ball::make({}, 1)));
  ASSERT_EQ(f1.terms.size(), 1u);
  EXPECT_EQ(f1.terms[0].first, Ball::make({}, -1));
  EXPECT_EQ(f1.terms[0].second, r3.q_pow(-1));

  const auto phi = indicator(r3, ball(k3, 0, 1));
  const auto f2 = fourier(r3, k3, phi);
  EXPECT_EQ(f2.terms.size(), 3u);  // one term per residue class of p^{-1} / O
  for (const auto& [b, c] : f2.terms) EXPECT_EQ(b.m, 0);
  for (u64 q : {2ULL, 3ULL, 4ULL, 5ULL}) {
    const auto k = ResidueField::make(q);
    const auto r = Char0Ring::make(q);
    for (const auto& [name, tf] : test_family(r, k)) EXPECT_TRUE(fourier_inversion_holds(r, k, tf)) << name;
  }
}

TEST(Tate, Epsilon) {
  const auto k2 = ResidueField::make(2);
  const auto r2 = Char0Ring::make(2);
  const auto e = epsilon_extract(r2, k2, triv(r2), triv(r2), 20, 3);
  ASSERT_TRUE(e.ok) << e.failure;
  EXPECT_TRUE(e.consistent);
  EXPECT_TRUE(e.unit);
  EXPECT_GT(e.phis_used, 1u);

  const auto k3 = ResidueField::make(3);
  const auto r3 = Char0Ring::make(3);
  const auto eq = epsilon_extract(r3, k3, Gl1Character<Char0Ring>{r3.one(), 1}, triv(r3), 20, 5);
  ASSERT_TRUE(eq.ok) << eq.failure;
  EXPECT_TRUE(eq.unit);
  EXPECT_FALSE(eq.root.has_value());

  for (u64 ell : {5ULL, 7ULL}) {
    const auto rl = ModlRing::make(ell, 3);
    const auto el = epsilon_extract(rl, k3, Gl1Character<ModlRing>{rl.one(), 1}, triv(rl), 20);
    ASSERT_TRUE(el.ok);
    EXPECT_TRUE(gamma_reduces(r3, eq, rl, el));
  }
}

TEST(Tate, Bridge) {
  const auto rl = ModlRing::make(3, 4);  // N = 6, N' = 2, L = 3
  const auto u = to_adic_unit(rl, 1, 1);
  EXPECT_EQ(u.e_q(), 1);
  EXPECT_EQ(u.teich(), rl.zeta(1));
  EXPECT_EQ(u.sing(), QmodZ(2, 3));  // 2 * 2 = 1 mod 3
  EXPECT_EQ(to_adic_unit(rl, 0, 1) * to_adic_unit(rl, 0, 2), to_adic_unit(rl, 0, 3));
  EXPECT_TRUE(to_adic_unit(rl, 0, 6).is_one());
  const auto model = oracle_model(ModlRing::make(7, 5));
  EXPECT_EQ(model->lines().size(), 5u);  // gl1 plus four tame characters
}
