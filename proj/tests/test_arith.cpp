#include <gtest/gtest.h>

#include "lfactors/arith.hpp"

using namespace lfactors::arith;

TEST(Arith, PowmodAndMod) {
  EXPECT_EQ(powmod(2, 10, 1000), 24u);
  EXPECT_EQ(powmod(3, 0, 7), 1u);
  EXPECT_EQ(mod(-1, 7), 6u);
  EXPECT_EQ(mod(-14, 7), 0u);
  EXPECT_EQ(mulmod(u64{1} << 62, 4, 1000000007), (u64{1} << 62) % 1000000007 * 4 % 1000000007);
}

TEST(Arith, Primes) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(11));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_factors(360), (std::vector<u64>{2, 3, 5}));
  EXPECT_EQ(prime_of_power(8), 2u);
  EXPECT_EQ(prime_of_power(4), 2u);
  EXPECT_EQ(prime_of_power(6), 0u);
  EXPECT_EQ(split_prime(24, 2), (std::pair<u64, unsigned>{3, 3}));
}

TEST(Arith, OrdersAndDivisors) {
  EXPECT_EQ(mult_order_mod(2, 7), 3u);
  EXPECT_EQ(mult_order_mod(2, 5), 4u);
  EXPECT_EQ(mult_order_mod(1, 3), 1u);
  EXPECT_EQ(divisors(12), (std::vector<unsigned>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(floor_div(-3, 2), -2);
  EXPECT_EQ(floor_div(3, 2), 1);
  EXPECT_EQ(ipow(3, 4), 81u);
}
