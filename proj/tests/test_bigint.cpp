#include "doctest.h"

#include <random>

#include "cohen/bigint.hpp"

using cohen::BigInt;

TEST_CASE("small arithmetic agrees with int64") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    long long a = static_cast<long long>(rng() % 2000001) - 1000000;
    long long b = static_cast<long long>(rng() % 2000001) - 1000000;
    CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
    CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
    CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
    CHECK((BigInt(a) < BigInt(b)) == (a < b));
  }
}

TEST_CASE("decimal round trip") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    BigInt v(1);
    for (int i = 0; i < 8; ++i) v = v * BigInt(static_cast<long long>(rng() % 1000000 + 2));
    if (t % 2) v = -v;
    CHECK(BigInt(v.to_string()) == v);
  }
  CHECK(BigInt("0").to_string() == "0");
  CHECK(BigInt("-17").to_string() == "-17");
}

TEST_CASE("binomial values") {
  CHECK(cohen::binomial(12, 6).to_int64() == 924);
  CHECK(cohen::binomial(3, 2).to_int64() == 3);
  CHECK(cohen::binomial(5, 9).is_zero());
  // Pascal recurrence as an independent route
  for (std::uint32_t n = 1; n <= 40; ++n)
    for (std::uint32_t k = 1; k < n; ++k)
      CHECK(cohen::binomial(n, k) == cohen::binomial(n - 1, k - 1) + cohen::binomial(n - 1, k));
  // a value beyond 64 bits, against Pascal in big integers
  CHECK(cohen::binomial(125, 62).to_string() ==
        (cohen::binomial(124, 61) + cohen::binomial(124, 62)).to_string());
  CHECK_FALSE(cohen::binomial(125, 62).fits_int64());
}

TEST_CASE("exact division, modulus, valuation") {
  CHECK(BigInt(126).div_exact(9).to_int64() == 14);
  CHECK_THROWS_AS(BigInt(10).div_exact(4), std::domain_error);
  CHECK(BigInt(-5).mod_u32(9) == 4);
  CHECK(BigInt(22).mod_u32(9) == 4);
  CHECK(BigInt(8019).valuation(3) == 6);  // 8019 = 3^6 * 11
  CHECK(cohen::binomial(9, 3).valuation(3) == 1);  // C(9,3) = 84
  for (std::uint32_t i = 1; i <= 9; ++i) {
    int vi = 0;
    for (std::uint32_t t = i; t % 3 == 0; t /= 3) ++vi;
    CHECK(cohen::binomial(9, i).valuation(3) == 2 - vi);
  }
}

TEST_CASE("factorial and bits") {
  CHECK(cohen::factorial(0).to_int64() == 1);
  CHECK(cohen::factorial(6).to_int64() == 720);
  CHECK(BigInt(6).magnitude_bits() == std::vector<bool>{true, true, false});
}

TEST_CASE("checked int64 helpers") {
  CHECK(cohen::checked_add(1, 2) == 3);
  CHECK(cohen::checked_mul(-4, 5) == -20);
  CHECK_THROWS_AS(cohen::checked_mul(1LL << 62, 4), cohen::overflow_error);
  CHECK_THROWS_AS(cohen::checked_add(9223372036854775807LL, 1), cohen::overflow_error);
}
