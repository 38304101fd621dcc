#include <compare>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "digitbound/natural.hpp"
#include "test_util.hpp"

using digitbound::Integer;
using digitbound::Natural;
using digitbound::Rational;
using digitbound::floor_log;
using digitbound::integer_root;

TEST_CASE("decimal round trip matches std::to_string on machine words") {
  std::mt19937_64 rng(0x5eed0001);
  for (int i = 0; i < 500; ++i) {
    std::uint64_t v = rng();
    Natural n(v);
    CHECK(n.to_decimal() == std::to_string(v));
    CHECK(Natural(std::to_string(v)) == n);
  }
  CHECK(Natural(0).to_decimal() == "0");
  CHECK(Natural("0") == Natural(0));
}

TEST_CASE("decimal parsing rejects junk") {
  CHECK_THROWS_AS(Natural(""), std::invalid_argument);
  CHECK_THROWS_AS(Natural("12x3"), std::invalid_argument);
  CHECK_THROWS_AS(Natural("-5"), std::invalid_argument);
  CHECK_THROWS_AS(Natural(" 5"), std::invalid_argument);
}

TEST_CASE("word arithmetic agrees with native 128-bit results") {
  std::mt19937_64 rng(0x5eed0002);
  for (int i = 0; i < 500; ++i) {
    std::uint64_t a = rng(), b = rng();
    if (a < b) std::swap(a, b);
    if (b == 0) b = 1;
    unsigned __int128 sum = static_cast<unsigned __int128>(a) + b;
    Natural expected_sum = Natural(static_cast<std::uint64_t>(sum >> 64)).shifted_left(64) +
                           static_cast<std::uint64_t>(sum);
    CHECK(Natural(a) + Natural(b) == expected_sum);
    CHECK(Natural(a) + b == expected_sum);
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    Natural expected = Natural(static_cast<std::uint64_t>(prod >> 64)).shifted_left(64) +
                       static_cast<std::uint64_t>(prod);
    CHECK(Natural(a) * Natural(b) == expected);
    CHECK(Natural(a) - Natural(b) == Natural(a - b));
    CHECK(Natural(a) / Natural(b) == Natural(a / b));
    CHECK(Natural(a) % Natural(b) == Natural(a % b));
  }
}

TEST_CASE("subtraction below zero throws") {
  CHECK_THROWS_AS(Natural(3) - Natural(5), std::domain_error);
  CHECK_THROWS_AS(Natural(0) - 1, std::domain_error);
}

TEST_CASE("division by zero throws") {
  Natural q, r;
  CHECK_THROWS_AS(Natural::divmod(Natural(5), Natural(0), q, r), std::domain_error);
  CHECK_THROWS_AS(Natural(5) / Natural(0), std::domain_error);
}

TEST_CASE("divmod identity on large random operands") {
  std::mt19937_64 rng(0x5eed0003);
  for (int i = 0; i < 200; ++i) {
    Natural a = testutil::random_natural(rng, 700);
    Natural b = testutil::random_natural_exact(rng, 200);
    Natural q, r;
    Natural::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r < b);
  }
}

TEST_CASE("divmod_word identity") {
  std::mt19937_64 rng(0x5eed0004);
  for (int i = 0; i < 200; ++i) {
    Natural a = testutil::random_natural(rng, 300);
    std::uint64_t d = (rng() >> 20) | 1;
    Natural q = a;
    std::uint64_t r = q.divmod_word(d);
    CHECK(q * d + r == a);
    CHECK(r < d);
  }
}

TEST_CASE("div_exact recovers a factor and rejects a non-divisor") {
  std::mt19937_64 rng(0x5eed0005);
  for (int i = 0; i < 100; ++i) {
    Natural a = testutil::random_natural_exact(rng, 400);
    Natural b = testutil::random_natural_exact(rng, 150);
    CHECK(Natural::div_exact(a * b, b) == a);
  }
  CHECK_THROWS_AS(Natural::div_exact(Natural(10), Natural(3)), std::logic_error);
}

TEST_CASE("difference of squares identity on big operands") {
  std::mt19937_64 rng(0x5eed0006);
  for (int i = 0; i < 100; ++i) {
    Natural a = testutil::random_natural_exact(rng, 512);
    Natural b = testutil::random_natural(rng, 500);
    CHECK((a + b) * (a - b) == a * a - b * b);
  }
}

TEST_CASE("pow examples and conventions") {
  CHECK(pow(Natural(2), 10) == 1024);
  CHECK(pow(Natural(10), 3) == 1000);
  std::mt19937_64 rng(0x5eed0007);
  for (int i = 0; i < 20; ++i) {
    CHECK(pow(testutil::random_natural(rng, 100), 0) == 1);
  }
  CHECK(pow(Natural(0), 0) == 1);
  CHECK(pow(Natural(0), 5) == 0);
}

TEST_CASE("pow matches repeated multiplication") {
  std::mt19937_64 rng(0x5eed0008);
  for (int i = 0; i < 50; ++i) {
    Natural a = testutil::random_natural(rng, 40);
    std::uint64_t e = rng() % 20;
    Natural by_mul = 1;
    for (std::uint64_t j = 0; j < e; ++j) by_mul *= a;
    CHECK(pow(a, e) == by_mul);
  }
}

TEST_CASE("integer_root examples") {
  CHECK(integer_root(Natural(10000), 8) == 3);
  CHECK(integer_root(Natural(6560), 8) == 2);
  std::mt19937_64 rng(0x5eed0009);
  for (int i = 0; i < 20; ++i) {
    Natural n = testutil::random_natural(rng, 200);
    CHECK(integer_root(n, 1) == n);
  }
  CHECK_THROWS_AS(integer_root(Natural(5), 0), std::invalid_argument);
}

TEST_CASE("integer_root two-sided consistency on random inputs") {
  std::mt19937_64 rng(0x5eed000a);
  for (int i = 0; i < 500; ++i) {
    Natural n = testutil::random_natural(rng, 1 + rng() % 400);
    std::uint64_t k = 1 + rng() % 40;
    Natural r = integer_root(n, k);
    CHECK(pow(r, k) <= n);
    CHECK(pow(r + 1, k) > n);
  }
  CHECK(integer_root(Natural(0), 3) == 0);
  CHECK(integer_root(Natural(1), 3) == 1);
}

TEST_CASE("gcd agrees with std::gcd on machine words") {
  std::mt19937_64 rng(0x5eed000b);
  for (int i = 0; i < 300; ++i) {
    std::uint64_t a = rng(), b = rng();
    CHECK(gcd(Natural(a), Natural(b)) == std::gcd(a, b));
  }
  CHECK(gcd(Natural(0), Natural(12)) == 12);
  CHECK(gcd(Natural(12), Natural(0)) == 12);
}

TEST_CASE("divides examples and zero rejection") {
  CHECK(divides(Natural(3), Natural(2520)));
  CHECK(divides(Natural(1), Natural(987654321)));
  CHECK_FALSE(divides(Natural(7), Natural(100)));
  CHECK(divides(Natural(5), Natural(0)));
  CHECK_THROWS_AS(divides(Natural(0), Natural(5)), std::invalid_argument);
}

TEST_CASE("bit_length, popcount, and bits_window agree with native bit tricks") {
  std::mt19937_64 rng(0x5eed000c);
  CHECK(Natural(0).bit_length() == 0);
  CHECK(Natural(0).popcount() == 0);
  for (int i = 0; i < 300; ++i) {
    std::uint64_t v = rng() >> (rng() % 64);
    Natural n(v);
    std::uint64_t expect_len = v == 0 ? 0 : 64 - std::countl_zero(v);
    CHECK(n.bit_length() == expect_len);
    CHECK(n.popcount() == static_cast<std::uint64_t>(std::popcount(v)));
    if (v > 0) {
      std::uint64_t pos = rng() % expect_len;
      std::uint64_t width = 1 + rng() % 63;
      std::uint64_t mask = width == 63 ? (1ULL << 63) - 1 : (1ULL << width) - 1;
      CHECK(n.bits_window(pos, width) == ((v >> pos) & mask));
    }
  }
}

TEST_CASE("bits_window spans limb boundaries") {
  Natural n = Natural(0xABCD).shifted_left(120);
  CHECK(n.bits_window(120, 16) == 0xABCD);
  CHECK(n.bits_window(124, 12) == 0xABC);
  CHECK(n.bits_window(0, 63) == 0);
  CHECK_THROWS_AS(n.bits_window(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(n.bits_window(0, 64), std::invalid_argument);
}

TEST_CASE("shifts match multiplication and division by powers of two") {
  std::mt19937_64 rng(0x5eed000d);
  for (int i = 0; i < 200; ++i) {
    Natural a = testutil::random_natural(rng, 300);
    std::uint64_t k = rng() % 130;
    CHECK(a.shifted_left(k) == a * pow(Natural(2), k));
    CHECK(a.shifted_right(k) == a / pow(Natural(2), k));
  }
}

TEST_CASE("fits_u64 and to_u64 boundaries") {
  Natural max64 = Natural("18446744073709551615");
  CHECK(max64.fits_u64());
  CHECK(max64.to_u64() == 0xFFFFFFFFFFFFFFFFULL);
  Natural over = max64 + 1;
  CHECK_FALSE(over.fits_u64());
  CHECK_THROWS_AS(over.to_u64(), std::overflow_error);
}

TEST_CASE("floor_log by exact power comparisons") {
  CHECK(floor_log(2, 1) == 0);
  CHECK(floor_log(2, 1023) == 9);
  CHECK(floor_log(2, 1024) == 10);
  CHECK(floor_log(10, 999) == 2);
  CHECK(floor_log(10, 1000) == 3);
  CHECK(floor_log(3, Natural("7625597484987")) == 27);  // 3^27
  CHECK(floor_log(3, Natural("7625597484986")) == 26);
  CHECK_THROWS_AS(floor_log(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(floor_log(2, 0), std::invalid_argument);
  std::mt19937_64 rng(0x5eed000e);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t base = 2 + rng() % 30;
    Natural n = testutil::random_natural_exact(rng, 1 + rng() % 150);
    std::uint64_t e = floor_log(base, n);
    CHECK(pow(Natural(base), e) <= n);
    CHECK(pow(Natural(base), e + 1) > n);
  }
}

TEST_CASE("Integer holds signed values and converts back when nonnegative") {
  Integer a = -5;
  Integer b = 3;
  CHECK(a + b == -2);
  CHECK(a * b == -15);
  CHECK((a * a).to_natural() == 25);
  CHECK_THROWS_AS(a.to_natural(), std::domain_error);
  CHECK(-a == 5);
  CHECK(Integer(Natural("123456789012345678901234567890")) ==
        Integer(Natural("123456789012345678901234567890")));
}

TEST_CASE("Integer ordering") {
  CHECK(Integer(-7) < Integer(-3));
  CHECK(Integer(-3) < Integer(0));
  CHECK(Integer(0) < Integer(11));
}

TEST_CASE("Rational reduction, ordering, and admits") {
  Rational half(Natural(4), Natural(8));
  CHECK(half.num() == 1);
  CHECK(half.den() == 2);
  CHECK(half < Rational(1));
  CHECK(Rational(3) == Rational(Natural(6), Natural(2)));
  Rational x(Natural(21), Natural(2));  // 10.5
  CHECK(x.admits(Natural(10)));
  CHECK_FALSE(x.admits(Natural(11)));
  CHECK(x.floor() == 10);
  CHECK(Rational(7).floor() == 7);
  CHECK(x.at_least(Natural(10)));
  CHECK_FALSE(x.at_least(Natural(11)));
  CHECK_THROWS_AS(Rational(Natural(1), Natural(0)), std::invalid_argument);
}

TEST_CASE("Rational::from_decimal accepts integers, decimals, fractions") {
  CHECK(Rational::from_decimal("123") == Rational(123));
  CHECK(Rational::from_decimal("1.047") == Rational(Natural(1047), Natural(1000)));
  CHECK(Rational::from_decimal("7/8") == Rational(Natural(7), Natural(8)));
  CHECK(Rational::from_decimal("10.") == Rational(10));
  CHECK_THROWS_AS(Rational::from_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("1/0"), std::invalid_argument);
  CHECK(Rational::from_decimal("1.5").to_string() == "3/2");
  CHECK(Rational::from_decimal("4").to_string() == "4");
}

TEST_CASE("Rational multiplication reduces") {
  Rational a(Natural(2), Natural(3));
  Rational b(Natural(9), Natural(4));
  Rational c = a * b;
  CHECK(c.num() == 3);
  CHECK(c.den() == 2);
}
