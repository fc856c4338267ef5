#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vasskit/arith.hpp"
#include "vasskit/fraction.hpp"
#include "vasskit/fractions.hpp"

using namespace vasskit;

TEST_CASE("decimal parsing round trips") {
  for (const char* s : {"0", "-1", "123456789012345678901234567890", "-98765432109876543210"}) {
    CHECK(to_string(parse_bigint(s)) == s);
  }
  CHECK_THROWS_AS(parse_bigint("12a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bigint(""), std::invalid_argument);
}

TEST_CASE("lcm_range") {
  CHECK(lcm_range(2, 2) == 2);
  CHECK(lcm_range(2, 6) == 60);
  CHECK(lcm_range(2, 7) == 420);
  CHECK_THROWS_AS(lcm_range(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(lcm_range(0, 4), std::invalid_argument);
}

TEST_CASE("lcm times gcd equals the product") {
  for (unsigned long a = 1; a <= 200; ++a) {
    for (unsigned long b = 1; b <= 200; ++b) REQUIRE(lcm(a, b) * gcd(a, b) == BigInt(a) * b);
  }
}

TEST_CASE("compute_N small values") {
  CHECK(compute_N(1) == 1);
  CHECK(compute_N(2) == 2);
  CHECK(compute_N(3) == 3);
  CHECK(compute_N(4) == 12);
  CHECK(compute_N(5) == 10);
  CHECK_THROWS_AS(compute_N(0), std::invalid_argument);
}

TEST_CASE("compute_N agrees with the prime power construction") {
  for (std::uint64_t n = 1; n <= 100; ++n) REQUIRE(compute_N(n) == oracle::n_from_prime_powers(n));
}

TEST_CASE("compute_N times n+1 is divisible by 2..n+1") {
  for (std::uint64_t n = 1; n <= 100; ++n) {
    BigInt x = compute_N(n) * static_cast<unsigned long>(n + 1);
    for (unsigned long i = 2; i <= n + 1; ++i) REQUIRE(x % i == 0);
  }
}

TEST_CASE("compute_N is at most n factorial") {
  for (unsigned n = 1; n <= 20; ++n) CHECK(compute_N(n) <= oracle::factorial(n));
}

TEST_CASE("min_n_for") {
  auto m = [](std::vector<BigInt> v) { return min_n_for(v); };
  CHECK(m({1}) == 1);
  CHECK(m({3}) == 3);
  CHECK(m({12}) == 4);
  CHECK(m({2, 12, 5}) == 4);
  CHECK(m({13}) == 6);
  CHECK_THROWS_AS(m({}), std::invalid_argument);
  CHECK_THROWS_AS(m({0}), std::invalid_argument);
}

TEST_CASE("bits_of") {
  CHECK(bits_of(1).bits == std::vector<std::uint8_t>{1});
  CHECK(bits_of(6).bits == std::vector<std::uint8_t>{1, 1, 0});
  CHECK(bits_of(2, 3).bits == std::vector<std::uint8_t>{0, 1, 0});
  CHECK(bits_of(0, 1).bits == std::vector<std::uint8_t>{0});
  CHECK_THROWS_AS(bits_of(0), std::invalid_argument);
  CHECK_THROWS_AS(bits_of(8, 3), std::invalid_argument);
  CHECK(bits_of(6).weight(0) == false);
  CHECK(bits_of(6).weight(2) == true);
  for (unsigned long x = 1; x <= 4096; ++x) {
    auto b = bits_of(x);
    REQUIRE(b.value() == x);
    REQUIRE(b.bits.front() == 1);
  }
}

TEST_CASE("bit_length") {
  CHECK(bit_length(1) == 1);
  CHECK(bit_length(255) == 8);
  CHECK(bit_length(256) == 9);
}

TEST_CASE("fractions are stored reduced") {
  Fraction f(6, 8);
  CHECK(f.num() == 3);
  CHECK(f.den() == 4);
  CHECK_THROWS_AS(Fraction(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Fraction(-1, 2), std::invalid_argument);
  CHECK(Fraction::parse("23409/16384") == Fraction(23409, 16384));
  CHECK(Fraction(23409, 16384).str() == "23409/16384");
  CHECK(Fraction(5, 4).description_size() == 5);
  CHECK(Fraction(4, 5).description_size() == 5);
  CHECK(Fraction(1, 2) < Fraction(2, 3));
}

TEST_CASE("fraction products re-reduce against unreduced products") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(1, 500);
  for (int i = 0; i < 2000; ++i) {
    long a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
    Fraction p = Fraction(a, b) * Fraction(c, d);
    REQUIRE(gcd(p.num(), p.den()) == 1);
    REQUIRE(p.num() * (BigInt(b) * d) == p.den() * (BigInt(a) * c));
    Fraction q = Fraction(a, b) / Fraction(c, d);
    REQUIRE(q.num() * (BigInt(b) * c) == q.den() * (BigInt(a) * d));
    unsigned long e = static_cast<unsigned long>(i % 6);
    Fraction r = Fraction(a, b).pow(e);
    REQUIRE(gcd(r.num(), r.den()) == 1);
    REQUIRE(r.num() * vasskit::pow(b, e) == r.den() * vasskit::pow(a, e));
  }
}

TEST_CASE("fraction sequence, k = 1 and k = 2") {
  auto one = fraction_sequence(1);
  CHECK(one.r == std::vector<Fraction>{Fraction(5, 4)});
  CHECK(one.f_list == std::vector<Fraction>{Fraction(5, 4)});
  CHECK(one.f == Fraction(25, 16));

  auto two = fraction_sequence(2);
  CHECK(two.r == std::vector<Fraction>{Fraction(9, 8), Fraction(17, 16)});
  CHECK(two.f_list == std::vector<Fraction>{Fraction(18, 17), Fraction(17, 16)});
  CHECK(two.f == Fraction(23409, 16384));
  CHECK(two.f_list[0].pow(2) * two.f_list[1].pow(4) == two.f);
  CHECK_THROWS_AS(fraction_sequence(0), std::invalid_argument);
}

TEST_CASE("fraction sequence properties up to k = 16") {
  for (unsigned k = 1; k <= 16; ++k) {
    auto s = fraction_sequence(k);
    auto c = check_fraction_sequence(s);
    CAPTURE(k);
    CHECK(c.increasing);
    CHECK(c.last_is_one_plus_quarter_power);
    CHECK(c.product_identity);
    CHECK(c.member_size_bound);
    CHECK(c.product_size_bound);
    // Independent check of the last member and the first member's lower bound.
    CHECK(s.f_list.back() == Fraction(vasskit::pow(4, k) + 1, vasskit::pow(4, k)));
    CHECK(s.f_list.front() > Fraction(1));
  }
}

TEST_CASE("a broken sequence is caught") {
  auto s = fraction_sequence(3);
  s.f_list[1] = s.f_list[1] * Fraction(1001, 1000);
  CHECK_FALSE(check_fraction_sequence(s).product_identity);
  auto t = fraction_sequence(3);
  std::swap(t.f_list[0], t.f_list[1]);
  CHECK_FALSE(check_fraction_sequence(t).increasing);
}
