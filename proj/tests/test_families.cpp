#include <doctest.h>

#include <random>

#include "vasskit/families.hpp"
#include "vasskit/lang.hpp"
#include "vasskit/search.hpp"

using namespace vasskit;
using namespace vasskit::families;

namespace {

Vass build(const lang::CounterProgram& p) { return lang::compile(lang::expand(p)); }

bool brute(long s0, const std::vector<long>& s) {
  for (unsigned mask = 0; mask < (1u << s.size()); ++mask) {
    long sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask & (1u << i)) sum += s[i];
    }
    if (sum == s0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("generator preconditions") {
  CHECK_THROWS_AS(gen_weak_mult(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(gen_weak_mult(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_weak(0), std::invalid_argument);
  CHECK_THROWS_AS(gen_exp(0), std::invalid_argument);
  CHECK_THROWS_AS(gen_exp_fixed(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_hp(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(gen_hp(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(gen_2exp(0), std::invalid_argument);
  CHECK_THROWS_AS(gen_2exp_fixed(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(NpInstance::make(0, {1}), std::invalid_argument);
  CHECK_THROWS_AS(NpInstance::make(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(NpInstance::make(1, {0}), std::invalid_argument);
}

TEST_CASE("NP instance parameters") {
  auto a = NpInstance::make(3, {1, 2});
  CHECK(a.n == 3);
  CHECK(a.big_n == 3);
  CHECK(a.m == 1);
  CHECK(a.k() == 2);
  auto b = NpInstance::make(13, {1});
  CHECK(b.n == 6);
  CHECK(b.big_n == 60);
  CHECK(b.m == 5);
  CHECK(b.bits.value() == 60);
}

TEST_CASE("subset sum brute force") {
  CHECK(subset_sum_brute(3, {1, 2}));
  CHECK_FALSE(subset_sum_brute(4, {1, 2}));
  CHECK(subset_sum_brute(0, {5}));
  CHECK_FALSE(subset_sum_brute(5, {}));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> value(1, 9), size(0, 6), target(0, 30);
  for (int i = 0; i < 500; ++i) {
    std::vector<long> s(static_cast<std::size_t>(size(rng)));
    for (auto& x : s) x = value(rng);
    long s0 = target(rng);
    std::vector<BigInt> big(s.begin(), s.end());
    REQUIRE(subset_sum_brute(s0, big) == brute(s0, s));
  }
}

TEST_CASE("the NP program is a flat 7-VASS") {
  auto inst = NpInstance::make(3, {1, 2});
  auto p = gen_np(inst);
  CHECK(p.counters == np_counters());
  CHECK(p.is_complete());
  Vass v = build(p);
  CHECK(v.dimension() == 7);
  CHECK(is_flat(v).is_flat);
  auto init = gen_init(inst, true);
  CHECK(init.is_complete());
  CHECK(is_flat(build(init)).is_flat);
  CHECK_FALSE(gen_init(inst, false).is_complete());
}

TEST_CASE("flatness of the families") {
  for (unsigned n = 1; n <= 4; ++n) CHECK(is_flat(build(gen_exp(n))).is_flat);
  for (long b = 1; b <= 9; ++b) CHECK(is_flat(build(gen_weak(b))).is_flat);
  CHECK(is_flat(build(gen_weak_mult(5, 3))).is_flat);
  CHECK_FALSE(is_flat(build(gen_hp(3, 2))).is_flat);
  CHECK_FALSE(is_flat(build(gen_2exp(1))).is_flat);
}

TEST_CASE("exponential family layout") {
  for (unsigned n = 1; n <= 6; ++n) {
    auto f = lang::expand(gen_exp(n));
    CHECK(f.counters == std::vector<std::string>{"x", "y", "z"});
    // init, pump line, halt, plus a loop (3 lines + body) for the pump, 2n
    // multiplication loops and the final drain.
    CHECK(f.lines.size() == 6 * n + 9);
    CHECK(lang::find_loops(f).size() == 2 * n + 2);
  }
}

TEST_CASE("doubly exponential metadata") {
  auto one = family_2exp_meta(1);
  CHECK(one.n_can == 16);
  CHECK(one.m == 16);
  auto two = family_2exp_meta(2);
  CHECK(two.n_can == BigInt(17 * 17) * 65536);
  CHECK(two.m == 65536);
  for (unsigned k = 1; k <= 6; ++k) {
    auto meta = family_2exp_meta(k);
    CHECK(meta.n_can % meta.m == 0);
    CHECK(meta.m == vasskit::pow(4, k * (1ul << k)));
  }
}

TEST_CASE("fixed pump doubly exponential program halts on a multiple of M") {
  Vass hit = build(gen_2exp_fixed(1, 16));
  SearchBudget b;
  b.counter_bound = 64;
  CHECK(shortest_halting(hit, b).verdict == Verdict::Found);
  Vass miss = build(gen_2exp_fixed(1, 8));
  b.counter_bound = 32;
  CHECK(shortest_halting(miss, b).verdict == Verdict::ExhaustedWithinBound);
}

TEST_CASE("generated sizes grow polynomially") {
  BigInt prev = 0;
  for (unsigned n = 1; n <= 6; ++n) {
    BigInt s = vass_size(build(gen_exp(n)), Encoding::Unary);
    CHECK(s > prev);
    CHECK(s <= vass_size(build(gen_exp(1)), Encoding::Unary) * n * n);
    prev = s;
  }
  BigInt first = vass_size(build(gen_2exp(1)), Encoding::Binary);
  for (unsigned k = 1; k <= 5; ++k) {
    CHECK(vass_size(build(gen_2exp(k)), Encoding::Binary) <= first * k * k * k);
  }
}

TEST_CASE("generated programs round trip through the printer") {
  for (const auto& p : {gen_exp(3), gen_2exp(2), gen_np(NpInstance::make(5, {2, 3, 4})), gen_hp(5, 3), gen_weak(11)}) {
    CHECK(lang::parse(lang::pretty_print(p)) == p);
  }
}
