#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vasskit/families.hpp"
#include "vasskit/lang.hpp"
#include "vasskit/search.hpp"

using namespace vasskit;

namespace {

SearchBudget bounded(long b) {
  SearchBudget s;
  s.counter_bound = b;
  return s;
}

// x values at the halt line, from the syntax tree interpreter.
std::set<BigInt> interpreted_finals(const lang::CounterProgram& p, long bound) {
  auto flat = lang::expand(p);
  std::set<BigInt> out;
  for (const auto& [line, w] : oracle::interpret(p, std::vector<long>(p.counters.size(), 0), bound)) {
    if (line + 1 == flat.lines.size()) out.insert(w[0]);
  }
  return out;
}

}  // namespace

TEST_CASE("source equal to target gives the empty run") {
  Vass v(1, {"q"}, {{"q", {1}, "q"}}, {"q", {2}}, {"q", {2}});
  auto r = shortest_halting(v, bounded(5));
  REQUIRE(r.verdict == Verdict::Found);
  CHECK(r.run->length() == 0);
  CHECK(validate_run(v, *r.run).halting);
}

TEST_CASE("unreachable targets are exhausted, never found") {
  Vass v(1, {"p", "q"}, {{"p", {2}, "p"}, {"p", {0}, "q"}}, {"p", {0}}, {"q", {3}});
  auto r = shortest_halting(v, bounded(20));
  CHECK(r.verdict == Verdict::ExhaustedWithinBound);
  CHECK_FALSE(r.run.has_value());
  CHECK(r.stats.pruned > 0);
}

TEST_CASE("the configuration budget is reported") {
  Vass v(1, {"p", "q"}, {{"p", {1}, "p"}, {"p", {0}, "q"}}, {"p", {0}}, {"q", {500}});
  SearchBudget b = bounded(1000);
  b.max_configs = 50;
  CHECK(shortest_halting(v, b).verdict == Verdict::BudgetExceeded);
  CHECK_THROWS_AS(observe(v, b, {}), BudgetExceeded);
}

TEST_CASE("fixed pump exponential programs") {
  Vass unreachable = lang::compile(lang::expand(families::gen_exp_fixed(2, 3)));
  auto r = shortest_halting(unreachable, bounded(20));
  CHECK(r.verdict == Verdict::ExhaustedWithinBound);

  lang::FlatProgram p = lang::expand(families::gen_exp_fixed(2, 2));
  Vass v = lang::compile(p);
  auto found = shortest_halting(v, bounded(20));
  REQUIRE(found.verdict == Verdict::Found);
  CHECK(validate_run(v, *found.run).halting);
  auto canonical = replay_canonical(p, v);
  REQUIRE(canonical.halting);
  CHECK(found.run->length() == canonical.run.length());
  CHECK(found.run->length() == oracle::iddfs_shortest(v, 20, 60).value());
}

TEST_CASE("final values of weak(b) match the interpreter") {
  for (long b = 1; b <= 10; ++b) {
    auto p = families::gen_weak(b);
    Vass v = lang::compile(lang::expand(p));
    auto finals = final_values(v, 0, bounded(2 * b));
    CAPTURE(b);
    CHECK(*finals.rbegin() == b);
    if (b <= 6) CHECK(finals == interpreted_finals(p, 2 * b));
  }
  Vass one = lang::compile(lang::expand(families::gen_weak(1)));
  CHECK(final_values(one, 0, bounded(2)) == std::set<BigInt>{1});
}

TEST_CASE("halting run counts") {
  auto count = [](unsigned n, long x0) {
    Vass v = lang::compile(lang::expand(families::gen_exp_fixed(n, x0)));
    return count_halting_runs(v, bounded((n + 2) * x0), 10);
  };
  auto one = count(1, 1);
  CHECK(one.count == 1);
  CHECK_FALSE(one.cyclic);
  CHECK(count(2, 3).count == 0);
  CHECK(count(2, 2).count == 1);
}

TEST_CASE("search agrees with iterative deepening on random VASS") {
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 400; ++i) {
    Vass v = oracle::random_vass(rng);
    auto r = shortest_halting(v, bounded(4));
    auto expected = oracle::iddfs_shortest(v, 4, 12);
    if (r.verdict == Verdict::Found) {
      REQUIRE(validate_run(v, *r.run).halting);
      REQUIRE(r.run->length() <= 12);
      REQUIRE(expected.has_value());
      REQUIRE(r.run->length() == *expected);
    } else {
      REQUIRE(r.verdict == Verdict::ExhaustedWithinBound);
      REQUIRE_FALSE(expected.has_value());
    }
  }
}

TEST_CASE("run counts agree with path enumeration on random VASS") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    Vass v = oracle::random_vass(rng);
    SearchBudget b = bounded(3);
    b.max_depth = 7;
    auto c = count_halting_runs(v, b, 100000);
    if (!c.cyclic) {
      REQUIRE(c.count == oracle::count_paths(v, 3, v.states().size() * 16, 100000));
    } else {
      REQUIRE(c.count == oracle::count_paths(v, 3, 7, 100000));
    }
  }
}

TEST_CASE("search is deterministic") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    Vass v = oracle::random_vass(rng);
    auto a = shortest_halting(v, bounded(4));
    auto b = shortest_halting(v, bounded(4));
    REQUIRE(a.verdict == b.verdict);
    REQUIRE(a.run == b.run);
    REQUIRE(a.stats == b.stats);
  }
}

TEST_CASE("probes record the counter value when a transition is taken") {
  auto p = families::gen_weak_mult(3, 2);
  lang::FlatProgram f = lang::expand(p);
  Vass v = lang::compile(f);
  auto loops = lang::find_loops(f);
  REQUIRE(loops.size() == 2);
  std::size_t exit_transition = v.transitions().size();
  for (std::size_t t = 0; t < v.transitions().size(); ++t) {
    const auto& tr = v.transitions()[t];
    if (v.state_name(tr.from) == lang::line_state(f, loops[0].header) &&
        v.state_name(tr.to) == lang::line_state(f, loops[0].exit)) {
      exit_transition = t;
    }
  }
  REQUIRE(exit_transition < v.transitions().size());
  ExploreOptions options;
  options.start = Configuration{v.source().state, {2, 0}};
  options.observe_state = v.target().state;
  options.probes = {{exit_transition, 0}};
  auto obs = observe(v, bounded(6), options);
  bool equality = false;
  for (const auto& c : obs.configurations) {
    REQUIRE(c.probes[0].has_value());
    if (c.vector == Vector{3, 0}) {
      equality = true;
      CHECK(*c.probes[0] == 0);
    }
    CHECK(c.vector[0] + c.vector[1] <= 3);
  }
  CHECK(equality);
}
