#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vasskit/families.hpp"
#include "vasskit/lang.hpp"
#include "vasskit/search.hpp"

using namespace vasskit;
using namespace vasskit::lang;

namespace {

const char* kWeakMult = R"(counters x y
loop
  x -= 1  y += 1
endloop
loop
  x += 3  y -= 2
endloop
)";

std::size_t untested(const CounterProgram& p) {
  const auto& h = std::get<Halt>(p.body.back().command);
  return p.counters.size() - h.tested.size();
}

}  // namespace

TEST_CASE("parse a three line program") {
  auto p = parse("counters x\ninit\nx += 1\nhalt x\n");
  CHECK(p.counters == std::vector<std::string>{"x"});
  REQUIRE(p.body.size() == 3);
  CHECK(std::holds_alternative<Init>(p.body[0].command));
  CHECK(std::get<Update>(p.body[1].command).terms == std::vector<UpdateTerm>{inc("x")});
  CHECK(std::get<Halt>(p.body[2].command).tested == std::vector<std::string>{"x"});
  CHECK(p.is_complete());
}

TEST_CASE("parse weak multiplication into two loops") {
  auto p = parse(kWeakMult);
  REQUIRE(p.body.size() == 2);
  const auto& first = std::get<Loop>(p.body[0].command);
  const auto& second = std::get<Loop>(p.body[1].command);
  CHECK(first.body == Block{update({dec("x"), inc("y")})});
  CHECK(second.body == Block{update({inc("x", 3), dec("y", 2)})});
  CHECK(p == families::gen_weak_mult(3, 2));
  CHECK_FALSE(p.is_complete());
}

TEST_CASE("parse macros, labels, gotos and comments") {
  auto p = parse(R"(counters x y   # two counters
init
for i := 2 downto 0
  if bit(5, i) = 1 then x += 2 ^ i
  if i != 1 then
    y += i * 2 + 1
  endif
endfor
a: goto b or end
b: x -= 1, y -= 1
halt x
)");
  REQUIRE(p.body.size() == 5);
  CHECK(p.body[2].label == "a");
  CHECK(std::get<Goto>(p.body[2].command) == Goto{"b", "end"});
  FlatProgram f = expand(p);
  // 2^2 + 2^0 = 5 added to x; y gets 5 + 1 for i = 2 and i = 0.
  CHECK(pretty_print(f) == R"(counters x y
1: init
2: x += 4
3: y += 5
4: x += 1
5: y += 1
6: goto 7 or end
7: x -= 1  y -= 1
8: halt x
)");
}

TEST_CASE("parse errors carry positions") {
  auto error_line = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.pos().line;
    }
    return -1;
  };
  CHECK(error_line("counters x\ninit\nx += \nhalt\n") == 3);
  CHECK(error_line("counters x\ninit\nz += 1\nhalt\n") == 3);
  CHECK(error_line("counters x\ninit\ngoto 99 or 100\nhalt\n") == 3);
  CHECK(error_line("counters x\ninit\nhalt\nx += 1\n") == 3);
  CHECK(error_line("counters x\ninit\nloop\n  halt\nendloop\nhalt\n") == 4);
  CHECK(error_line("counters x\ninit\na: x += 1\na: x += 1\nhalt\n") == 4);
  CHECK(error_line("counters x\ninit\nx += i\nhalt\n") == 3);
  CHECK(error_line("counters x\ninit\nloop\nx += 1\nhalt\n") > 0);
  CHECK(error_line("counters x\ninit\nfor x := 1 to 2\nendfor\nhalt\n") == 3);
  CHECK(error_line("counters x\ninit\nend: x += 1\nhalt\n") == 3);
  CHECK_THROWS_AS(parse("init\nhalt\n"), ParseError);
}

TEST_CASE("weak(2) expands to the unfolded listing") {
  FlatProgram f = expand(families::gen_weak(2));
  CHECK(pretty_print(f) == R"(counters x y
1: init
2: goto 5 or 3
3: x -= 1  y += 1
4: goto 2
5: goto 8 or 6
6: x += 2  y -= 1
7: goto 5
8: x += 1
9: goto 12 or 10
10: x -= 1  y += 1
11: goto 9
12: goto 15 or 13
13: x += 2  y -= 1
14: goto 12
15: halt
)");
}

TEST_CASE("for and if expansion") {
  auto one = expand(parse("counters x\nfor i := 0 to 0\n  x += 1\nendfor\n"));
  REQUIRE(one.lines.size() == 1);
  CHECK(one.lines[0].delta == Vector{1});
  auto none = expand(parse("counters x\nif bit(6, 0) = 1 then x += 1\n"));
  CHECK(none.lines.empty());
  auto kept = expand(parse("counters x\nif bit(6, 1) = 1 then x += 1\n"));
  CHECK(kept.lines.size() == 1);
  auto empty_range = expand(parse("counters x\nfor i := 3 to 2\n  x += 1\nendfor\n"));
  CHECK(empty_range.lines.empty());
  auto down = expand(parse("counters x\nfor i := 3 downto 1\n  x += i\nendfor\n"));
  REQUIRE(down.lines.size() == 3);
  CHECK(down.lines[0].delta == Vector{3});
  CHECK(down.lines[2].delta == Vector{1});
}

TEST_CASE("expansion errors") {
  CHECK_THROWS_AS(expand(parse("counters x\nfor i := 1 to 100\n  x += 1\nendfor\n"), ExpandOptions{50}), ExpandError);
  CHECK_THROWS_AS(expand(parse("counters x\nx += 0\n")), ExpandError);
  CHECK_THROWS_AS(expand(parse("counters x\nfor i := 0 to 0\n  x += i\nendfor\n")), ExpandError);
  CHECK_THROWS_AS(expand(parse("counters x\nx += 1  x -= 1\n")), ExpandError);
  CHECK_THROWS_AS(expand(parse("counters x\nfor i := 1 to 2\n  a: x += 1\nendfor\n")), ExpandError);
}

TEST_CASE("loops lower to the four line goto pattern") {
  FlatProgram f = expand(parse("counters x\nloop\n  x += 1\nendloop\nx -= 1\n"));
  REQUIRE(f.lines.size() == 4);
  CHECK(f.lines[0].kind == FlatLine::Kind::Goto);
  CHECK(f.lines[0].first == 3);
  CHECK(f.lines[0].second == 1);
  CHECK(f.lines[2].kind == FlatLine::Kind::Goto);
  CHECK(f.lines[2].first == 0);
  CHECK(f.lines[2].second == 0);
  auto loops = find_loops(f);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].header == 0);
  CHECK(loops[0].back == 2);
  CHECK(loops[0].exit == 3);
  CHECK(loops[0].straight_line);
  CHECK_FALSE(loops[0].drained_counter.has_value());
}

TEST_CASE("find_loops on the exponential family") {
  FlatProgram f = expand(families::gen_exp(2));
  auto loops = find_loops(f);
  REQUIRE(loops.size() == 6);
  CHECK(loops[families::kExpPumpLoop].drained_counter == std::nullopt);
  CHECK(loops[1].drained_counter == f.counter_index("x"));
  CHECK(loops[2].drained_counter == f.counter_index("z"));
  FlatProgram h = expand(families::gen_hp(3, 2));
  auto hl = find_loops(h);
  REQUIRE(hl.size() == 3);
  CHECK_FALSE(hl[0].straight_line);
  CHECK(hl[1].straight_line);
}

TEST_CASE("compile weak(2): states, halt completion and the looping cycles") {
  auto p = families::gen_weak(2);
  FlatProgram f = expand(p);
  Vass v = compile(f);
  CHECK(v.dimension() == 2);
  // One state per line plus one chain state per untested counter after the first.
  CHECK(v.states().size() == f.lines.size() + untested(p) - 1);
  CHECK(v.source() == Configuration{v.state_index("L01"), {0, 0}});
  CHECK(v.target().vector == Vector{0, 0});
  CHECK(v.state_name(v.target().state) == "L15+y");
  int drain = 0, refill = 0;
  for (const auto& c : simple_cycles(v)) {
    Vector sum{0, 0};
    for (auto t : c.transitions) {
      sum[0] += v.transitions()[t].delta[0];
      sum[1] += v.transitions()[t].delta[1];
    }
    if (sum == Vector{-1, 1}) ++drain;
    if (sum == Vector{2, -1}) ++refill;
  }
  CHECK(drain == 2);
  CHECK(refill == 2);
}

TEST_CASE("compile a two line program") {
  Vass v = compile_text("counters x\ninit\nhalt x\n");
  CHECK(v.states().size() == 2);
  CHECK(v.transitions().size() == 1);
  auto r = shortest_halting(v, SearchBudget{1});
  REQUIRE(r.verdict == Verdict::Found);
  CHECK(r.run->length() == 1);
}

TEST_CASE("compile: gotos give two zero transitions and fragments an end state") {
  FlatProgram f = expand(parse("counters x\na: x += 1\ngoto a or end\n"));
  Vass v = compile(f);
  CHECK(v.states() == std::vector<std::string>{"L1", "L2", "L3"});
  CHECK(v.target() == Configuration{v.state_index("L3"), {0}});
  CHECK(v.outgoing(v.state_index("L2")).size() == 2);
  CHECK(line_state(f, 0) == "L1");
  CHECK_THROWS(halt_state(f));
}

TEST_CASE("compile: goto end in a complete program leads to a dead end state") {
  FlatProgram f = expand(parse("counters x\ninit\ngoto end or h\nh: halt x\n"));
  Vass v = compile(f);
  REQUIRE(v.states().size() == 4);
  CHECK(v.outgoing(v.state_index("L4")).empty());
  CHECK(v.state_name(v.target().state) == "L3");
}

TEST_CASE("compiled exp(1) is a flat 3-VASS") {
  Vass v = compile(expand(families::gen_exp(1)));
  CHECK(v.dimension() == 3);
  CHECK(is_flat(v).is_flat);
}

TEST_CASE("pretty printing round trips") {
  auto p = parse(kWeakMult);
  CHECK(parse(pretty_print(p)) == p);
  for (auto q : {families::gen_weak(6), families::gen_exp(3), families::gen_2exp(2), families::gen_hp(3, 2),
                 families::gen_np(families::NpInstance::make(3, {1, 2})),
                 families::gen_np(families::NpInstance::make(1, {1}))}) {
    CHECK(parse(pretty_print(q)) == q);
  }
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 300; ++i) {
    oracle::ProgramShape shape;
    shape.with_gotos = i % 2 == 0;
    shape.complete = i % 3 != 0;
    shape.counters = 1 + static_cast<std::size_t>(i % 3);
    auto q = oracle::random_program(rng, shape);
    std::string text = pretty_print(q);
    CAPTURE(text);
    REQUIRE(parse(text) == q);
  }
}

TEST_CASE("flat listings re-parse and re-expand to themselves") {
  for (auto q : {families::gen_weak(2), families::gen_exp(2), families::gen_2exp(1)}) {
    FlatProgram f = expand(q);
    FlatProgram again = expand(parse(pretty_print(f)));
    CHECK(again == f);
    CHECK(pretty_print(again) == pretty_print(f));
  }
  FlatProgram frag = expand(parse("counters x\na: x += 1\ngoto a or end\n"));
  CHECK(expand(parse(pretty_print(frag))) == frag);
}

TEST_CASE("expansion is deterministic") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    oracle::ProgramShape shape;
    shape.with_gotos = true;
    auto q = oracle::random_program(rng, shape);
    REQUIRE(expand(q) == expand(q));
    REQUIRE(compile(expand(q)) == compile(expand(q)));
  }
}

TEST_CASE("compiled VASS and the syntax tree interpreter reach the same line configurations") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    oracle::ProgramShape shape;
    shape.complete = i % 2 == 0;
    shape.counters = 1 + static_cast<std::size_t>(i % 2);
    auto q = oracle::random_program(rng, shape);
    FlatProgram f = expand(q);
    Vass v = compile(f);
    std::vector<long> start(q.counters.size(), 0);
    if (!shape.complete) start.assign(q.counters.size(), 2);
    CAPTURE(pretty_print(q));
    REQUIRE(oracle::interpret(q, start, 6) == oracle::vass_line_reach(v, start, 6));
  }
}

TEST_CASE("families agree with the interpreter") {
  for (long b = 1; b <= 6; ++b) {
    auto q = families::gen_weak(b);
    REQUIRE(oracle::interpret(q, {0, 0}, 12) == oracle::vass_line_reach(compile(expand(q)), {0, 0}, 12));
  }
  auto wm = families::gen_weak_mult(3, 2);
  CHECK(oracle::interpret(wm, {3, 1}, 20) == oracle::vass_line_reach(compile(expand(wm)), {3, 1}, 20));
  auto hp = families::gen_hp(3, 2);
  CHECK(oracle::interpret(hp, {2, 0, 2}, 20) == oracle::vass_line_reach(compile(expand(hp)), {2, 0, 2}, 20));
}

TEST_CASE("loop only programs and goto DAGs compile to flat VASS") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    oracle::ProgramShape shape;
    shape.max_depth = 1;
    shape.with_for = false;
    shape.with_gotos = i % 2 == 1;
    auto q = oracle::random_program(rng, shape);
    CAPTURE(pretty_print(q));
    REQUIRE(is_flat(compile(expand(q))).is_flat);
  }
}

TEST_CASE("structural sizes") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    oracle::ProgramShape shape;
    auto q = oracle::random_program(rng, shape);
    FlatProgram f = expand(q);
    Vass v = compile(f);
    REQUIRE(v.dimension() == q.counters.size());
    std::size_t extra = untested(q) > 0 ? untested(q) - 1 : 0;
    REQUIRE(v.states().size() == f.lines.size() + extra);
    REQUIRE(compile(expand(parse(pretty_print(q)))) == v);
  }
}
