#include "vasskit/families.hpp"

#include <stdexcept>

namespace vasskit::families {

using namespace vasskit::lang;

namespace {

Expr lit(const BigInt& x) { return Expr(x); }
Expr var(const char* name) { return Expr::var(name); }

Block weak_mult_loops(const Expr& c, const Expr& d) {
  return {loop({update({dec("x"), inc("y")})}), loop({update({inc("x", c), dec("y", d)})})};
}

void append(Block& out, Block more) {
  for (auto& s : more) out.push_back(std::move(s));
}

// For i := n downto 1, multiply x by (i+1)/i through z; then drain x against y.
Block exponential_check(unsigned n) {
  Block out;
  out.push_back(for_("i", lit(n), Direction::Down, 1,
                     {loop({update({dec("x"), inc("z")})}),
                      loop({update({inc("x", var("i") + 1), dec("z", var("i"))})})}));
  out.push_back(loop({update({dec("x", lit(n + 1)), dec("y")})}));
  return out;
}

}  // namespace

CounterProgram gen_weak_mult(const BigInt& c, const BigInt& d) {
  if (d < 1 || c <= d) throw std::invalid_argument("weak multiplication needs c > d >= 1");
  return CounterProgram{{"x", "y"}, weak_mult_loops(lit(c), lit(d))};
}

CounterProgram gen_weak(const BigInt& b) {
  if (b < 1) throw std::invalid_argument("weak(b) needs b >= 1");
  const auto m = static_cast<long>(bit_length(b) - 1);
  Block body = weak_mult_loops(2, 1);
  body.push_back(if_(eq(Expr::bit(lit(b), var("i")), 1), {update({inc("x")})}));
  return CounterProgram{{"x", "y"}, {init(), for_("i", m, Direction::Down, 0, std::move(body)), halt({})}};
}

CounterProgram gen_exp(unsigned n) {
  if (n == 0) throw std::invalid_argument("gen_exp needs n >= 1");
  Block body{init(), update({inc("x"), inc("y")}), loop({update({inc("x"), inc("y")})})};
  append(body, exponential_check(n));
  body.push_back(halt({"y"}));
  return CounterProgram{{"x", "y", "z"}, std::move(body)};
}

CounterProgram gen_exp_fixed(unsigned n, const BigInt& x0) {
  if (n == 0) throw std::invalid_argument("gen_exp_fixed needs n >= 1");
  if (x0 < 1) throw std::invalid_argument("gen_exp_fixed needs x0 >= 1");
  Block body{init(), update({inc("x", lit(x0)), inc("y", lit(x0))})};
  append(body, exponential_check(n));
  body.push_back(halt({"y"}));
  return CounterProgram{{"x", "y", "z"}, std::move(body)};
}

// ---------------------------------------------------------------------------
// NP reduction

NpInstance NpInstance::make(BigInt s0, std::vector<BigInt> s) {
  if (s0 < 1) throw std::invalid_argument("s0 must be positive");
  if (s.empty()) throw std::invalid_argument("the set S must be nonempty");
  for (const auto& x : s) {
    if (x < 1) throw std::invalid_argument("elements of S must be positive");
  }
  NpInstance inst;
  inst.s0 = std::move(s0);
  inst.s = std::move(s);
  std::vector<BigInt> all{inst.s0};
  all.insert(all.end(), inst.s.begin(), inst.s.end());
  inst.n = static_cast<unsigned>(min_n_for(all));
  inst.big_n = compute_N(inst.n);
  inst.bits = bits_of(inst.big_n);
  inst.m = inst.bits.size() - 1;
  return inst;
}

const std::vector<std::string>& np_counters() {
  static const std::vector<std::string> c = {"x", "x'", "y", "z", "e", "f", "u"};
  return c;
}

namespace {

Block init_block(const NpInstance& inst, bool with_halt) {
  const BigInt k1 = BigInt(static_cast<unsigned long>(inst.k())) + 1;
  const auto m = static_cast<long>(inst.m);
  Block body{init(), update({inc("x"), inc("y"), inc("e"), inc("f", lit(k1))})};
  body.push_back(for_(
      "i", m - 1, Direction::Down, 0,
      {loop({update({dec("x"), inc("x'")}), update({dec("y"), dec("e"), dec("f", lit(k1))})}),
       loop({update({inc("x", 2), dec("x'")}), update({inc("y", 2), inc("e", 2), inc("f", lit(2 * k1))})}),
       if_(eq(Expr::bit(lit(inst.big_n), var("i")), 1),
           {update({inc("x"), inc("y"), inc("e"), inc("f", lit(k1))})})}));
  append(body, exponential_check(inst.n));
  if (with_halt) body.push_back(halt({"x'", "y"}));
  return body;
}

// The counter v of the component is x, v' is x', and e' is z.
Block component(const NpInstance& inst, const BigInt& a, bool p, bool plus, bool drop_low_bits) {
  const auto m = static_cast<long>(inst.m);
  auto u_update = [&] { return update({plus ? inc("u") : dec("u")}); };
  Block first_loop{update({dec("x"), inc("x'")}),
                   if_(eq(Expr::bit(lit(inst.big_n), var("j")), 1), {update({dec("e"), inc("z"), dec("f")})})};
  if (p && !drop_low_bits) first_loop.push_back(if_(eq(Expr::bit(lit(a), var("j")), 1), {u_update()}));
  Block top_loop{update({dec("x")}), update({dec("e"), inc("z"), dec("f")})};
  if (p) top_loop.push_back(if_(eq(Expr::bit(lit(a), lit(m)), 1), {u_update()}));
  return {update({inc("x")}),
          for_("j", 0, Direction::Up, m - 1,
               {loop(std::move(first_loop)), loop({update({inc("x", 2), dec("x'")})})}),
          loop(std::move(top_loop)), loop({update({inc("e"), dec("z")})})};
}

Block labeled_block(std::string label, Block b) {
  b.front() = labeled(std::move(label), std::move(b.front()));
  return b;
}

}  // namespace

CounterProgram gen_init(const NpInstance& inst, bool with_halt) {
  return CounterProgram{{"x", "x'", "y", "z", "e", "f"}, init_block(inst, with_halt)};
}

CounterProgram gen_np(const NpInstance& inst, NpMutation mutation) {
  if (inst.s0 >= vasskit::pow(2, inst.m + 1)) throw std::invalid_argument("s0 does not fit in the bits of N(n)");
  Block body = init_block(inst, false);
  append(body, labeled_block("r0", component(inst, inst.s0, true, true, mutation == NpMutation::DropTargetLowBits)));
  const std::size_t k = inst.k();
  auto f_label = [](std::size_t i) { return "f" + std::to_string(i); };
  auto t_label = [](std::size_t i) { return "t" + std::to_string(i); };
  body.push_back(goto_(f_label(1), t_label(1)));
  for (std::size_t i = 1; i <= k; ++i) {
    const BigInt& s = inst.s[i - 1];
    append(body, labeled_block(f_label(i), component(inst, s, false, false, false)));
    body.push_back(i < k ? goto_(f_label(i + 1), t_label(i + 1)) : goto_("h", "h"));
    append(body, labeled_block(t_label(i), component(inst, s, true, false, false)));
    if (i < k) body.push_back(goto_(f_label(i + 1), t_label(i + 1)));
  }
  std::vector<std::string> tested{"x", "x'", "y", "u", "f"};
  if (mutation == NpMutation::ShortHalt) tested = {"y", "u", "f"};
  body.push_back(labeled("h", halt(tested)));
  return CounterProgram{np_counters(), std::move(body)};
}

ReplaySchedule np_schedule(const FlatProgram& p, const std::vector<bool>& chosen) {
  ReplaySchedule s;
  for (std::size_t i = 1; i <= chosen.size(); ++i) {
    auto f = p.labels.find("f" + std::to_string(i));
    auto t = p.labels.find("t" + std::to_string(i));
    if (f == p.labels.end() || t == p.labels.end()) throw std::invalid_argument("program lacks component labels");
    for (std::size_t line = 0; line < p.lines.size(); ++line) {
      const auto& l = p.lines[line];
      if (l.kind == FlatLine::Kind::Goto && l.first == f->second && l.second == t->second) {
        s.branch_targets[line] = chosen[i - 1] ? t->second : f->second;
      }
    }
  }
  return s;
}

bool subset_sum_brute(const BigInt& s0, const std::vector<BigInt>& s) {
  if (s.size() > 25) throw std::invalid_argument("subset_sum_brute handles at most 25 elements");
  const std::uint32_t count = 1u << s.size();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    BigInt sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask & (1u << i)) sum += s[i];
    }
    if (sum == s0) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// doubly exponential family

CounterProgram gen_hp(const BigInt& c, const BigInt& d) {
  if (d < 1 || c <= d) throw std::invalid_argument("HP(c, d) needs c > d >= 1");
  if (gcd(c, d) != 1) throw std::invalid_argument("HP(c, d) needs an irreducible fraction c/d");
  Block outer = weak_mult_loops(lit(c), lit(d));
  outer.push_back(update({dec("z")}));
  return CounterProgram{{"x", "y", "z"}, {loop(std::move(outer))}};
}

Family2ExpMeta family_2exp_meta(unsigned k) {
  if (k == 0) throw std::invalid_argument("the doubly exponential family needs k >= 1");
  Family2ExpMeta meta;
  meta.k = k;
  meta.fractions = fraction_sequence(k);
  meta.n_can = 1;
  for (unsigned i = 1; i <= k; ++i) meta.n_can *= vasskit::pow(meta.fractions.f_list[i - 1].den(), 1ul << i);
  meta.m = vasskit::pow(meta.fractions.f_list[k - 1].den(), 1ul << k);
  return meta;
}

namespace {

Block two_exp_tail(unsigned k) {
  const FractionSequence fs = fraction_sequence(k);
  Block hp{loop({update({dec("x"), inc("y")})})};
  // One guarded copy of the second loop per value of i.
  for (unsigned j = 1; j <= k; ++j) {
    const Fraction& fj = fs.f_list[j - 1];
    hp.push_back(if_(eq(var("i"), static_cast<long>(j)), {loop({update({inc("x", lit(fj.num())), dec("y", lit(fj.den()))})})}));
  }
  hp.push_back(update({dec("z")}));
  Block out;
  out.push_back(for_("i", static_cast<long>(k), Direction::Down, 1,
                     {update({inc("z", power(2, var("i")))}), loop(std::move(hp))}));
  out.push_back(loop({update({dec("t", lit(fs.f.den())), dec("x", lit(fs.f.num()))})}));
  out.push_back(halt({"t"}));
  return out;
}

}  // namespace

CounterProgram gen_2exp(unsigned k) {
  if (k == 0) throw std::invalid_argument("gen_2exp needs k >= 1");
  Block body{init(), update({inc("t"), inc("x")}), loop({update({inc("t"), inc("x")})})};
  append(body, two_exp_tail(k));
  return CounterProgram{{"t", "x", "y", "z"}, std::move(body)};
}

CounterProgram gen_2exp_fixed(unsigned k, const BigInt& pump) {
  if (k == 0) throw std::invalid_argument("gen_2exp_fixed needs k >= 1");
  if (pump < 1) throw std::invalid_argument("gen_2exp_fixed needs a positive pump value");
  Block body{init(), update({inc("t", lit(pump)), inc("x", lit(pump))})};
  append(body, two_exp_tail(k));
  return CounterProgram{{"t", "x", "y", "z"}, std::move(body)};
}

}  // namespace vasskit::families
