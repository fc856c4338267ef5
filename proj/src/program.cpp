#include "vasskit/program.hpp"

#include <algorithm>

namespace vasskit::lang {

struct Expr::Node {
  Op op;
  BigInt value;
  std::string name;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
};

Expr::Expr(BigInt value) : node_(std::make_shared<const Node>(Node{Op::Literal, std::move(value), {}, {}, {}})) {}

Expr Expr::var(std::string name) {
  return Expr(std::make_shared<const Node>(Node{Op::Var, 0, std::move(name), {}, {}}));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{op, 0, {}, std::move(lhs), std::move(rhs)}));
}

Expr::Op Expr::op() const { return node_->op; }
const BigInt& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }

BigInt Expr::eval(const Env& env) const {
  switch (node_->op) {
    case Op::Literal:
      return node_->value;
    case Op::Var: {
      auto it = env.find(node_->name);
      if (it == env.end()) throw ExpandError("meta-variable '" + node_->name + "' is not bound");
      return it->second;
    }
    case Op::Add:
      return lhs().eval(env) + rhs().eval(env);
    case Op::Sub:
      return lhs().eval(env) - rhs().eval(env);
    case Op::Mul:
      return lhs().eval(env) * rhs().eval(env);
    case Op::Pow: {
      BigInt base = lhs().eval(env);
      BigInt e = rhs().eval(env);
      if (e < 0 || e > 1'000'000) throw ExpandError("exponent out of range: " + to_string(e));
      return vasskit::pow(base, e.get_ui());
    }
    case Op::Bit: {
      BigInt v = lhs().eval(env);
      BigInt i = rhs().eval(env);
      if (v < 0 || i < 0) throw ExpandError("bit() needs nonnegative arguments");
      if (!i.fits_ulong_p()) return 0;
      return mpz_tstbit(v.get_mpz_t(), i.get_ui()) ? 1 : 0;
    }
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Expr::Op::Literal:
      return a.value() == b.value();
    case Expr::Op::Var:
      return a.name() == b.name();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Expr operator+(Expr a, Expr b) { return Expr::binary(Expr::Op::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Expr::Op::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Expr::Op::Mul, std::move(a), std::move(b)); }
Expr power(Expr a, Expr b) { return Expr::binary(Expr::Op::Pow, std::move(a), std::move(b)); }

bool Condition::eval(const Env& env) const {
  int c = cmp(lhs.eval(env), rhs.eval(env));
  switch (op) {
    case CmpOp::Eq: return c == 0;
    case CmpOp::Ne: return c != 0;
    case CmpOp::Lt: return c < 0;
    case CmpOp::Le: return c <= 0;
    case CmpOp::Gt: return c > 0;
    case CmpOp::Ge: return c >= 0;
  }
  return false;
}

bool CounterProgram::is_complete() const {
  return !body.empty() && std::holds_alternative<Init>(body.front().command) &&
         std::holds_alternative<Halt>(body.back().command);
}

bool FlatProgram::is_complete() const {
  return !lines.empty() && lines.front().kind == FlatLine::Kind::Init && lines.back().kind == FlatLine::Kind::Halt;
}

std::size_t FlatProgram::counter_index(const std::string& name) const {
  auto it = std::find(counters.begin(), counters.end(), name);
  if (it == counters.end()) throw std::out_of_range("unknown counter '" + name + "'");
  return static_cast<std::size_t>(it - counters.begin());
}

std::vector<LoopShape> find_loops(const FlatProgram& p) {
  using Kind = FlatLine::Kind;
  const auto& ls = p.lines;
  std::vector<LoopShape> loops;
  for (std::size_t h = 0; h < ls.size(); ++h) {
    const auto& line = ls[h];
    if (line.kind != Kind::Goto || line.second != h + 1 || line.first <= h + 1) continue;
    std::size_t back = line.first - 1;
    if (back >= ls.size() || ls[back].kind != Kind::Goto || ls[back].first != h || ls[back].second != h) continue;
    loops.push_back(LoopShape{h, h + 1, back, line.first, std::nullopt, false});
  }
  for (auto& lp : loops) {
    lp.straight_line = true;
    std::size_t i = lp.body;
    while (i < lp.back) {
      // Skip over nested loops; their lines are not top-level body lines.
      auto nested = std::find_if(loops.begin(), loops.end(), [&](const LoopShape& o) { return o.header == i; });
      if (nested != loops.end()) {
        lp.straight_line = false;
        i = nested->exit;
        continue;
      }
      const auto& line = ls[i];
      if (line.kind != Kind::Update) {
        lp.straight_line = false;
      } else if (!lp.drained_counter) {
        for (std::size_t c = 0; c < line.delta.size(); ++c) {
          if (line.delta[c] < 0) {
            lp.drained_counter = c;
            break;
          }
        }
      }
      ++i;
    }
  }
  return loops;
}

UpdateTerm inc(std::string counter, Expr amount) { return UpdateTerm{std::move(counter), true, std::move(amount)}; }
UpdateTerm dec(std::string counter, Expr amount) { return UpdateTerm{std::move(counter), false, std::move(amount)}; }
Statement update(std::vector<UpdateTerm> terms) { return Statement{std::nullopt, Update{std::move(terms)}, {}}; }
Statement init() { return Statement{std::nullopt, Init{}, {}}; }
Statement halt(std::vector<std::string> tested) { return Statement{std::nullopt, Halt{std::move(tested)}, {}}; }
Statement goto_(std::string first, std::string second) {
  return Statement{std::nullopt, Goto{std::move(first), std::move(second)}, {}};
}
Statement loop(Block body) { return Statement{std::nullopt, Loop{std::move(body)}, {}}; }
Statement for_(std::string var, Expr from, Direction direction, Expr to, Block body) {
  return Statement{std::nullopt, For{std::move(var), std::move(from), direction, std::move(to), std::move(body)}, {}};
}
Statement if_(Condition condition, Block body) {
  return Statement{std::nullopt, If{std::move(condition), std::move(body)}, {}};
}
Statement labeled(std::string label, Statement s) {
  s.label = std::move(label);
  return s;
}
Condition eq(Expr a, Expr b) { return Condition{std::move(a), CmpOp::Eq, std::move(b)}; }

}  // namespace vasskit::lang
