#include <sstream>

#include "vasskit/lang.hpp"

namespace vasskit::lang {

namespace {

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub:
      return 1;
    case Expr::Op::Mul:
      return 2;
    case Expr::Op::Pow:
      return 3;
    default:
      return 4;
  }
}

std::string wrap_if(bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; }

std::string print_expr(const Expr& e) {
  switch (e.op()) {
    case Expr::Op::Literal:
      return e.value() < 0 ? "(" + vasskit::to_string(e.value()) + ")" : vasskit::to_string(e.value());
    case Expr::Op::Var:
      return e.name();
    case Expr::Op::Bit:
      return "bit(" + print_expr(e.lhs()) + ", " + print_expr(e.rhs()) + ")";
    default:
      break;
  }
  int p = precedence(e.op());
  int pl = precedence(e.lhs().op());
  int pr = precedence(e.rhs().op());
  std::string sym;
  bool left_paren = pl < p;
  bool right_paren = pr < p;
  switch (e.op()) {
    case Expr::Op::Add:
      sym = " + ";
      right_paren = pr <= p;
      break;
    case Expr::Op::Sub:
      sym = " - ";
      right_paren = pr <= p;
      break;
    case Expr::Op::Mul:
      sym = " * ";
      right_paren = pr <= p;
      break;
    case Expr::Op::Pow:
      sym = "^";
      left_paren = pl <= p;
      break;
    default:
      break;
  }
  return wrap_if(left_paren, print_expr(e.lhs())) + sym + wrap_if(right_paren, print_expr(e.rhs()));
}

const char* cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "=";
}

std::string print_update(const Update& u) {
  std::string out;
  for (const auto& t : u.terms) {
    if (!out.empty()) out += "  ";
    out += t.counter + (t.increment ? " += " : " -= ") + print_expr(t.amount);
  }
  return out;
}

void print_block(std::ostringstream& out, const Block& b, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& s : b) {
    out << indent;
    if (s.label) out << *s.label << ": ";
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, Init>) {
            out << "init\n";
          } else if constexpr (std::is_same_v<T, Halt>) {
            out << "halt";
            for (std::size_t i = 0; i < c.tested.size(); ++i) out << (i ? ", " : " ") << c.tested[i];
            out << "\n";
          } else if constexpr (std::is_same_v<T, Update>) {
            out << print_update(c) << "\n";
          } else if constexpr (std::is_same_v<T, Goto>) {
            out << "goto " << c.first;
            if (c.second != c.first) out << " or " << c.second;
            out << "\n";
          } else if constexpr (std::is_same_v<T, Loop>) {
            out << "loop\n";
            print_block(out, c.body, depth + 1);
            out << indent << "endloop\n";
          } else if constexpr (std::is_same_v<T, For>) {
            out << "for " << c.var << " := " << print_expr(c.from)
                << (c.direction == Direction::Up ? " to " : " downto ") << print_expr(c.to) << "\n";
            print_block(out, c.body, depth + 1);
            out << indent << "endfor\n";
          } else if constexpr (std::is_same_v<T, If>) {
            out << "if " << print_expr(c.condition.lhs) << " " << cmp_symbol(c.condition.op) << " "
                << print_expr(c.condition.rhs) << " then";
            if (c.body.size() == 1 && !c.body[0].label && std::holds_alternative<Update>(c.body[0].command)) {
              out << " " << print_update(std::get<Update>(c.body[0].command)) << "\n";
            } else {
              out << "\n";
              print_block(out, c.body, depth + 1);
              out << indent << "endif\n";
            }
          }
        },
        s.command);
  }
}

std::string counters_line(const std::vector<std::string>& counters) {
  std::string out = "counters";
  for (const auto& c : counters) out += " " + c;
  return out + "\n";
}

}  // namespace

std::string to_string(const Expr& e) { return print_expr(e); }

std::string pretty_print(const CounterProgram& p) {
  std::ostringstream out;
  out << counters_line(p.counters);
  print_block(out, p.body, 0);
  return out.str();
}

std::string pretty_print(const FlatProgram& p) {
  std::ostringstream out;
  out << counters_line(p.counters);
  auto target = [&](std::size_t t) { return t >= p.lines.size() ? std::string(kEndLabel) : std::to_string(t + 1); };
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const auto& line = p.lines[i];
    out << (i + 1) << ": ";
    switch (line.kind) {
      case FlatLine::Kind::Init:
        out << "init";
        break;
      case FlatLine::Kind::Halt:
        out << "halt";
        for (std::size_t j = 0; j < line.tested.size(); ++j) out << (j ? ", " : " ") << p.counters[line.tested[j]];
        break;
      case FlatLine::Kind::Goto:
        out << "goto " << target(line.first);
        if (line.second != line.first) out << " or " << target(line.second);
        break;
      case FlatLine::Kind::Update: {
        bool first = true;
        for (std::size_t c = 0; c < line.delta.size(); ++c) {
          if (line.delta[c] == 0) continue;
          if (!first) out << "  ";
          first = false;
          out << p.counters[c] << (line.delta[c] > 0 ? " += " : " -= ") << vasskit::to_string(BigInt(abs(line.delta[c])));
        }
        break;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace vasskit::lang
