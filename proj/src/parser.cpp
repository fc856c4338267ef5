#include <algorithm>
#include <cctype>
#include <set>

#include "vasskit/lang.hpp"

namespace vasskit::lang {

namespace {

enum class Tok { Ident, Number, Symbol, Newline, Eof };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"counters", "init", "halt", "goto",  "or",   "loop",
                                          "endloop",  "for",  "to",   "downto", "down", "endfor",
                                          "if",       "then", "endif", "bit"};
  return k;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, col};
    if (c == '\n') {
      out.push_back({Tok::Newline, "\n", pos});
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      while (j < src.size() && src[j] == '\'') ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
    } else {
      static const char* two[] = {"+=", "-=", ":=", "!=", "<=", ">="};
      std::string sym(1, c);
      for (const char* t : two) {
        if (src.substr(i, 2) == t) sym = t;
      }
      if (sym.size() == 1 && std::string_view("+-*^(),:=<>").find(c) == std::string_view::npos) {
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
      }
      out.push_back({Tok::Symbol, sym, pos});
      advance(sym.size());
    }
  }
  out.push_back({Tok::Eof, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  CounterProgram program() {
    skip_newlines();
    expect_keyword("counters");
    CounterProgram p;
    while (peek().kind == Tok::Ident || is_symbol(",")) {
      if (is_symbol(",")) {
        next();
        continue;
      }
      Token t = next();
      if (keywords().count(t.text)) throw ParseError("keyword '" + t.text + "' cannot name a counter", t.pos);
      if (std::find(p.counters.begin(), p.counters.end(), t.text) != p.counters.end()) {
        throw ParseError("counter '" + t.text + "' declared twice", t.pos);
      }
      p.counters.push_back(t.text);
    }
    if (p.counters.empty()) throw ParseError("expected at least one counter", peek().pos);
    end_of_line();
    p.body = block({});
    if (peek().kind != Tok::Eof) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_symbol(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Symbol && peek(ahead).text == s;
  }
  bool is_keyword(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == s;
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  void expect_keyword(const char* k) {
    if (!is_keyword(k)) throw ParseError(std::string("expected '") + k + "'", peek().pos);
    next();
  }
  void expect_symbol(const char* s) {
    if (!is_symbol(s)) throw ParseError(std::string("expected '") + s + "'", peek().pos);
    next();
  }
  void end_of_line() {
    if (peek().kind == Tok::Eof) return;
    if (peek().kind != Tok::Newline) throw ParseError("expected end of line, found '" + peek().text + "'", peek().pos);
    skip_newlines();
  }

  Block block(std::initializer_list<const char*> terminators) {
    Block out;
    skip_newlines();
    while (peek().kind != Tok::Eof) {
      bool done = false;
      for (const char* t : terminators) done = done || is_keyword(t);
      if (done) break;
      out.push_back(statement());
      skip_newlines();
    }
    return out;
  }

  std::string label_token() {
    const Token& t = peek();
    if (t.kind != Tok::Ident && t.kind != Tok::Number) throw ParseError("expected a label", t.pos);
    return next().text;
  }

  Statement statement() {
    Statement s;
    s.pos = peek().pos;
    if ((peek().kind == Tok::Ident || peek().kind == Tok::Number) && is_symbol(":", 1)) {
      Token t = next();
      next();
      if (t.kind == Tok::Ident && keywords().count(t.text)) {
        throw ParseError("keyword '" + t.text + "' cannot be a label", t.pos);
      }
      if (t.text == kEndLabel) throw ParseError("label 'end' is reserved", t.pos);
      s.label = t.text;
    }
    const Token& t = peek();
    if (is_keyword("init")) {
      next();
      s.command = Init{};
      end_of_line();
    } else if (is_keyword("halt")) {
      next();
      Halt h;
      while (peek().kind == Tok::Ident || is_symbol(",")) {
        if (is_symbol(",")) {
          next();
          continue;
        }
        h.tested.push_back(next().text);
      }
      s.command = std::move(h);
      end_of_line();
    } else if (is_keyword("goto")) {
      next();
      Goto g;
      g.first = label_token();
      g.second = g.first;
      if (is_keyword("or")) {
        next();
        g.second = label_token();
      }
      s.command = std::move(g);
      end_of_line();
    } else if (is_keyword("loop")) {
      next();
      end_of_line();
      Loop l{block({"endloop"})};
      expect_keyword("endloop");
      s.command = std::move(l);
      end_of_line();
    } else if (is_keyword("for")) {
      next();
      For f;
      if (peek().kind != Tok::Ident || keywords().count(peek().text)) {
        throw ParseError("expected a meta-variable", peek().pos);
      }
      f.var = next().text;
      expect_symbol(":=");
      f.from = expr();
      if (is_keyword("to")) {
        f.direction = Direction::Up;
        next();
      } else if (is_keyword("downto")) {
        f.direction = Direction::Down;
        next();
      } else if (is_keyword("down") && is_keyword("to", 1)) {
        f.direction = Direction::Down;
        next();
        next();
      } else {
        throw ParseError("expected 'to' or 'downto'", peek().pos);
      }
      f.to = expr();
      end_of_line();
      f.body = block({"endfor"});
      expect_keyword("endfor");
      s.command = std::move(f);
      end_of_line();
    } else if (is_keyword("if")) {
      next();
      If c;
      c.condition = condition();
      expect_keyword("then");
      if (peek().kind == Tok::Newline) {
        end_of_line();
        c.body = block({"endif"});
        expect_keyword("endif");
        end_of_line();
      } else {
        // Inline form: a single update on the same line.
        Statement inner;
        inner.pos = peek().pos;
        inner.command = update_line();
        c.body.push_back(std::move(inner));
        end_of_line();
      }
      s.command = std::move(c);
    } else if (t.kind == Tok::Ident && !keywords().count(t.text)) {
      s.command = update_line();
      end_of_line();
    } else {
      throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
    return s;
  }

  Update update_line() {
    Update u;
    while (true) {
      if (peek().kind != Tok::Ident || keywords().count(peek().text)) {
        throw ParseError("expected a counter update", peek().pos);
      }
      UpdateTerm term;
      term.counter = next().text;
      if (is_symbol("+=")) {
        term.increment = true;
      } else if (is_symbol("-=")) {
        term.increment = false;
      } else {
        throw ParseError("expected '+=' or '-='", peek().pos);
      }
      next();
      term.amount = expr();
      u.terms.push_back(std::move(term));
      if (is_symbol(",")) next();
      if (peek().kind != Tok::Ident || keywords().count(peek().text)) break;
    }
    return u;
  }

  Condition condition() {
    Condition c;
    c.lhs = expr();
    static const std::pair<const char*, CmpOp> ops[] = {{"=", CmpOp::Eq},  {"!=", CmpOp::Ne}, {"<", CmpOp::Lt},
                                                        {"<=", CmpOp::Le}, {">", CmpOp::Gt},  {">=", CmpOp::Ge}};
    bool found = false;
    for (const auto& [sym, op] : ops) {
      if (is_symbol(sym)) {
        c.op = op;
        found = true;
      }
    }
    if (!found) throw ParseError("expected a comparison", peek().pos);
    next();
    c.rhs = expr();
    return c;
  }

  Expr expr() {
    Expr e = product();
    while (is_symbol("+") || is_symbol("-")) {
      bool plus = next().text == "+";
      Expr r = product();
      e = plus ? e + r : e - r;
    }
    return e;
  }

  Expr product() {
    Expr e = power_expr();
    while (is_symbol("*")) {
      next();
      e = e * power_expr();
    }
    return e;
  }

  Expr power_expr() {
    Expr base = atom();
    if (is_symbol("^")) {
      next();
      return power(base, power_expr());
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return Expr(parse_bigint(t.text));
    }
    if (is_symbol("-") && peek(1).kind == Tok::Number) {
      next();
      return Expr(-parse_bigint(next().text));
    }
    if (is_symbol("(")) {
      next();
      Expr e = expr();
      expect_symbol(")");
      return e;
    }
    if (is_keyword("bit")) {
      next();
      expect_symbol("(");
      Expr v = expr();
      expect_symbol(",");
      Expr i = expr();
      expect_symbol(")");
      return Expr::bit(v, i);
    }
    if (t.kind == Tok::Ident && !keywords().count(t.text)) {
      next();
      return Expr::var(t.text);
    }
    throw ParseError("expected an expression", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Scope, declaration, and placement checks on the parsed tree.
class Checker {
 public:
  explicit Checker(const CounterProgram& p) : p_(p) {}

  void run() {
    collect_labels(p_.body);
    for (std::size_t i = 0; i < p_.body.size(); ++i) {
      const auto& s = p_.body[i];
      if (std::holds_alternative<Init>(s.command) && i != 0) {
        throw ParseError("init must be the first command", s.pos);
      }
      if (std::holds_alternative<Halt>(s.command) && i + 1 != p_.body.size()) {
        throw ParseError("halt must be the last command", s.pos);
      }
    }
    std::vector<std::string> scope;
    check_block(p_.body, scope, true);
  }

 private:
  void collect_labels(const Block& b) {
    for (const auto& s : b) {
      if (s.label && !labels_.insert(*s.label).second) {
        throw ParseError("label '" + *s.label + "' defined twice", s.pos);
      }
      std::visit(
          [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Loop> || std::is_same_v<T, For> || std::is_same_v<T, If>) {
              collect_labels(c.body);
            }
          },
          s.command);
    }
  }

  bool is_counter(const std::string& n) const {
    return std::find(p_.counters.begin(), p_.counters.end(), n) != p_.counters.end();
  }

  void check_expr(const Expr& e, const std::vector<std::string>& scope, SourcePos pos) {
    switch (e.op()) {
      case Expr::Op::Literal:
        return;
      case Expr::Op::Var:
        if (is_counter(e.name())) {
          throw ParseError("counter '" + e.name() + "' used in a compile-time expression", pos);
        }
        if (std::find(scope.begin(), scope.end(), e.name()) == scope.end()) {
          throw ParseError("unknown meta-variable '" + e.name() + "'", pos);
        }
        return;
      default:
        check_expr(e.lhs(), scope, pos);
        check_expr(e.rhs(), scope, pos);
    }
  }

  void check_block(const Block& b, std::vector<std::string>& scope, bool top) {
    for (const auto& s : b) {
      if (!top && (std::holds_alternative<Init>(s.command) || std::holds_alternative<Halt>(s.command))) {
        throw ParseError("init and halt are only allowed at the top level", s.pos);
      }
      std::visit(
          [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Halt>) {
              for (const auto& n : c.tested) {
                if (!is_counter(n)) throw ParseError("undeclared counter '" + n + "'", s.pos);
              }
            } else if constexpr (std::is_same_v<T, Update>) {
              for (const auto& term : c.terms) {
                if (!is_counter(term.counter)) throw ParseError("undeclared counter '" + term.counter + "'", s.pos);
                check_expr(term.amount, scope, s.pos);
              }
            } else if constexpr (std::is_same_v<T, Goto>) {
              for (const auto* l : {&c.first, &c.second}) {
                if (*l != kEndLabel && !labels_.count(*l)) {
                  throw ParseError("unresolved label '" + *l + "'", s.pos);
                }
              }
            } else if constexpr (std::is_same_v<T, Loop>) {
              check_block(c.body, scope, false);
            } else if constexpr (std::is_same_v<T, For>) {
              if (is_counter(c.var)) throw ParseError("meta-variable '" + c.var + "' shadows a counter", s.pos);
              check_expr(c.from, scope, s.pos);
              check_expr(c.to, scope, s.pos);
              scope.push_back(c.var);
              check_block(c.body, scope, false);
              scope.pop_back();
            } else if constexpr (std::is_same_v<T, If>) {
              check_expr(c.condition.lhs, scope, s.pos);
              check_expr(c.condition.rhs, scope, s.pos);
              check_block(c.body, scope, false);
            }
          },
          s.command);
    }
  }

  const CounterProgram& p_;
  std::set<std::string> labels_;
};

}  // namespace

CounterProgram parse(std::string_view text) {
  Parser parser(lex(text));
  CounterProgram p = parser.program();
  Checker(p).run();
  return p;
}

}  // namespace vasskit::lang
