#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vasskit/arith.hpp"
#include "vasskit/vass.hpp"

namespace vasskit::lang {

struct SourcePos {
  int line = 0;
  int column = 0;
};

class LangError : public std::runtime_error {
 public:
  LangError(const std::string& what, SourcePos pos = {})
      : std::runtime_error(pos.line > 0 ? std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + what
                                        : what),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class ParseError : public LangError {
 public:
  using LangError::LangError;
};

class ExpandError : public LangError {
 public:
  using LangError::LangError;
};

/// Bindings of meta-variables during expansion.
using Env = std::map<std::string, BigInt>;

/// Compile-time integer expression over meta-variables. Immutable; copies
/// share structure.
class Expr {
 public:
  enum class Op { Literal, Var, Add, Sub, Mul, Pow, Bit };

  Expr(long value) : Expr(BigInt(value)) {}  // NOLINT(google-explicit-constructor)
  Expr(BigInt value);                         // NOLINT(google-explicit-constructor)
  static Expr var(std::string name);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  /// Bit `index` (weight 2^index) of `value`.
  static Expr bit(Expr value, Expr index) { return binary(Op::Bit, std::move(value), std::move(index)); }

  Op op() const;
  const BigInt& value() const;
  const std::string& name() const;
  const Expr& lhs() const;
  const Expr& rhs() const;

  BigInt eval(const Env& env) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
/// a^b (right associative in the concrete syntax).
Expr power(Expr a, Expr b);

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Condition {
  Expr lhs = 0;
  CmpOp op = CmpOp::Eq;
  Expr rhs = 0;

  bool eval(const Env& env) const;
  bool operator==(const Condition&) const = default;
};

struct UpdateTerm {
  std::string counter;
  bool increment = true;
  Expr amount = 1;

  bool operator==(const UpdateTerm&) const = default;
};

struct Statement;
using Block = std::vector<Statement>;

struct Init {
  bool operator==(const Init&) const = default;
};
struct Halt {
  std::vector<std::string> tested;
  bool operator==(const Halt&) const = default;
};
/// One program line: every term is applied by a single transition.
struct Update {
  std::vector<UpdateTerm> terms;
  bool operator==(const Update&) const = default;
};
struct Goto {
  std::string first;
  std::string second;
  bool operator==(const Goto&) const = default;
};
/// Iterate the body a nondeterministic number of times.
struct Loop {
  Block body;
  bool operator==(const Loop&) const = default;
};
enum class Direction { Up, Down };
/// Unrolled at expansion time; `var` is a meta-variable, not a counter.
struct For {
  std::string var;
  Expr from = 0;
  Direction direction = Direction::Up;
  Expr to = 0;
  Block body;
  bool operator==(const For&) const = default;
};
/// Kept or removed at expansion time.
struct If {
  Condition condition;
  Block body;
  bool operator==(const If&) const = default;
};

using Command = std::variant<Init, Halt, Update, Goto, Loop, For, If>;

struct Statement {
  std::optional<std::string> label;
  Command command;
  SourcePos pos;

  /// Positions are diagnostics only and do not take part in equality.
  friend bool operator==(const Statement& a, const Statement& b) {
    return a.label == b.label && a.command == b.command;
  }
};

struct CounterProgram {
  std::vector<std::string> counters;
  Block body;

  /// Starts with init and ends with halt.
  bool is_complete() const;
  bool operator==(const CounterProgram&) const = default;
};

/// Reserved label naming the position just past the last line.
inline constexpr const char* kEndLabel = "end";

// ---------------------------------------------------------------------------
// ground programs

struct FlatLine {
  enum class Kind { Init, Update, Goto, Halt };
  Kind kind = Kind::Update;
  /// Signed per-counter change of an Update line.
  Vector delta;
  /// Goto targets as 0-based line indices; lines.size() means "past the end".
  std::size_t first = 0;
  std::size_t second = 0;
  /// Counter indices tested for zero by Halt.
  std::vector<std::size_t> tested;

  bool operator==(const FlatLine&) const = default;
};

struct FlatProgram {
  std::vector<std::string> counters;
  std::vector<FlatLine> lines;
  /// Source labels and the line they resolved to. Informational only.
  std::map<std::string, std::size_t> labels;

  bool is_complete() const;
  std::size_t counter_index(const std::string& name) const;

  friend bool operator==(const FlatProgram& a, const FlatProgram& b) {
    return a.counters == b.counters && a.lines == b.lines;
  }
};

/// A loop in its expanded four-line form:
///   header: goto exit or body ; body... ; back: goto header ; exit: ...
struct LoopShape {
  std::size_t header = 0;
  std::size_t body = 0;
  std::size_t back = 0;
  std::size_t exit = 0;
  /// First counter decremented by a line of the body outside nested loops.
  std::optional<std::size_t> drained_counter;
  /// Body consists of update lines only.
  bool straight_line = false;
};

/// Recognizes every loop skeleton in program order (by header line).
std::vector<LoopShape> find_loops(const FlatProgram& p);

// ---------------------------------------------------------------------------
// builders used by the generators

UpdateTerm inc(std::string counter, Expr amount = 1);
UpdateTerm dec(std::string counter, Expr amount = 1);
Statement update(std::vector<UpdateTerm> terms);
Statement init();
Statement halt(std::vector<std::string> tested);
Statement goto_(std::string first, std::string second);
Statement loop(Block body);
Statement for_(std::string var, Expr from, Direction direction, Expr to, Block body);
Statement if_(Condition condition, Block body);
Statement labeled(std::string label, Statement s);
Condition eq(Expr a, Expr b);

}  // namespace vasskit::lang
