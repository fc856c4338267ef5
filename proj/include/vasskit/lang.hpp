#pragma once

#include <string>
#include <string_view>

#include "vasskit/program.hpp"
#include "vasskit/vass.hpp"

namespace vasskit::lang {

/// Parses the line-oriented counter-program syntax:
///
///   counters x y
///   init
///   loop
///     x -= 1  y += 1
///   endloop
///   for i := 2 downto 0
///     if bit(6, i) = 1 then x += 1
///   endfor
///   done: halt y
///
/// Programs may omit init and halt (fragments). Throws ParseError.
CounterProgram parse(std::string_view text);

std::string pretty_print(const CounterProgram& p);
/// Every line is prefixed by its 1-based number, which is also the label
/// its gotos use; the output parses back to an equivalent program.
std::string pretty_print(const FlatProgram& p);
std::string to_string(const Expr& e);

struct ExpandOptions {
  std::size_t max_lines = 1'000'000;
};

/// Unrolls for, resolves if, and lowers each loop to
///   h: goto x or h+1 ; body ; goto h ; x: ...
/// Throws ExpandError.
FlatProgram expand(const CounterProgram& p, const ExpandOptions& options = {});

/// One state per line ("L" followed by the zero-padded 1-based line number).
/// Untested counters at halt are drained by a chain of self-loop states
/// "<halt>+<counter>", one per counter, so the target vector is zero.
Vass compile(const FlatProgram& p);

std::string line_state(const FlatProgram& p, std::size_t line);
std::string halt_state(const FlatProgram& p);

/// parse + expand + compile.
Vass compile_text(std::string_view text);

}  // namespace vasskit::lang
