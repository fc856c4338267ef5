#include "vasskit/lang.hpp"

namespace vasskit::lang {

namespace {

// A trailing state is needed when control can fall off the last line or a
// goto names the end label. After a halt line it is a dead end.
bool has_end_state(const FlatProgram& p) {
  if (p.lines.empty() || p.lines.back().kind != FlatLine::Kind::Halt) return true;
  for (const auto& line : p.lines) {
    if (line.kind == FlatLine::Kind::Goto && (line.first == p.lines.size() || line.second == p.lines.size())) {
      return true;
    }
  }
  return false;
}

std::size_t state_count(const FlatProgram& p) { return p.lines.size() + (has_end_state(p) ? 1 : 0); }

}  // namespace

std::string line_state(const FlatProgram& p, std::size_t line) {
  std::string digits = std::to_string(line + 1);
  std::size_t width = std::to_string(state_count(p)).size();
  return "L" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

std::string halt_state(const FlatProgram& p) {
  if (p.lines.empty() || p.lines.back().kind != FlatLine::Kind::Halt) {
    throw std::invalid_argument("program has no halt line");
  }
  return line_state(p, p.lines.size() - 1);
}

Vass compile(const FlatProgram& p) {
  const std::size_t d = p.counters.size();
  const std::size_t n = state_count(p);
  std::vector<std::string> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back(line_state(p, i));
  std::vector<Vass::TransitionSpec> ts;
  const Vector zero(d, 0);
  std::string target = states.back();

  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const auto& line = p.lines[i];
    const std::string& here = states[i];
    switch (line.kind) {
      case FlatLine::Kind::Init:
        ts.push_back({here, zero, states[i + 1]});
        break;
      case FlatLine::Kind::Update:
        ts.push_back({here, line.delta, states[i + 1]});
        break;
      case FlatLine::Kind::Goto:
        ts.push_back({here, zero, states.at(line.first)});
        ts.push_back({here, zero, states.at(line.second)});
        break;
      case FlatLine::Kind::Halt: {
        std::vector<bool> tested(d, false);
        for (auto c : line.tested) tested[c] = true;
        std::string current = here;
        bool first = true;
        for (std::size_t c = 0; c < d; ++c) {
          if (tested[c]) continue;
          if (!first) {
            std::string next = here + "+" + p.counters[c];
            states.push_back(next);
            ts.push_back({current, zero, next});
            current = next;
          }
          first = false;
          Vector drain = zero;
          drain[c] = -1;
          ts.push_back({current, drain, current});
        }
        target = current;
        break;
      }
    }
  }
  return Vass(d, std::move(states), std::move(ts), {line_state(p, 0), zero}, {target, zero});
}

Vass compile_text(std::string_view text) { return compile(expand(parse(text))); }

}  // namespace vasskit::lang
