#include <algorithm>

#include "vasskit/lang.hpp"

namespace vasskit::lang {

namespace {

struct PendingGoto {
  std::size_t line;
  std::string first;
  std::string second;
  SourcePos pos;
};

class Expander {
 public:
  Expander(const CounterProgram& p, const ExpandOptions& options) : p_(p), options_(options) {
    out_.counters = p.counters;
  }

  FlatProgram run() {
    Env env;
    block(p_.body, env);
    for (const auto& g : pending_) {
      auto& line = out_.lines[g.line];
      line.first = resolve(g.first, g.pos);
      line.second = resolve(g.second, g.pos);
    }
    return std::move(out_);
  }

 private:
  std::size_t resolve(const std::string& label, SourcePos pos) const {
    if (label == kEndLabel) return out_.lines.size();
    auto it = out_.labels.find(label);
    if (it == out_.labels.end()) throw ExpandError("label '" + label + "' was not emitted", pos);
    return it->second;
  }

  void emit(FlatLine line, SourcePos pos) {
    if (out_.lines.size() >= options_.max_lines) {
      throw ExpandError("expansion exceeds " + std::to_string(options_.max_lines) + " lines", pos);
    }
    out_.lines.push_back(std::move(line));
  }

  BigInt eval(const Expr& e, const Env& env, SourcePos pos) const {
    try {
      return e.eval(env);
    } catch (const ExpandError& err) {
      throw ExpandError(err.what(), pos);
    }
  }

  void block(const Block& b, Env& env) {
    for (const auto& s : b) statement(s, env);
  }

  void statement(const Statement& s, Env& env) {
    if (s.label && !out_.labels.emplace(*s.label, out_.lines.size()).second) {
      throw ExpandError("label '" + *s.label + "' emitted more than once", s.pos);
    }
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          FlatLine line;
          if constexpr (std::is_same_v<T, Init>) {
            line.kind = FlatLine::Kind::Init;
            emit(std::move(line), s.pos);
          } else if constexpr (std::is_same_v<T, Halt>) {
            line.kind = FlatLine::Kind::Halt;
            for (const auto& n : c.tested) line.tested.push_back(out_.counter_index(n));
            std::sort(line.tested.begin(), line.tested.end());
            line.tested.erase(std::unique(line.tested.begin(), line.tested.end()), line.tested.end());
            emit(std::move(line), s.pos);
          } else if constexpr (std::is_same_v<T, Update>) {
            line.kind = FlatLine::Kind::Update;
            line.delta.assign(out_.counters.size(), 0);
            std::vector<bool> seen(out_.counters.size(), false);
            for (const auto& term : c.terms) {
              std::size_t idx = out_.counter_index(term.counter);
              if (seen[idx]) throw ExpandError("counter '" + term.counter + "' updated twice on one line", s.pos);
              seen[idx] = true;
              BigInt amount = eval(term.amount, env, s.pos);
              if (amount <= 0) {
                throw ExpandError("update amount must be positive, got " + to_string(amount), s.pos);
              }
              line.delta[idx] = term.increment ? amount : BigInt(-amount);
            }
            emit(std::move(line), s.pos);
          } else if constexpr (std::is_same_v<T, Goto>) {
            line.kind = FlatLine::Kind::Goto;
            pending_.push_back({out_.lines.size(), c.first, c.second, s.pos});
            emit(std::move(line), s.pos);
          } else if constexpr (std::is_same_v<T, Loop>) {
            std::size_t header = out_.lines.size();
            line.kind = FlatLine::Kind::Goto;
            emit(line, s.pos);
            block(c.body, env);
            FlatLine back;
            back.kind = FlatLine::Kind::Goto;
            back.first = back.second = header;
            emit(std::move(back), s.pos);
            out_.lines[header].first = out_.lines.size();
            out_.lines[header].second = header + 1;
          } else if constexpr (std::is_same_v<T, For>) {
            BigInt from = eval(c.from, env, s.pos);
            BigInt to = eval(c.to, env, s.pos);
            auto saved = env.find(c.var) == env.end() ? std::optional<BigInt>() : std::optional<BigInt>(env[c.var]);
            if (c.direction == Direction::Up) {
              for (BigInt i = from; i <= to; ++i) {
                env[c.var] = i;
                block(c.body, env);
              }
            } else {
              for (BigInt i = from; i >= to; --i) {
                env[c.var] = i;
                block(c.body, env);
              }
            }
            if (saved) {
              env[c.var] = *saved;
            } else {
              env.erase(c.var);
            }
          } else if constexpr (std::is_same_v<T, If>) {
            bool holds;
            try {
              holds = c.condition.eval(env);
            } catch (const ExpandError& err) {
              throw ExpandError(err.what(), s.pos);
            }
            if (holds) block(c.body, env);
          }
        },
        s.command);
  }

  const CounterProgram& p_;
  const ExpandOptions& options_;
  FlatProgram out_;
  std::vector<PendingGoto> pending_;
};

}  // namespace

FlatProgram expand(const CounterProgram& p, const ExpandOptions& options) { return Expander(p, options).run(); }

}  // namespace vasskit::lang
