#include "vasskit/replay.hpp"

#include <map>
#include <tuple>

#include "vasskit/lang.hpp"

namespace vasskit {

std::vector<LoopVisit> RunProbe::of(std::size_t ordinal) const {
  std::vector<LoopVisit> out;
  for (const auto& v : visits) {
    if (v.ordinal == ordinal) out.push_back(v);
  }
  return out;
}

namespace {

using lang::FlatLine;
using lang::FlatProgram;
using lang::LoopShape;

class TransitionIndex {
 public:
  explicit TransitionIndex(const Vass& v) {
    for (std::size_t i = 0; i < v.transitions().size(); ++i) {
      const auto& t = v.transitions()[i];
      index_.emplace(std::make_tuple(t.from, t.to, t.delta), i);
    }
  }
  std::size_t at(std::size_t from, std::size_t to, const Vector& delta) const {
    auto it = index_.find(std::make_tuple(from, to, delta));
    if (it == index_.end()) throw std::logic_error("program and VASS disagree on a transition");
    return it->second;
  }

 private:
  std::map<std::tuple<std::size_t, std::size_t, Vector>, std::size_t> index_;
};

class Walker {
 public:
  Walker(const FlatProgram& p, const Vass& v, const ReplaySchedule& s, Configuration start)
      : p_(p), v_(v), schedule_(s), index_(v), loops_(lang::find_loops(p)), zero_(p.counters.size(), 0) {
    if (v.dimension() != p.counters.size()) throw std::invalid_argument("VASS dimension does not match program");
    for (std::size_t i = 0; i < loops_.size(); ++i) ordinal_of_header_[loops_[i].header] = i;
    for (std::size_t i = 0; i <= p.lines.size(); ++i) {
      if (i < p.lines.size() || p.lines.empty() || p.lines.back().kind != FlatLine::Kind::Halt) {
        state_of_line_.push_back(v.state_index(lang::line_state(p, i)));
      }
    }
    out_.run.initial = start;
    out_.final = std::move(start);
  }

  Replay run() {
    std::size_t pc = exec(0, p_.lines.size(), true);
    if (pc < p_.lines.size()) {
      out_.at_halt = cur();
      complete_halt(pc);
    }
    out_.halting = out_.final == v_.target();
    return std::move(out_);
  }

 private:
  Configuration& cur() { return out_.final; }

  std::string where(std::size_t line) const { return "line " + std::to_string(line + 1); }

  void take(std::size_t t, std::size_t line) {
    auto next = try_step(cur(), v_.transitions()[t]);
    if (!next) throw PolicyStuck("counter would become negative at " + where(line));
    cur() = std::move(*next);
    out_.run.segments.push_back(RunSegment{{t}, 1});
  }

  std::size_t zero_edge(std::size_t from_line, std::size_t to_line) const {
    return index_.at(state_of_line_.at(from_line), state_of_line_.at(to_line), zero_);
  }

  // Runs lines from `pc` until control reaches `end`; a halt line stops the
  // walk and is returned. Explicit jumps are only followed at the top level.
  std::size_t exec(std::size_t pc, std::size_t end, bool top) {
    while (pc != end) {
      if (pc > p_.lines.size()) throw std::logic_error("control left the program");
      if (!top && pc > end) throw PolicyIncomplete("jump out of a loop body at " + where(pc));
      const auto& line = p_.lines.at(pc);
      switch (line.kind) {
        case FlatLine::Kind::Init:
        case FlatLine::Kind::Update:
          take(index_.at(state_of_line_[pc], state_of_line_[pc + 1], line.kind == FlatLine::Kind::Init ? zero_ : line.delta),
               pc);
          ++pc;
          break;
        case FlatLine::Kind::Halt:
          if (!top) throw PolicyIncomplete("halt inside a loop body at " + where(pc));
          return pc;
        case FlatLine::Kind::Goto: {
          auto loop = ordinal_of_header_.find(pc);
          if (loop != ordinal_of_header_.end()) {
            pc = run_loop(loop->second);
            break;
          }
          std::size_t target = line.first;
          if (line.first != line.second) {
            auto b = schedule_.branch_targets.find(pc);
            if (b == schedule_.branch_targets.end()) throw PolicyIncomplete("no branch chosen at " + where(pc));
            if (b->second != line.first && b->second != line.second) {
              throw PolicyIncomplete("branch target is not a successor of " + where(pc));
            }
            target = b->second;
          }
          take(zero_edge(pc, target), pc);
          pc = target;
          break;
        }
      }
    }
    return pc;
  }

  std::vector<std::size_t> cycle_of(const LoopShape& lp) const {
    std::vector<std::size_t> path{zero_edge(lp.header, lp.body)};
    for (std::size_t i = lp.body; i < lp.back; ++i) {
      path.push_back(index_.at(state_of_line_[i], state_of_line_[i + 1], p_.lines[i].delta));
    }
    path.push_back(zero_edge(lp.back, lp.header));
    return path;
  }

  Vector cycle_delta(const LoopShape& lp) const {
    Vector sum = zero_;
    for (std::size_t i = lp.body; i < lp.back; ++i) {
      for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += p_.lines[i].delta[c];
    }
    return sum;
  }

  void repeat_cycle(const LoopShape& lp, const BigInt& times) {
    if (times <= 0) return;
    RunSegment seg{cycle_of(lp), times};
    auto outcome = apply_segment(v_, cur(), seg);
    if (!outcome.next) {
      throw PolicyStuck("loop at " + where(lp.header) + " cannot run " + to_string(times) +
                        " iterations: " + outcome.reason);
    }
    cur() = std::move(*outcome.next);
    out_.run.segments.push_back(std::move(seg));
  }

  void one_iteration(const LoopShape& lp) {
    take(zero_edge(lp.header, lp.body), lp.header);
    exec(lp.body, lp.back, false);
    take(zero_edge(lp.back, lp.header), lp.back);
  }

  std::size_t run_loop(std::size_t ordinal) {
    const LoopShape& lp = loops_[ordinal];
    BigInt iterations = 0;
    auto fixed = schedule_.loop_counts.find(ordinal);
    if (fixed != schedule_.loop_counts.end()) {
      const BigInt& n = fixed->second;
      if (lp.straight_line) {
        repeat_cycle(lp, n);
        iterations = n;
      } else {
        for (; iterations < n; ++iterations) one_iteration(lp);
      }
    } else {
      if (!lp.drained_counter) throw PolicyIncomplete("loop at " + where(lp.header) + " needs an iteration count");
      std::size_t c = *lp.drained_counter;
      if (lp.straight_line) {
        BigInt per = -cycle_delta(lp)[c];
        if (cur().vector[c] > 0) {
          if (per <= 0) throw PolicyStuck("loop at " + where(lp.header) + " never drains its counter");
          BigInt k = cur().vector[c] / per;
          repeat_cycle(lp, k);
          iterations = k;
          if (cur().vector[c] > 0) {
            throw PolicyStuck("loop at " + where(lp.header) + " leaves " + to_string(cur().vector[c]) +
                              " in its drained counter");
          }
        }
      } else {
        while (cur().vector[c] > 0) {
          BigInt before = cur().vector[c];
          one_iteration(lp);
          ++iterations;
          if (cur().vector[c] >= before) throw PolicyStuck("loop at " + where(lp.header) + " never drains its counter");
        }
      }
    }
    take(zero_edge(lp.header, lp.exit), lp.header);
    out_.probe.visits.push_back(LoopVisit{ordinal, lp.header, iterations, cur().vector});
    return lp.exit;
  }

  // Follows the halt completion: drain each self-loop fully, then move on.
  void complete_halt(std::size_t pc) {
    std::size_t state = state_of_line_[pc];
    while (true) {
      std::optional<std::size_t> forward;
      for (std::size_t t : v_.outgoing(state)) {
        const auto& tr = v_.transitions()[t];
        if (tr.to != state) {
          forward = t;
          continue;
        }
        for (std::size_t c = 0; c < tr.delta.size(); ++c) {
          if (tr.delta[c] < 0 && cur().vector[c] > 0) {
            BigInt times = cur().vector[c] / -tr.delta[c];
            RunSegment seg{{t}, times};
            auto outcome = apply_segment(v_, cur(), seg);
            if (outcome.next) {
              cur() = std::move(*outcome.next);
              out_.run.segments.push_back(std::move(seg));
            }
          }
        }
      }
      if (!forward) break;
      take(*forward, pc);
      state = v_.transitions()[*forward].to;
    }
  }

  const FlatProgram& p_;
  const Vass& v_;
  const ReplaySchedule& schedule_;
  TransitionIndex index_;
  std::vector<LoopShape> loops_;
  Vector zero_;
  std::map<std::size_t, std::size_t> ordinal_of_header_;
  std::vector<std::size_t> state_of_line_;
  Replay out_;
};

}  // namespace

Replay replay_canonical(const FlatProgram& p, const Vass& v, const ReplaySchedule& schedule,
                        const std::optional<Configuration>& start) {
  return Walker(p, v, schedule, start.value_or(v.source())).run();
}

RunProbe recompute_probes(const FlatProgram& p, const Vass& v, const Run& run) {
  auto loops = lang::find_loops(p);
  TransitionIndex index(v);
  Vector zero(p.counters.size(), 0);
  auto state = [&](std::size_t line) { return v.state_index(lang::line_state(p, line)); };
  std::map<std::size_t, std::size_t> enters, exits;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& lp = loops[i];
    if (lp.exit != lp.body) enters[index.at(state(lp.header), state(lp.body), zero)] = i;
    exits[index.at(state(lp.header), state(lp.exit), zero)] = i;
  }
  RunProbe out;
  std::vector<BigInt> active(loops.size(), 0);
  Configuration cur = run.initial;
  for (const auto& seg : run.segments) {
    bool has_exit = false;
    for (auto t : seg.path) has_exit = has_exit || exits.count(t);
    if (has_exit && seg.repeat > 1'000'000) throw std::invalid_argument("repeated segment leaves a loop too often");
    if (!has_exit && seg.repeat > 1) {
      for (auto t : seg.path) {
        auto e = enters.find(t);
        if (e != enters.end()) active[e->second] += seg.repeat;
      }
      auto outcome = apply_segment(v, cur, seg);
      if (!outcome.next) throw std::invalid_argument("run is not valid: " + outcome.reason);
      cur = std::move(*outcome.next);
      continue;
    }
    for (BigInt r = 0; r < seg.repeat; ++r) {
      for (auto t : seg.path) {
        cur = step(cur, v.transitions().at(t));
        if (auto e = enters.find(t); e != enters.end()) ++active[e->second];
        if (auto x = exits.find(t); x != exits.end()) {
          out.visits.push_back(LoopVisit{x->second, loops[x->second].header, active[x->second], cur.vector});
          active[x->second] = 0;
        }
      }
    }
  }
  return out;
}

}  // namespace vasskit
