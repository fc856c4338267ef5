#include <algorithm>
#include <functional>

#include "vasskit/vass.hpp"

namespace vasskit {

namespace {

// Strongly connected component containing `root` in the subgraph induced by
// states >= root (iterative Tarjan restricted to that subgraph).
std::vector<bool> component_of(const Vass& v, std::size_t root) {
  const std::size_t n = v.states().size();
  const auto& ts = v.transitions();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false), result(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;

  struct Frame {
    std::size_t state;
    std::size_t next_edge;
  };
  std::vector<Frame> call;
  auto push = [&](std::size_t s) {
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = true;
    call.push_back({s, 0});
  };
  push(root);
  while (!call.empty()) {
    auto& f = call.back();
    auto out = v.outgoing(f.state);
    if (f.next_edge < out.size()) {
      std::size_t w = ts[out[f.next_edge++]].to;
      if (w < root) continue;
      if (index[w] < 0) {
        push(w);
      } else if (on_stack[w]) {
        low[f.state] = std::min(low[f.state], index[w]);
      }
      continue;
    }
    std::size_t s = f.state;
    call.pop_back();
    if (!call.empty()) low[call.back().state] = std::min(low[call.back().state], low[s]);
    if (low[s] == index[s]) {
      bool is_root_scc = false;
      std::vector<std::size_t> members;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        members.push_back(w);
        if (w == root) is_root_scc = true;
      } while (w != s);
      if (is_root_scc) {
        for (auto m : members) result[m] = true;
      }
    }
  }
  return result;
}

// Johnson's circuit enumeration. `emit` returns false to stop early.
class CycleEnumerator {
 public:
  CycleEnumerator(const Vass& v, std::size_t budget, std::function<bool(const Cycle&)> emit)
      : v_(v), budget_(budget), emit_(std::move(emit)) {}

  void run() {
    const std::size_t n = v_.states().size();
    for (std::size_t s = 0; s < n && !stopped_; ++s) {
      in_scc_ = component_of(v_, s);
      bool has_cycle = false;
      for (auto e : v_.outgoing(s)) {
        if (in_scc_[v_.transitions()[e].to]) has_cycle = true;
      }
      if (!has_cycle) continue;
      blocked_.assign(n, false);
      blocked_by_.assign(n, {});
      start_ = s;
      circuit(s);
    }
  }

  std::size_t count() const { return count_; }

 private:
  void unblock(std::size_t u) {
    blocked_[u] = false;
    auto waiting = std::move(blocked_by_[u]);
    blocked_by_[u].clear();
    for (auto w : waiting) {
      if (blocked_[w]) unblock(w);
    }
  }

  bool circuit(std::size_t u) {
    bool found = false;
    blocked_[u] = true;
    for (auto e : v_.outgoing(u)) {
      if (stopped_) return true;
      std::size_t w = v_.transitions()[e].to;
      if (!in_scc_[w]) continue;
      if (w == start_) {
        path_.push_back(e);
        if (++count_ > budget_) throw BudgetExceeded("simple-cycle budget exceeded");
        if (!emit_(Cycle{path_})) stopped_ = true;
        path_.pop_back();
        found = true;
      } else if (!blocked_[w]) {
        path_.push_back(e);
        if (circuit(w)) found = true;
        path_.pop_back();
      }
    }
    if (found) {
      unblock(u);
    } else {
      for (auto e : v_.outgoing(u)) {
        std::size_t w = v_.transitions()[e].to;
        if (!in_scc_[w]) continue;
        auto& b = blocked_by_[w];
        if (std::find(b.begin(), b.end(), u) == b.end()) b.push_back(u);
      }
    }
    return found;
  }

  const Vass& v_;
  std::size_t budget_;
  std::function<bool(const Cycle&)> emit_;
  std::vector<bool> in_scc_;
  std::vector<bool> blocked_;
  std::vector<std::vector<std::size_t>> blocked_by_;
  std::vector<std::size_t> path_;
  std::size_t start_ = 0;
  std::size_t count_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::vector<Cycle> simple_cycles(const Vass& v, std::size_t budget) {
  std::vector<Cycle> out;
  CycleEnumerator e(v, budget, [&](const Cycle& c) {
    out.push_back(c);
    return true;
  });
  e.run();
  return out;
}

FlatnessReport is_flat(const Vass& v, std::size_t budget) {
  FlatnessReport report;
  std::vector<std::optional<Cycle>> first_on(v.states().size());
  CycleEnumerator e(v, budget, [&](const Cycle& c) {
    for (auto t : c.transitions) {
      std::size_t s = v.transitions()[t].from;
      if (first_on[s]) {
        report.is_flat = false;
        report.witness = std::make_pair(*first_on[s], c);
        report.shared_state = s;
        return false;
      }
    }
    for (auto t : c.transitions) first_on[v.transitions()[t].from] = c;
    return true;
  });
  e.run();
  report.cycles_seen = e.count();
  return report;
}

}  // namespace vasskit
