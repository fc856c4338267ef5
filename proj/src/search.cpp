#include "vasskit/search.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <limits>

namespace vasskit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Found: return "found";
    case Verdict::ExhaustedWithinBound: return "exhausted_within_bound";
    case Verdict::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Edge {
  std::uint32_t from;
  std::uint32_t to;
};

struct EngineConfig {
  const Vass* vass;
  SearchBudget budget;
  Configuration start;
  std::vector<Probe> probes;
  std::optional<std::size_t> observe_state;
  bool stop_at_target = false;
  bool record_edges = false;
};

// Breadth-first explorer over configurations whose components fit in T.
// Nodes are numbered in discovery order, which is also the BFS queue order.
template <class T>
class Engine {
 public:
  explicit Engine(const EngineConfig& cfg) : cfg_(cfg), v_(*cfg.vass) {
    d_ = v_.dimension();
    width_ = d_ + cfg_.probes.size();
    bound_ = cfg_.budget.counter_bound.get_ui();
    const auto& ts = v_.transitions();
    deltas_.resize(ts.size() * d_);
    usable_.assign(ts.size(), true);
    always_pruned_.assign(ts.size(), false);
    for (std::size_t t = 0; t < ts.size(); ++t) {
      for (std::size_t c = 0; c < d_; ++c) {
        const BigInt& x = ts[t].delta[c];
        if (x < -BigInt(static_cast<unsigned long>(bound_))) {
          usable_[t] = false;
        } else if (x > BigInt(static_cast<unsigned long>(bound_))) {
          always_pruned_[t] = true;
        } else {
          deltas_[t * d_ + c] = x.get_si();
        }
      }
    }
    probe_of_.assign(ts.size(), {});
    for (std::size_t i = 0; i < cfg_.probes.size(); ++i) probe_of_.at(cfg_.probes[i].transition).push_back(i);
    rehash(1 << 12);
  }

  /// Returns the index of the target node if it was found and stop_at_target.
  std::optional<std::uint32_t> run() {
    std::vector<T> buf(width_);
    for (std::size_t c = 0; c < d_; ++c) {
      if (cfg_.start.vector[c] > bound_) {
        throw std::invalid_argument("start configuration exceeds the counter bound");
      }
      buf[c] = static_cast<T>(cfg_.start.vector[c].get_ui());
    }
    insert(static_cast<std::uint32_t>(cfg_.start.state), buf.data(), kNone, kNone, 0);
    if (cfg_.stop_at_target && is_target(0)) return 0u;

    std::vector<std::int64_t> next(d_);
    for (std::size_t i = 0; i < states_.size(); ++i) {
      stats_.frontier_peak = std::max(stats_.frontier_peak, states_.size() - i);
      std::uint32_t state = states_[i];
      std::uint32_t depth = depth_[i];
      if (cfg_.observe_state && state == *cfg_.observe_state) continue;
      if (cfg_.budget.max_depth && depth >= *cfg_.budget.max_depth) continue;
      ++stats_.expanded;
      for (std::size_t t : v_.outgoing(state)) {
        if (!usable_[t]) continue;
        const T* cur = node(i);
        bool ok = true;
        bool over = always_pruned_[t];
        for (std::size_t c = 0; c < d_; ++c) {
          std::int64_t x = static_cast<std::int64_t>(cur[c]) + deltas_[t * d_ + c];
          if (x < 0) {
            ok = false;
            break;
          }
          if (x > static_cast<std::int64_t>(bound_)) over = true;
          next[c] = x;
        }
        if (!ok) continue;
        if (over) {
          ++stats_.pruned;
          continue;
        }
        for (std::size_t c = 0; c < d_; ++c) buf[c] = static_cast<T>(next[c]);
        for (std::size_t p = 0; p < cfg_.probes.size(); ++p) buf[d_ + p] = cur[d_ + p];
        for (std::size_t p : probe_of_[t]) buf[d_ + p] = static_cast<T>(next[cfg_.probes[p].counter] + 1);
        std::uint32_t to = static_cast<std::uint32_t>(v_.transitions()[t].to);
        auto [idx, fresh] = insert(to, buf.data(), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t),
                                   depth + 1);
        if (cfg_.record_edges) edges_.push_back({static_cast<std::uint32_t>(i), idx});
        if (fresh && cfg_.stop_at_target && is_target(idx)) return idx;
      }
    }
    return std::nullopt;
  }

  std::size_t size() const { return states_.size(); }
  std::uint32_t state(std::size_t i) const { return states_[i]; }
  const T* node(std::size_t i) const { return data_.data() + i * width_; }
  const SearchStats& stats() const { return stats_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool is_target(std::size_t i) const {
    if (states_[i] != v_.target().state) return false;
    const T* x = node(i);
    for (std::size_t c = 0; c < d_; ++c) {
      if (v_.target().vector[c] != static_cast<unsigned long>(x[c])) return false;
    }
    return true;
  }

  Vector vector_of(std::size_t i) const {
    Vector out(d_);
    const T* x = node(i);
    for (std::size_t c = 0; c < d_; ++c) out[c] = static_cast<unsigned long>(x[c]);
    return out;
  }

  std::vector<std::optional<BigInt>> probes_of(std::size_t i) const {
    std::vector<std::optional<BigInt>> out;
    const T* x = node(i);
    for (std::size_t p = 0; p < cfg_.probes.size(); ++p) {
      T raw = x[d_ + p];
      out.push_back(raw == 0 ? std::nullopt : std::optional<BigInt>(static_cast<unsigned long>(raw - 1)));
    }
    return out;
  }

  std::vector<std::size_t> path_to(std::uint32_t i) const {
    std::vector<std::size_t> steps;
    while (parent_[i] != kNone) {
      steps.push_back(via_[i]);
      i = parent_[i];
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  }

 private:
  std::uint64_t hash(std::uint32_t state, const T* x) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ state;
    for (std::size_t c = 0; c < width_; ++c) {
      h ^= static_cast<std::uint64_t>(x[c]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
  }

  bool equal(std::uint32_t idx, std::uint32_t state, const T* x) const {
    return states_[idx] == state && std::memcmp(node(idx), x, width_ * sizeof(T)) == 0;
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kNone);
    mask_ = capacity - 1;
    for (std::uint32_t i = 0; i < states_.size(); ++i) {
      std::size_t s = hash(states_[i], node(i)) & mask_;
      while (slots_[s] != kNone) s = (s + 1) & mask_;
      slots_[s] = i;
    }
  }

  std::pair<std::uint32_t, bool> insert(std::uint32_t state, const T* x, std::uint32_t parent, std::uint32_t via,
                                        std::uint32_t depth) {
    std::size_t s = hash(state, x) & mask_;
    while (slots_[s] != kNone) {
      if (equal(slots_[s], state, x)) return {slots_[s], false};
      s = (s + 1) & mask_;
    }
    if (states_.size() >= cfg_.budget.max_configs) {
      throw BudgetExceeded("more than " + std::to_string(cfg_.budget.max_configs) + " configurations");
    }
    auto idx = static_cast<std::uint32_t>(states_.size());
    states_.push_back(state);
    data_.insert(data_.end(), x, x + width_);
    parent_.push_back(parent);
    via_.push_back(via);
    depth_.push_back(depth);
    stats_.depth = std::max<std::size_t>(stats_.depth, depth);
    slots_[s] = idx;
    if (states_.size() * 2 > slots_.size()) rehash(slots_.size() * 2);
    return {idx, true};
  }

  const EngineConfig& cfg_;
  const Vass& v_;
  std::size_t d_ = 0;
  std::size_t width_ = 0;
  unsigned long bound_ = 0;
  std::vector<std::int64_t> deltas_;
  std::vector<bool> usable_;
  std::vector<bool> always_pruned_;
  std::vector<std::vector<std::size_t>> probe_of_;

  std::vector<std::uint32_t> states_;
  std::vector<T> data_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> via_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::vector<Edge> edges_;
  SearchStats stats_;
};

void check_budget(const SearchBudget& b) {
  if (b.counter_bound < 0) throw std::invalid_argument("counter bound must be nonnegative");
  if (b.counter_bound >= BigInt(1ul << 31)) throw std::invalid_argument("counter bound too large for exhaustive search");
}

template <class F>
auto with_engine(const EngineConfig& cfg, F&& f) {
  // Probe slots hold value + 1, so the storage type must fit bound + 1.
  const BigInt& b = cfg.budget.counter_bound;
  if (b < 255) {
    Engine<std::uint8_t> e(cfg);
    return f(e);
  }
  if (b < 65535) {
    Engine<std::uint16_t> e(cfg);
    return f(e);
  }
  Engine<std::uint32_t> e(cfg);
  return f(e);
}

std::size_t default_observed_state(const Vass& v) {
  const std::string& name = v.state_name(v.target().state);
  auto plus = name.find('+');
  if (plus == std::string::npos) return v.target().state;
  return v.state_index(name.substr(0, plus));
}

}  // namespace

ReachResult shortest_halting(const Vass& v, const SearchBudget& budget, const std::optional<Configuration>& start) {
  check_budget(budget);
  EngineConfig cfg{&v, budget, start.value_or(v.source()), {}, std::nullopt, true, false};
  return with_engine(cfg, [&](auto& e) {
    ReachResult r;
    try {
      auto found = e.run();
      r.stats = e.stats();
      if (found) {
        r.verdict = Verdict::Found;
        r.run = Run::from_steps(cfg.start, e.path_to(*found));
        r.stats.depth = r.run->segments.size();
      } else {
        r.verdict = Verdict::ExhaustedWithinBound;
      }
    } catch (const BudgetExceeded&) {
      r.verdict = Verdict::BudgetExceeded;
      r.stats = e.stats();
    }
    return r;
  });
}

Observation observe(const Vass& v, const SearchBudget& budget, const ExploreOptions& options) {
  check_budget(budget);
  for (const auto& p : options.probes) {
    if (p.transition >= v.transitions().size() || p.counter >= v.dimension()) {
      throw std::out_of_range("probe refers to a missing transition or counter");
    }
  }
  EngineConfig cfg{&v, budget, options.start.value_or(v.source()), options.probes, options.observe_state, false,
                   false};
  return with_engine(cfg, [&](auto& e) {
    e.run();
    Observation out;
    out.stats = e.stats();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (options.observe_state && e.state(i) != *options.observe_state) continue;
      out.configurations.insert(ObservedConfiguration{e.vector_of(i), e.probes_of(i)});
    }
    return out;
  });
}

std::set<BigInt> final_values(const Vass& v, std::size_t counter, const SearchBudget& budget,
                              std::optional<std::size_t> state, const std::optional<Configuration>& start) {
  if (counter >= v.dimension()) throw std::out_of_range("counter index out of range");
  ExploreOptions options;
  options.start = start;
  options.observe_state = state.value_or(default_observed_state(v));
  std::set<BigInt> out;
  for (const auto& c : observe(v, budget, options).configurations) out.insert(c.vector[counter]);
  return out;
}

PathCount count_halting_runs(const Vass& v, const SearchBudget& budget, const BigInt& cutoff,
                             const std::optional<Configuration>& start) {
  check_budget(budget);
  // The whole bounded graph is explored so that cycles past max_depth are seen.
  SearchBudget explore = budget;
  explore.max_depth.reset();
  EngineConfig cfg{&v, explore, start.value_or(v.source()), {}, std::nullopt, false, true};
  return with_engine(cfg, [&](auto& e) {
    e.run();
    PathCount out;
    out.stats = e.stats();
    const std::size_t n = e.size();
    std::optional<std::uint32_t> target;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (e.is_target(i)) target = i;
    }
    if (!target) return out;

    std::vector<std::vector<std::uint32_t>> preds(n);
    for (const auto& edge : e.edges()) preds[edge.to].push_back(edge.from);
    std::vector<bool> live(n, false);
    std::deque<std::uint32_t> queue{*target};
    live[*target] = true;
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (auto p : preds[x]) {
        if (!live[p]) {
          live[p] = true;
          queue.push_back(p);
        }
      }
    }

    std::vector<std::vector<std::uint32_t>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& edge : e.edges()) {
      if (live[edge.from] && live[edge.to]) {
        succ[edge.from].push_back(edge.to);
        ++indegree[edge.to];
      }
    }
    std::vector<std::uint32_t> order;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (live[i] && indegree[i] == 0) order.push_back(i);
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (auto s : succ[order[k]]) {
        if (--indegree[s] == 0) order.push_back(s);
      }
    }
    std::size_t live_count = static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
    auto saturate = [&](BigInt& x) {
      if (x >= cutoff) {
        x = cutoff;
        out.saturated = true;
      }
    };

    if (order.size() == live_count) {
      std::vector<BigInt> ways(n, 0);
      if (live[0]) ways[0] = 1;
      for (auto x : order) {
        for (auto s : succ[x]) {
          ways[s] += ways[x];
          saturate(ways[s]);
        }
      }
      out.count = ways[*target];
      return out;
    }

    out.cyclic = true;
    if (!budget.max_depth) {
      out.count = cutoff;
      out.saturated = true;
      return out;
    }
    std::vector<BigInt> layer(n, 0), next(n, 0);
    layer[0] = 1;
    BigInt total = *target == 0 ? 1 : 0;
    for (std::size_t len = 1; len <= *budget.max_depth; ++len) {
      std::fill(next.begin(), next.end(), 0);
      for (std::uint32_t x = 0; x < n; ++x) {
        if (layer[x] == 0) continue;
        for (auto s : succ[x]) {
          next[s] += layer[x];
          if (next[s] > cutoff) next[s] = cutoff;
        }
      }
      layer.swap(next);
      total += layer[*target];
      saturate(total);
    }
    out.count = total;
    return out;
  });
}

}  // namespace vasskit
