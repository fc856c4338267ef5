#include "vasskit/vass.hpp"

#include <algorithm>
#include <numeric>

namespace vasskit {

namespace {

bool delta_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const BigInt& x, const BigInt& y) { return cmp(x, y) < 0; });
}

void check_vector(const Vector& v, std::size_t dimension, const char* what) {
  if (v.size() != dimension) {
    throw VassError(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                    std::to_string(dimension));
  }
  for (const auto& x : v) {
    if (x < 0) throw VassError(std::string(what) + " has a negative component");
  }
}

}  // namespace

Vass::Vass(std::size_t dimension, std::vector<std::string> states, std::vector<TransitionSpec> transitions,
           ConfigSpec source, ConfigSpec target)
    : dimension_(dimension) {
  if (dimension == 0) throw VassError("dimension must be positive");
  std::sort(states.begin(), states.end());
  if (std::adjacent_find(states.begin(), states.end()) != states.end()) {
    throw VassError("duplicate state names");
  }
  states_ = std::move(states);
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);

  transitions_.reserve(transitions.size());
  for (auto& spec : transitions) {
    if (spec.delta.size() != dimension_) {
      throw VassError("transition " + spec.from + " -> " + spec.to + " has wrong dimension");
    }
    auto from = find_state(spec.from);
    auto to = find_state(spec.to);
    if (!from || !to) throw VassError("transition endpoint not a state: " + spec.from + " -> " + spec.to);
    transitions_.push_back(Transition{*from, std::move(spec.delta), *to});
  }
  std::sort(transitions_.begin(), transitions_.end(), [](const Transition& a, const Transition& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return delta_less(a.delta, b.delta);
  });
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

  out_offsets_.assign(states_.size() + 1, 0);
  for (const auto& t : transitions_) ++out_offsets_[t.from + 1];
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  out_edges_.resize(transitions_.size());
  // Transitions are sorted by source, so the edge list is just 0..|T|-1.
  std::iota(out_edges_.begin(), out_edges_.end(), std::size_t{0});

  check_vector(source.vector, dimension_, "source vector");
  check_vector(target.vector, dimension_, "target vector");
  source_ = Configuration{state_index(source.state), std::move(source.vector)};
  target_ = Configuration{state_index(target.state), std::move(target.vector)};
}

std::optional<std::size_t> Vass::find_state(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vass::state_index(const std::string& name) const {
  auto i = find_state(name);
  if (!i) throw VassError("unknown state '" + name + "'");
  return *i;
}

std::span<const std::size_t> Vass::outgoing(std::size_t state) const {
  return std::span<const std::size_t>(out_edges_).subspan(out_offsets_[state],
                                                           out_offsets_[state + 1] - out_offsets_[state]);
}

std::optional<Configuration> try_step(const Configuration& c, const Transition& t) {
  if (c.state != t.from || c.vector.size() != t.delta.size()) return std::nullopt;
  Configuration out{t.to, c.vector};
  for (std::size_t i = 0; i < out.vector.size(); ++i) {
    out.vector[i] += t.delta[i];
    if (out.vector[i] < 0) return std::nullopt;
  }
  return out;
}

Configuration step(const Configuration& c, const Transition& t) {
  if (c.state != t.from) throw WrongState("transition leaves state " + std::to_string(t.from) +
                                          ", configuration is in state " + std::to_string(c.state));
  if (c.vector.size() != t.delta.size()) throw VassError("dimension mismatch");
  Configuration out{t.to, c.vector};
  for (std::size_t i = 0; i < out.vector.size(); ++i) {
    out.vector[i] += t.delta[i];
    if (out.vector[i] < 0) throw NegativeCounter(i);
  }
  return out;
}

Run Run::from_steps(Configuration initial, const std::vector<std::size_t>& steps) {
  Run r{std::move(initial), {}};
  r.segments.reserve(steps.size());
  for (auto s : steps) r.segments.push_back(RunSegment{{s}, 1});
  return r;
}

BigInt Run::length() const {
  BigInt total = 0;
  for (const auto& s : segments) total += s.repeat * static_cast<unsigned long>(s.path.size());
  return total;
}

std::vector<std::size_t> Run::steps(std::size_t limit) const {
  if (length() > static_cast<unsigned long>(limit)) {
    throw std::length_error("run too long to flatten");
  }
  std::vector<std::size_t> out;
  for (const auto& s : segments) {
    for (unsigned long r = 0; r < s.repeat.get_ui(); ++r) out.insert(out.end(), s.path.begin(), s.path.end());
  }
  return out;
}

SegmentOutcome apply_segment(const Vass& v, const Configuration& c, const RunSegment& seg) {
  const auto& ts = v.transitions();
  const std::size_t d = v.dimension();
  const std::size_t len = seg.path.size();
  if (len == 0 || seg.repeat < 1) return {std::nullopt, 0, "empty segment"};
  for (std::size_t j = 0; j < len; ++j) {
    if (seg.path[j] >= ts.size()) {
      return {std::nullopt, BigInt(static_cast<unsigned long>(j)), "not a transition of the VASS"};
    }
  }
  // Chaining: each transition must leave where the previous one arrived.
  std::size_t at = c.state;
  for (std::size_t j = 0; j < len; ++j) {
    const auto& t = ts[seg.path[j]];
    if (t.from != at) return {std::nullopt, BigInt(static_cast<unsigned long>(j)), "transition leaves the wrong state"};
    at = t.to;
  }
  if (seg.repeat > 1 && at != c.state) {
    return {std::nullopt, BigInt(static_cast<unsigned long>(len)), "repeated segment is not a cycle"};
  }

  // prefix[j] = sum of the first j+1 deltas of one iteration.
  std::vector<Vector> prefix(len, Vector(d, 0));
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      prefix[j][i] = (j ? prefix[j - 1][i] : BigInt(0)) + ts[seg.path[j]].delta[i];
    }
  }
  const Vector& total = prefix.back();

  // In iteration r after step j, component i equals c_i + prefix_j,i + r*total_i:
  // linear in r, so it is minimal at r = 0 or r = repeat-1. Find the first
  // failing (r, j) in lexicographic order.
  auto first_failure_in = [&](const BigInt& r) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < len; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        if (c.vector[i] + prefix[j][i] + r * total[i] < 0) return j;
      }
    }
    return std::nullopt;
  };
  const BigInt last = seg.repeat - 1;
  if (auto j = first_failure_in(0)) {
    return {std::nullopt, BigInt(static_cast<unsigned long>(*j)), "counter goes negative"};
  }
  if (last > 0 && first_failure_in(last)) {
    std::optional<BigInt> first_r;
    for (std::size_t j = 0; j < len; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        if (total[i] >= 0) continue;
        BigInt base = c.vector[i] + prefix[j][i];  // >= 0 since iteration 0 passed
        BigInt r = base / (-total[i]) + 1;
        if (r <= last && (!first_r || r < *first_r)) first_r = r;
      }
    }
    auto j = first_failure_in(*first_r);
    return {std::nullopt, *first_r * static_cast<unsigned long>(len) + static_cast<unsigned long>(*j),
            "counter goes negative"};
  }
  Configuration next{at, c.vector};
  for (std::size_t i = 0; i < d; ++i) next.vector[i] += seg.repeat * total[i];
  return {std::move(next), 0, {}};
}

RunCheck validate_run(const Vass& v, const Run& r) {
  RunCheck out;
  if (r.initial != v.source()) {
    out.failure_index = 0;
    out.reason = "initial configuration differs from the source";
    return out;
  }
  Configuration cur = r.initial;
  BigInt offset = 0;
  for (const auto& seg : r.segments) {
    auto res = apply_segment(v, cur, seg);
    if (!res.next) {
      out.failure_index = offset + res.failed_at;
      out.reason = res.reason;
      return out;
    }
    cur = std::move(*res.next);
    offset += seg.repeat * static_cast<unsigned long>(seg.path.size());
  }
  out.valid = true;
  out.halting = cur == v.target();
  out.final = std::move(cur);
  return out;
}

BigInt run_peak(const Vass& v, const Run& r) {
  Configuration cur = r.initial;
  BigInt peak = 0;
  for (const auto& x : cur.vector) peak = std::max(peak, x);
  const auto& ts = v.transitions();
  for (const auto& seg : r.segments) {
    // Extremes of a repeated cycle occur in its first or last iteration.
    Vector first = cur.vector;
    for (auto t : seg.path) {
      for (std::size_t i = 0; i < first.size(); ++i) {
        first[i] += ts.at(t).delta[i];
        peak = std::max(peak, BigInt(first[i]));
      }
    }
    if (seg.repeat > 1) {
      Vector total(first.size());
      for (std::size_t i = 0; i < first.size(); ++i) total[i] = first[i] - cur.vector[i];
      Vector last = cur.vector;
      for (std::size_t i = 0; i < last.size(); ++i) last[i] += (seg.repeat - 1) * total[i];
      for (auto t : seg.path) {
        for (std::size_t i = 0; i < last.size(); ++i) {
          last[i] += ts[t].delta[i];
          peak = std::max(peak, BigInt(last[i]));
        }
      }
      cur.vector = std::move(last);
    } else {
      cur.vector = std::move(first);
    }
  }
  return peak;
}

BigInt vass_size(const Vass& v, Encoding encoding) {
  BigInt s = 0;
  for (const auto& t : v.transitions()) {
    BigInt here = 0;
    for (const auto& x : t.delta) {
      if (encoding == Encoding::Unary) {
        here += abs(x);
      } else {
        here += static_cast<unsigned long>(bit_length(x));
      }
    }
    s = std::max(s, here);
  }
  return BigInt(static_cast<unsigned long>(v.states().size())) +
         BigInt(static_cast<unsigned long>(v.transitions().size())) * s;
}

}  // namespace vasskit
