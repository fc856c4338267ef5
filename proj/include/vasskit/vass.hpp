#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vasskit/arith.hpp"

namespace vasskit {

using Vector = std::vector<BigInt>;

class VassError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A step would drive a counter below zero.
class NegativeCounter : public VassError {
 public:
  explicit NegativeCounter(std::size_t component)
      : VassError("counter " + std::to_string(component) + " would become negative"), component_(component) {}
  std::size_t component() const { return component_; }

 private:
  std::size_t component_;
};

/// A transition was applied in a state it does not leave from.
class WrongState : public VassError {
 public:
  using VassError::VassError;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Transition {
  std::size_t from = 0;
  Vector delta;
  std::size_t to = 0;

  bool operator==(const Transition&) const = default;
};

struct Configuration {
  std::size_t state = 0;
  Vector vector;

  bool operator==(const Configuration&) const = default;
};

/// A reachability instance: control graph plus source and target
/// configurations. States are kept sorted by name and transitions sorted by
/// (from, to, delta), so indices are canonical for a given instance.
class Vass {
 public:
  struct TransitionSpec {
    std::string from;
    Vector delta;
    std::string to;
  };
  struct ConfigSpec {
    std::string state;
    Vector vector;
  };

  Vass(std::size_t dimension, std::vector<std::string> states, std::vector<TransitionSpec> transitions,
       ConfigSpec source, ConfigSpec target);

  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Configuration& source() const { return source_; }
  const Configuration& target() const { return target_; }

  const std::string& state_name(std::size_t i) const { return states_.at(i); }
  std::optional<std::size_t> find_state(const std::string& name) const;
  std::size_t state_index(const std::string& name) const;

  /// Indices of transitions leaving `state`, in canonical order.
  std::span<const std::size_t> outgoing(std::size_t state) const;

  bool operator==(const Vass& o) const {
    return dimension_ == o.dimension_ && states_ == o.states_ && transitions_ == o.transitions_ &&
           source_ == o.source_ && target_ == o.target_;
  }

 private:
  std::size_t dimension_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> out_edges_;
  Configuration source_;
  Configuration target_;
};

/// Successor of `c` under `t`. Throws WrongState or NegativeCounter.
Configuration step(const Configuration& c, const Transition& t);
std::optional<Configuration> try_step(const Configuration& c, const Transition& t);

/// A path applied `repeat` times in a row. When repeat > 1 the path must be a
/// cycle. Long canonical runs are stored this way instead of step by step.
struct RunSegment {
  std::vector<std::size_t> path;
  BigInt repeat = 1;

  bool operator==(const RunSegment&) const = default;
};

struct Run {
  Configuration initial;
  std::vector<RunSegment> segments;

  static Run from_steps(Configuration initial, const std::vector<std::size_t>& steps);

  /// Number of transitions, counting repetitions.
  BigInt length() const;
  /// Flattened transition sequence. Throws if longer than `limit`.
  std::vector<std::size_t> steps(std::size_t limit = 50'000'000) const;

  bool operator==(const Run&) const = default;
};

struct RunCheck {
  bool valid = false;
  bool halting = false;
  /// 0-based index of the first illegal step (counting repetitions).
  std::optional<BigInt> failure_index;
  std::string reason;
  std::optional<Configuration> final;
};

RunCheck validate_run(const Vass& v, const Run& r);

/// Largest counter value seen anywhere along a valid run.
BigInt run_peak(const Vass& v, const Run& r);

/// Configuration after applying one segment, or nullopt plus the offset of
/// the first failing step inside it.
struct SegmentOutcome {
  std::optional<Configuration> next;
  BigInt failed_at = 0;
  std::string reason;
};
SegmentOutcome apply_segment(const Vass& v, const Configuration& c, const RunSegment& seg);

// ---------------------------------------------------------------------------
// flatness

/// A simple cycle as transition indices, rotated to start at its smallest
/// state so that rotations of one cycle are never counted twice.
struct Cycle {
  std::vector<std::size_t> transitions;
  bool operator==(const Cycle&) const = default;
};

struct FlatnessReport {
  bool is_flat = true;
  std::optional<std::pair<Cycle, Cycle>> witness;
  std::optional<std::size_t> shared_state;
  std::size_t cycles_seen = 0;
};

inline constexpr std::size_t kDefaultCycleBudget = 1'000'000;

/// Every simple cycle of the control graph (Johnson's algorithm over edges,
/// so parallel transitions give distinct cycles). Throws BudgetExceeded.
std::vector<Cycle> simple_cycles(const Vass& v, std::size_t budget = kDefaultCycleBudget);

/// Flat iff no state lies on two distinct simple cycles. Stops at the first
/// witness. Throws BudgetExceeded.
FlatnessReport is_flat(const Vass& v, std::size_t budget = kDefaultCycleBudget);

// ---------------------------------------------------------------------------
// size

enum class Encoding { Unary, Binary };

/// |Q| + |T| * s with s the largest representation size of a delta.
BigInt vass_size(const Vass& v, Encoding encoding);

}  // namespace vasskit
