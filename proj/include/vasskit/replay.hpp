#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vasskit/program.hpp"
#include "vasskit/vass.hpp"

namespace vasskit {

/// The schedule could not be followed: a counter would go negative before the
/// loop's scheduled exit, or a drained counter never reaches zero.
class PolicyStuck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The schedule does not say which way an explicit goto goes.
class PolicyIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Choices that are not fixed by maximal iteration. Every loop not listed in
/// loop_counts is iterated until the counter its body decrements first
/// reaches zero.
struct ReplaySchedule {
  /// Fixed iteration count per visit, keyed by loop ordinal (program order
  /// of loop headers).
  std::map<std::size_t, BigInt> loop_counts;
  /// Chosen target line of an explicit two-way goto, keyed by its line.
  std::map<std::size_t, std::size_t> branch_targets;
};

struct LoopVisit {
  std::size_t ordinal = 0;
  std::size_t header_line = 0;
  BigInt iterations = 0;
  /// Counter values when the loop was left.
  Vector exit_vector;

  bool operator==(const LoopVisit&) const = default;
};

struct RunProbe {
  /// Every loop visit in execution order.
  std::vector<LoopVisit> visits;

  /// Visits of one loop, in order.
  std::vector<LoopVisit> of(std::size_t ordinal) const;
  bool operator==(const RunProbe&) const = default;
};

struct Replay {
  Run run;
  RunProbe probe;
  Configuration final;
  /// Configuration on reaching the halt line, before untested counters are
  /// drained.
  std::optional<Configuration> at_halt;
  bool halting = false;
};

/// Walks the program under the schedule, drains untested counters at halt,
/// and returns the run together with its loop probes. Straight-line loops
/// are emitted as repeated cycle segments. Throws PolicyStuck or
/// PolicyIncomplete.
Replay replay_canonical(const lang::FlatProgram& p, const Vass& v, const ReplaySchedule& schedule = {},
                        const std::optional<Configuration>& start = std::nullopt);

/// Reconstructs loop probes from a run of compile(p) without trusting the
/// replay that produced it.
RunProbe recompute_probes(const lang::FlatProgram& p, const Vass& v, const Run& run);

}  // namespace vasskit
