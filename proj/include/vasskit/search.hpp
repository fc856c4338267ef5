#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "vasskit/vass.hpp"

namespace vasskit {

struct SearchBudget {
  /// Per-component maximum; configurations exceeding it are pruned.
  BigInt counter_bound = 0;
  std::size_t max_configs = 20'000'000;
  std::optional<std::size_t> max_depth;
};

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t frontier_peak = 0;
  std::size_t depth = 0;
  /// Successors discarded because a component exceeded the bound. Zero means
  /// the bound never mattered and the exploration is exhaustive outright.
  std::size_t pruned = 0;

  bool operator==(const SearchStats&) const = default;
};

enum class Verdict { Found, ExhaustedWithinBound, BudgetExceeded };

std::string to_string(Verdict v);

struct ReachResult {
  Verdict verdict = Verdict::ExhaustedWithinBound;
  std::optional<Run> run;
  SearchStats stats;
};

/// Breadth-first search from `start` (default: the source) for the target.
/// Found runs are of minimum length among runs within the bound; ties are
/// broken by transition order.
ReachResult shortest_halting(const Vass& v, const SearchBudget& budget,
                             const std::optional<Configuration>& start = std::nullopt);

/// Records the value of `counter` each time `transition` is taken; the last
/// recorded value is kept with the configuration.
struct Probe {
  std::size_t transition = 0;
  std::size_t counter = 0;
};

struct ObservedConfiguration {
  Vector vector;
  /// One entry per probe; nullopt if that transition was never taken.
  std::vector<std::optional<BigInt>> probes;

  auto operator<=>(const ObservedConfiguration&) const = default;
};

struct ExploreOptions {
  std::optional<Configuration> start;
  /// Configurations at this state are collected and not expanded further.
  std::optional<std::size_t> observe_state;
  std::vector<Probe> probes;
};

struct Observation {
  std::set<ObservedConfiguration> configurations;
  SearchStats stats;
};

/// Exhaustive bounded exploration. Throws BudgetExceeded.
Observation observe(const Vass& v, const SearchBudget& budget, const ExploreOptions& options);

/// Values of `counter` over all reachable configurations at `state`
/// (default: the target state's line, i.e. before any halt completion).
std::set<BigInt> final_values(const Vass& v, std::size_t counter, const SearchBudget& budget,
                              std::optional<std::size_t> state = std::nullopt,
                              const std::optional<Configuration>& start = std::nullopt);

struct PathCount {
  /// Saturates at the cutoff.
  BigInt count = 0;
  bool saturated = false;
  /// Some path to the target lies on a cycle of the bounded graph, so the
  /// count is only over paths of length at most max_depth.
  bool cyclic = false;
  SearchStats stats;
};

/// Number of distinct transition sequences from the source to the target
/// that stay within the bound. Throws BudgetExceeded.
PathCount count_halting_runs(const Vass& v, const SearchBudget& budget, const BigInt& cutoff = 1000,
                             const std::optional<Configuration>& start = std::nullopt);

}  // namespace vasskit
