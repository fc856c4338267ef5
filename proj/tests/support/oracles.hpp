#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vasskit/lang.hpp"
#include "vasskit/vass.hpp"

namespace oracle {

using vasskit::BigInt;

/// lcm{2..n+1}/(n+1) from the prime powers below n+1.
BigInt n_from_prime_powers(std::uint64_t n);
BigInt factorial(unsigned n);

using Point = std::pair<std::size_t, std::vector<long>>;

/// Reachable (line, vector) pairs of a goto-free program, by walking its
/// syntax tree directly. Lines are numbered as in the printed flat form:
/// a loop takes a header line, its body, and a back line. The halt line is
/// recorded on arrival only. Configurations with a counter above `bound`
/// are dropped.
std::set<Point> interpret(const vasskit::lang::CounterProgram& p, const std::vector<long>& start, long bound);

/// Reachable configurations at states named L<digits>, recorded when entered
/// from a different state, by plain breadth-first search over the VASS.
std::set<Point> vass_line_reach(const vasskit::Vass& v, const std::vector<long>& start, long bound);

/// Length of a shortest halting run by iterative deepening, or nullopt if
/// none exists up to `max_depth` steps within the bound.
std::optional<std::size_t> iddfs_shortest(const vasskit::Vass& v, long bound, std::size_t max_depth);

/// All halting paths of length <= max_depth within the bound, capped at cutoff.
std::size_t count_paths(const vasskit::Vass& v, long bound, std::size_t max_depth, std::size_t cutoff);

struct ProgramShape {
  std::size_t counters = 2;
  std::size_t max_statements = 5;
  std::size_t max_depth = 2;
  bool with_for = true;
  bool with_gotos = false;
  bool complete = true;
};

/// Random well-formed program. Update amounts are small so bounded
/// exploration stays cheap.
vasskit::lang::CounterProgram random_program(std::mt19937_64& rng, const ProgramShape& shape);

/// Random small VASS with dimension 1..2, 2..4 states and deltas in [-2, 2].
vasskit::Vass random_vass(std::mt19937_64& rng);

}  // namespace oracle
