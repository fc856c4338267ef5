#pragma once

#include <optional>
#include <vector>

#include "vasskit/arith.hpp"
#include "vasskit/fractions.hpp"
#include "vasskit/program.hpp"
#include "vasskit/replay.hpp"

namespace vasskit::families {

using lang::CounterProgram;

/// Fragment over x, y: move x into y, then trade d of y for c of x. c > d >= 1.
CounterProgram gen_weak_mult(const BigInt& c, const BigInt& d);

/// Weakly computes b >= 1 in x, consuming the bits of b oldest first.
/// Ends with a halt that tests nothing.
CounterProgram gen_weak(const BigInt& b);

/// Pump x = y >= 1, multiply x by 2/1, 3/2, ..., (n+1)/n in reverse order,
/// then drain x against y. Counters x, y, z; halt tests y.
CounterProgram gen_exp(unsigned n);
/// Same, with the pump replaced by a single line setting x = y = x0.
CounterProgram gen_exp_fixed(unsigned n, const BigInt& x0);

/// Loop ordinal of the pump in gen_exp and gen_2exp.
inline constexpr std::size_t kExpPumpLoop = 0;

struct NpInstance {
  BigInt s0;
  std::vector<BigInt> s;
  /// Least n with N(n) >= s0, s_1, ..., s_k.
  unsigned n = 0;
  BigInt big_n;
  BitString bits;
  /// Index of the top bit of N(n).
  std::size_t m = 0;

  /// Validates s0 >= 1, a nonempty S of positive values.
  static NpInstance make(BigInt s0, std::vector<BigInt> s);
  std::size_t k() const { return s.size(); }
};

/// Counters of the NP reduction, in dimension order.
const std::vector<std::string>& np_counters();

/// The initialisation program: weakly computes e = N(n) and f = N(n)(k+1)
/// and checks exactness with the exponential gadget. With `with_halt` it
/// ends with halt x', y; otherwise it is the prefix used by gen_np.
CounterProgram gen_init(const NpInstance& inst, bool with_halt);

/// Deliberate defects for negative-control experiments.
enum class NpMutation {
  None,
  /// The target component only adds the top bit of s0 to u.
  DropTargetLowBits,
  /// The final halt tests only y, u and f, which lets a run that drains y to
  /// zero during initialisation halt on negative instances.
  ShortHalt,
};

/// I' followed by the s0 component and a goto-DAG choosing, for each s_i,
/// either the component that subtracts s_i from u or the one that does not.
/// Counters x x' y z e f u; halt tests x, x', y, u, f.
CounterProgram gen_np(const NpInstance& inst, NpMutation mutation = NpMutation::None);

/// Schedule for gen_np's explicit gotos: take the subtracting branch of s_i
/// iff chosen[i].
ReplaySchedule np_schedule(const lang::FlatProgram& p, const std::vector<bool>& chosen);

/// Some subset of s sums to s0 (the empty subset sums to 0). |s| <= 25.
bool subset_sum_brute(const BigInt& s0, const std::vector<BigInt>& s);

/// Outer loop over the two weak-multiplication loops plus z -= 1.
/// Counters x, y, z. Requires c > d and gcd(c, d) = 1.
CounterProgram gen_hp(const BigInt& c, const BigInt& d);

struct Family2ExpMeta {
  unsigned k = 0;
  FractionSequence fractions;
  /// Product of b_i^(2^i): the pump value of the maximally iterating run.
  BigInt n_can;
  /// b_k^(2^k): every halting pump value is a multiple of it.
  BigInt m;
};

Family2ExpMeta family_2exp_meta(unsigned k);

/// Counters t, x, y, z. Pump t = x, multiply x by f_i^(2^i) for i = k..1,
/// drain t -= b, x -= a; halt tests t.
CounterProgram gen_2exp(unsigned k);
/// Same, with the pump replaced by a single line setting t = x = pump.
CounterProgram gen_2exp_fixed(unsigned k, const BigInt& pump);

}  // namespace vasskit::families
