#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vasskit/families.hpp"
#include "vasskit/json_io.hpp"
#include "vasskit/lang.hpp"
#include "vasskit/search.hpp"

namespace vasskit::experiments {

// ---------------------------------------------------------------------------
// single-instance checks shared by the CLI and the test suites

/// Every final of weak_mult(c, d) started at (x0, y0) satisfies
/// x1 + y1 <= (x0 + y0) c / d, with x1 = (x0 + y0) c / d exactly when x is
/// zero on leaving the first loop and y1 = 0.
struct WeakMultOutcome {
  bool inequality = true;
  bool equality_matches_probe = true;
  bool equality_seen = false;
  bool exhaustive = true;
  std::string counterexample;
};
WeakMultOutcome check_weak_mult(const BigInt& c, const BigInt& d, const BigInt& x0, const BigInt& y0);

/// Final values of x at the halt line of weak(b), explored with bound 2b.
struct WeakOutcome {
  std::set<BigInt> finals;
  bool exhaustive = true;
  SearchStats stats;
};
WeakOutcome check_weak(const BigInt& b);

/// gen_exp_fixed(n, x0) with bound (n + 2) x0.
struct ExpFixedOutcome {
  bool halts = false;
  BigInt runs = 0;
  bool exhaustive = true;
  std::optional<BigInt> shortest;
};
ExpFixedOutcome check_exp_fixed(unsigned n, const BigInt& x0);

/// Maximally iterating run of gen_exp(n) with x pumped to N(n).
Replay canonical_exp(unsigned n, const lang::FlatProgram& p, const Vass& v);

/// Finals of HP(c, d) from (x0, y0, z0), checked against the power bound and
/// the divisibility characterisation of exact finals.
struct HpOutcome {
  bool inequality = true;
  bool exact_exists = false;
  /// Every exact final has y1 = z1 = 0.
  bool exact_has_zero_rest = true;
  /// Some exact final has y1 = z1 = 0.
  bool exact_zero_rest_exists = false;
  bool exhaustive = true;
  std::string counterexample;
};
HpOutcome check_hp(const BigInt& c, const BigInt& d, const BigInt& x0, const BigInt& y0, const BigInt& z0);

/// Bounded search on gen_np with bound 8 N(n) (k + 1).
struct NpOutcome {
  bool flat = false;
  std::size_t dimension = 0;
  Verdict verdict = Verdict::ExhaustedWithinBound;
  std::optional<Run> run;
  SearchStats stats;
};
NpOutcome check_np(const families::NpInstance& inst, families::NpMutation mutation = families::NpMutation::None);

/// Changes of f and u over each component along a run of gen_np, in
/// execution order, keyed by the component's label.
struct ComponentEffect {
  std::string label;
  BigInt f_delta;
  BigInt u_delta;
};
std::vector<ComponentEffect> component_effects(const lang::FlatProgram& p, const Vass& v, const Run& run);

/// gen_2exp_fixed(k, pump) searched with bound 4 pump.
ReachResult solve_2exp_fixed(unsigned k, const BigInt& pump);

/// Maximally iterating run of gen_2exp(k) with the pump at N_can.
Replay canonical_2exp(unsigned k, const lang::FlatProgram& p, const Vass& v);

// ---------------------------------------------------------------------------
// measure

struct MeasureOptions {
  std::optional<BigInt> bound;
  std::size_t max_configs = 20'000'000;
  bool timing = true;
  /// For the np family: the set S; the parameter is s0.
  std::vector<BigInt> np_set{1, 2};
};

struct ReportRow {
  std::string family;
  std::string parameter;
  BigInt size_unary = 0;
  BigInt size_binary = 0;
  std::optional<bool> flat;
  std::string search;
  std::optional<BigInt> shortest_length;
  std::optional<BigInt> canonical_length;
  std::optional<BigInt> max_final;
  std::optional<bool> oracle;
  SearchStats stats;
  std::string error;
  std::optional<double> seconds;
};

std::vector<ReportRow> measure(const std::string& family, unsigned from, unsigned to, const MeasureOptions& options);
Json to_json(const std::vector<ReportRow>& rows);
std::string to_text(const std::vector<ReportRow>& rows);

// ---------------------------------------------------------------------------
// verify

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::string detail;
  Json counterexample;
};

struct SuiteResult {
  std::string suite;
  std::vector<PropertyResult> properties;
  bool passed() const;
};

struct VerifyOptions {
  families::NpMutation np_mutation = families::NpMutation::None;
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for unknown suites.
std::vector<SuiteResult> verify(const std::string& suite, const VerifyOptions& options = {});
Json to_json(const std::vector<SuiteResult>& suites);
std::string to_text(const std::vector<SuiteResult>& suites);

}  // namespace vasskit::experiments
