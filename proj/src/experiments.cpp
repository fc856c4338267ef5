#include "vasskit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace vasskit::experiments {

using families::NpInstance;
using families::NpMutation;
using lang::FlatProgram;

namespace {

struct Compiled {
  FlatProgram program;
  Vass vass;
};

Compiled build(const lang::CounterProgram& p) {
  FlatProgram flat = lang::expand(p);
  Vass v = lang::compile(flat);
  return {std::move(flat), std::move(v)};
}

std::size_t zero_transition(const Compiled& c, std::size_t from_line, std::size_t to_line) {
  std::size_t from = c.vass.state_index(lang::line_state(c.program, from_line));
  std::size_t to = c.vass.state_index(lang::line_state(c.program, to_line));
  for (std::size_t t : c.vass.outgoing(from)) {
    const auto& tr = c.vass.transitions()[t];
    if (tr.to == to && std::all_of(tr.delta.begin(), tr.delta.end(), [](const BigInt& x) { return x == 0; })) {
      return t;
    }
  }
  throw std::logic_error("no zero transition between the given lines");
}

std::string vec_str(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out + ")";
}

BigInt ipow(const BigInt& b, const BigInt& e) { return vasskit::pow(b, e.get_ui()); }

}  // namespace

WeakMultOutcome check_weak_mult(const BigInt& c, const BigInt& d, const BigInt& x0, const BigInt& y0) {
  Compiled cp = build(families::gen_weak_mult(c, d));
  auto loops = lang::find_loops(cp.program);
  ExploreOptions options;
  options.start = Configuration{cp.vass.source().state, {x0, y0}};
  options.observe_state = cp.vass.target().state;
  options.probes.push_back(Probe{zero_transition(cp, loops.at(0).header, loops.at(0).exit), 0});
  const BigInt sum = x0 + y0;
  SearchBudget budget{std::max(BigInt(sum * c), BigInt(c))};
  Observation obs = observe(cp.vass, budget, options);

  WeakMultOutcome out;
  out.exhaustive = obs.stats.pruned == 0;
  for (const auto& f : obs.configurations) {
    const BigInt& x1 = f.vector[0];
    const BigInt& y1 = f.vector[1];
    const auto& xprime = f.probes[0];
    if (d * (x1 + y1) > c * sum) {
      out.inequality = false;
      out.counterexample = "final " + vec_str(f.vector) + " exceeds the bound";
    }
    bool equal = d * x1 == c * sum;
    bool probe_zero = xprime && *xprime == 0 && y1 == 0;
    out.equality_seen = out.equality_seen || equal;
    if (equal != probe_zero) {
      out.equality_matches_probe = false;
      out.counterexample = "final " + vec_str(f.vector) + " with x' = " + (xprime ? to_string(*xprime) : "none");
    }
  }
  return out;
}

WeakOutcome check_weak(const BigInt& b) {
  Compiled cp = build(families::gen_weak(b));
  ExploreOptions options;
  options.observe_state = cp.vass.state_index(lang::halt_state(cp.program));
  Observation obs = observe(cp.vass, SearchBudget{2 * b}, options);
  WeakOutcome out;
  out.exhaustive = obs.stats.pruned == 0;
  out.stats = obs.stats;
  for (const auto& f : obs.configurations) out.finals.insert(f.vector[0]);
  return out;
}

ExpFixedOutcome check_exp_fixed(unsigned n, const BigInt& x0) {
  Compiled cp = build(families::gen_exp_fixed(n, x0));
  SearchBudget budget{BigInt(n + 2) * x0};
  ReachResult r = shortest_halting(cp.vass, budget);
  if (r.verdict == Verdict::BudgetExceeded) throw BudgetExceeded("search budget exceeded");
  PathCount count = count_halting_runs(cp.vass, budget, 10);
  ExpFixedOutcome out;
  out.halts = r.verdict == Verdict::Found;
  if (r.run) out.shortest = r.run->length();
  out.runs = count.count;
  out.exhaustive = r.stats.pruned == 0 && count.stats.pruned == 0 && !count.cyclic;
  return out;
}

Replay canonical_exp(unsigned n, const FlatProgram& p, const Vass& v) {
  ReplaySchedule s;
  s.loop_counts[families::kExpPumpLoop] = compute_N(n) - 1;
  return replay_canonical(p, v, s);
}

HpOutcome check_hp(const BigInt& c, const BigInt& d, const BigInt& x0, const BigInt& y0, const BigInt& z0) {
  Compiled cp = build(families::gen_hp(c, d));
  ExploreOptions options;
  options.start = Configuration{cp.vass.source().state, {x0, y0, z0}};
  options.observe_state = cp.vass.target().state;
  const BigInt sum = x0 + y0;
  SearchBudget budget{sum * ipow(c, z0 + 1) + c + z0};
  Observation obs = observe(cp.vass, budget, options);
  HpOutcome out;
  out.exhaustive = obs.stats.pruned == 0;
  const BigInt exact_num = sum * ipow(c, z0);
  const BigInt exact_den = ipow(d, z0);
  for (const auto& f : obs.configurations) {
    const BigInt& x1 = f.vector[0];
    const BigInt& y1 = f.vector[1];
    const BigInt& z1 = f.vector[2];
    BigInt used = z0 - z1;
    if (used < 0 || ipow(d, used) * (x1 + y1) > sum * ipow(c, used)) {
      out.inequality = false;
      out.counterexample = "final " + vec_str(f.vector) + " exceeds the bound";
    }
    if (exact_den * x1 == exact_num) {
      out.exact_exists = true;
      if (y1 == 0 && z1 == 0) out.exact_zero_rest_exists = true;
      if (y1 != 0 || z1 != 0) {
        out.exact_has_zero_rest = false;
        out.counterexample = "exact final " + vec_str(f.vector) + " leaves y or z nonzero";
      }
    }
  }
  return out;
}

NpOutcome check_np(const NpInstance& inst, NpMutation mutation) {
  Compiled cp = build(families::gen_np(inst, mutation));
  NpOutcome out;
  out.flat = is_flat(cp.vass).is_flat;
  out.dimension = cp.vass.dimension();
  BigInt bound = 8 * inst.big_n * BigInt(static_cast<unsigned long>(inst.k() + 1));
  ReachResult r = shortest_halting(cp.vass, SearchBudget{bound, 50'000'000});
  out.verdict = r.verdict;
  out.run = std::move(r.run);
  out.stats = r.stats;
  return out;
}

std::vector<ComponentEffect> component_effects(const FlatProgram& p, const Vass& v, const Run& run) {
  std::map<std::size_t, std::string> label_of_state;
  for (const auto& [label, line] : p.labels) {
    if (line < p.lines.size()) label_of_state[v.state_index(lang::line_state(p, line))] = label;
  }
  const std::size_t f = p.counter_index("f");
  const std::size_t u = p.counter_index("u");
  std::vector<std::pair<std::string, Configuration>> marks;
  Configuration cur = run.initial;
  auto mark = [&] {
    auto it = label_of_state.find(cur.state);
    if (it != label_of_state.end()) marks.emplace_back(it->second, cur);
  };
  mark();
  for (std::size_t t : run.steps()) {
    std::size_t previous = cur.state;
    cur = step(cur, v.transitions()[t]);
    if (cur.state != previous) mark();
  }
  std::vector<ComponentEffect> out;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const auto& [label, start] = marks[i];
    const auto& end = marks[i + 1].second;
    out.push_back({label, end.vector[f] - start.vector[f], end.vector[u] - start.vector[u]});
  }
  return out;
}

ReachResult solve_2exp_fixed(unsigned k, const BigInt& pump) {
  Compiled cp = build(families::gen_2exp_fixed(k, pump));
  return shortest_halting(cp.vass, SearchBudget{4 * pump});
}

Replay canonical_2exp(unsigned k, const FlatProgram& p, const Vass& v) {
  ReplaySchedule s;
  s.loop_counts[families::kExpPumpLoop] = families::family_2exp_meta(k).n_can - 1;
  return replay_canonical(p, v, s);
}

// ---------------------------------------------------------------------------
// measure

namespace {

void fill_size(ReportRow& row, const Vass& v) {
  row.size_unary = vass_size(v, Encoding::Unary);
  row.size_binary = vass_size(v, Encoding::Binary);
  try {
    row.flat = is_flat(v).is_flat;
  } catch (const BudgetExceeded&) {
    row.flat.reset();
  }
}

void fill_search(ReportRow& row, const Vass& v, const BigInt& bound, const MeasureOptions& options) {
  if (bound >= BigInt(1ul << 31)) {
    row.search = "skipped";
    row.error = "bound " + to_string(bound) + " too large for exhaustive search";
    return;
  }
  ReachResult r = shortest_halting(v, SearchBudget{bound, options.max_configs});
  row.search = to_string(r.verdict);
  row.stats = r.stats;
  if (r.run) row.shortest_length = r.run->length();
}

ReportRow measure_row(const std::string& family, unsigned param, const MeasureOptions& options) {
  ReportRow row;
  row.family = family;
  row.parameter = std::to_string(param);
  if (family == "exp") {
    Compiled cp = build(families::gen_exp(param));
    fill_size(row, cp.vass);
    Replay canon = canonical_exp(param, cp.program, cp.vass);
    row.canonical_length = canon.run.length();
    fill_search(row, cp.vass, options.bound.value_or(2 * run_peak(cp.vass, canon.run)), options);
  } else if (family == "2exp") {
    Compiled cp = build(families::gen_2exp(param));
    fill_size(row, cp.vass);
    Replay canon = canonical_2exp(param, cp.program, cp.vass);
    row.canonical_length = canon.run.length();
    fill_search(row, cp.vass, options.bound.value_or(2 * run_peak(cp.vass, canon.run)), options);
  } else if (family == "weak") {
    Compiled cp = build(families::gen_weak(param));
    fill_size(row, cp.vass);
    WeakOutcome w = check_weak(param);
    row.search = w.exhaustive ? "exhaustive" : "pruned";
    row.stats = w.stats;
    if (!w.finals.empty()) row.max_final = *w.finals.rbegin();
  } else if (family == "hp") {
    Compiled cp = build(families::gen_hp(3, 2));
    fill_size(row, cp.vass);
    const BigInt x0 = vasskit::pow(2, param);
    Configuration start{cp.vass.source().state, {x0, 0, param}};
    Replay canon = replay_canonical(cp.program, cp.vass, {}, start);
    row.canonical_length = canon.run.length();
    ExploreOptions eo;
    eo.start = start;
    eo.observe_state = cp.vass.target().state;
    Observation obs = observe(cp.vass, SearchBudget{options.bound.value_or(2 * run_peak(cp.vass, canon.run)),
                                                    options.max_configs},
                              eo);
    row.stats = obs.stats;
    row.search = obs.stats.pruned == 0 ? "exhaustive" : "pruned";
    for (const auto& f : obs.configurations) {
      if (!row.max_final || f.vector[0] > *row.max_final) row.max_final = f.vector[0];
    }
  } else if (family == "np") {
    NpInstance inst = NpInstance::make(param, options.np_set);
    Compiled cp = build(families::gen_np(inst));
    fill_size(row, cp.vass);
    row.oracle = families::subset_sum_brute(inst.s0, inst.s);
    fill_search(row, cp.vass, options.bound.value_or(8 * inst.big_n * BigInt(static_cast<unsigned long>(inst.k() + 1))),
                options);
  } else {
    throw std::invalid_argument("unknown family '" + family + "'");
  }
  return row;
}

std::string opt_str(const std::optional<BigInt>& x) { return x ? to_string(*x) : "-"; }

}  // namespace

std::vector<ReportRow> measure(const std::string& family, unsigned from, unsigned to, const MeasureOptions& options) {
  static const std::vector<std::string> known = {"exp", "2exp", "np", "weak", "hp"};
  if (std::find(known.begin(), known.end(), family) == known.end()) {
    throw std::invalid_argument("unknown family '" + family + "'");
  }
  std::vector<ReportRow> rows;
  for (unsigned p = from; p <= to; ++p) {
    auto t0 = std::chrono::steady_clock::now();
    ReportRow row;
    try {
      row = measure_row(family, p, options);
    } catch (const std::exception& e) {
      row.family = family;
      row.parameter = std::to_string(p);
      row.search = "error";
      row.error = e.what();
    }
    if (options.timing) {
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const std::vector<ReportRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j{{"family", r.family},
           {"parameter", r.parameter},
           {"size_unary", to_string(r.size_unary)},
           {"size_binary", to_string(r.size_binary)}};
    j["flat"] = r.flat ? Json(*r.flat) : Json();
    j["search"] = r.search;
    j["shortest_length"] = r.shortest_length ? Json(to_string(*r.shortest_length)) : Json();
    j["canonical_length"] = r.canonical_length ? Json(to_string(*r.canonical_length)) : Json();
    j["max_final"] = r.max_final ? Json(to_string(*r.max_final)) : Json();
    j["oracle"] = r.oracle ? Json(*r.oracle) : Json();
    j["stats"] = Json{{"expanded", r.stats.expanded},
                      {"frontier_peak", r.stats.frontier_peak},
                      {"depth", r.stats.depth},
                      {"pruned", r.stats.pruned}};
    if (!r.error.empty()) j["error"] = r.error;
    if (r.seconds) j["wall_clock_seconds"] = *r.seconds;
    out.push_back(std::move(j));
  }
  return out;
}

std::string to_text(const std::vector<ReportRow>& rows) {
  std::vector<std::vector<std::string>> table{{"family", "param", "size(u)", "size(b)", "flat", "search", "shortest",
                                               "canonical", "max_final", "oracle", "expanded", "seconds"}};
  for (const auto& r : rows) {
    std::ostringstream secs;
    if (r.seconds) secs << std::fixed << std::setprecision(3) << *r.seconds;
    table.push_back({r.family, r.parameter, to_string(r.size_unary), to_string(r.size_binary),
                     r.flat ? (*r.flat ? "yes" : "no") : "-", r.search, opt_str(r.shortest_length),
                     opt_str(r.canonical_length), opt_str(r.max_final), r.oracle ? (*r.oracle ? "yes" : "no") : "-",
                     std::to_string(r.stats.expanded), r.seconds ? secs.str() : "-"});
  }
  std::vector<std::size_t> width(table[0].size(), 0);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream out;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << std::left << std::setw(static_cast<int>(width[i])) << row[i] << (i + 1 < row.size() ? "  " : "\n");
    }
  }
  for (const auto& r : rows) {
    if (!r.error.empty()) out << r.family << " " << r.parameter << ": " << r.error << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// verify

bool SuiteResult::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

namespace {

class SuiteBuilder {
 public:
  explicit SuiteBuilder(std::string name) { result_.suite = std::move(name); }

  template <class F>
  void property(const std::string& name, F&& body) {
    PropertyResult p;
    p.name = name;
    try {
      body(p);
    } catch (const std::exception& e) {
      p.passed = false;
      p.detail = std::string("exception: ") + e.what();
    }
    result_.properties.push_back(std::move(p));
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

void fail(PropertyResult& p, const std::string& detail, Json counterexample = {}) {
  if (!p.passed) return;
  p.passed = false;
  p.detail = detail;
  p.counterexample = std::move(counterexample);
}

SuiteResult suite_arith() {
  SuiteBuilder s("arith");
  s.property("lcm(a,b) * gcd(a,b) = a * b for a, b <= 200", [](PropertyResult& p) {
    for (unsigned long a = 1; a <= 200; ++a) {
      for (unsigned long b = 1; b <= 200; ++b) {
        if (lcm(a, b) * gcd(a, b) != BigInt(a) * b) fail(p, "identity fails", Json{{"a", a}, {"b", b}});
      }
    }
  });
  s.property("N(n) * (n+1) is divisible by 2..n+1 for n <= 100", [](PropertyResult& p) {
    for (std::uint64_t n = 1; n <= 100; ++n) {
      BigInt x = compute_N(n) * BigInt(static_cast<unsigned long>(n + 1));
      for (std::uint64_t i = 2; i <= n + 1; ++i) {
        if (x % BigInt(static_cast<unsigned long>(i)) != 0) fail(p, "divisibility fails", Json{{"n", n}, {"i", i}});
      }
    }
  });
  s.property("N(n) <= n! for n <= 20", [](PropertyResult& p) {
    BigInt fact = 1;
    for (unsigned long n = 1; n <= 20; ++n) {
      fact *= n;
      if (compute_N(n) > fact) fail(p, "bound fails", Json{{"n", n}});
    }
  });
  s.property("bits_of inverts binary evaluation for 1..4096", [](PropertyResult& p) {
    for (unsigned long x = 1; x <= 4096; ++x) {
      auto b = bits_of(x);
      if (b.value() != x || b.bits.front() != 1) fail(p, "round trip fails", Json{{"x", x}});
    }
  });
  return s.take();
}

const std::vector<std::pair<int, int>>& weak_mult_pairs() {
  static const std::vector<std::pair<int, int>> pairs = {{2, 1}, {3, 2}, {5, 3}, {7, 4}};
  return pairs;
}

SuiteResult suite_weakmult() {
  SuiteBuilder s("weakmult");
  for (auto [c, d] : weak_mult_pairs()) {
    s.property("weak multiplication by " + std::to_string(c) + "/" + std::to_string(d) + ", x0 + y0 <= 30",
               [c = c, d = d](PropertyResult& p) {
                 for (int sum = 0; sum <= 30; ++sum) {
                   for (int x0 = 0; x0 <= sum; ++x0) {
                     auto o = check_weak_mult(c, d, x0, sum - x0);
                     Json at{{"x0", x0}, {"y0", sum - x0}};
                     if (!o.exhaustive) fail(p, "bound pruned the exploration", at);
                     if (!o.inequality || !o.equality_matches_probe) fail(p, o.counterexample, at);
                   }
                 }
               });
  }
  return s.take();
}

SuiteResult suite_weak() {
  SuiteBuilder s("weak");
  s.property("weak(b) has maximum final x = b for b in 1..12", [](PropertyResult& p) {
    for (unsigned long b = 1; b <= 12; ++b) {
      auto o = check_weak(b);
      if (!o.exhaustive) fail(p, "bound pruned the exploration", Json{{"b", b}});
      if (o.finals.empty() || *o.finals.rbegin() != b) {
        fail(p, "maximum final differs from b", Json{{"b", b}, {"max", o.finals.empty() ? "none" : to_string(*o.finals.rbegin())}});
      }
    }
  });
  return s.take();
}

SuiteResult suite_exp() {
  SuiteBuilder s("exp");
  s.property("gen_exp_fixed(n, x0) halts iff N(n) | x0, with at most one run (n <= 4)", [](PropertyResult& p) {
    for (unsigned n = 1; n <= 4; ++n) {
      const BigInt big_n = compute_N(n);
      for (BigInt x0 = 1; x0 <= 4 * big_n; ++x0) {
        auto o = check_exp_fixed(n, x0);
        Json at{{"n", n}, {"x0", to_string(x0)}};
        bool expected = x0 % big_n == 0;
        if (o.halts != expected) fail(p, "halting differs from divisibility", at);
        if (o.runs > 1) fail(p, "more than one halting run", at);
        if (!o.exhaustive) fail(p, "bound pruned the exploration", at);
      }
    }
  });
  s.property("shortest halting length of gen_exp(n) equals the canonical run and grows (n <= 3)",
             [](PropertyResult& p) {
               BigInt previous = -1;
               for (unsigned n = 1; n <= 3; ++n) {
                 Compiled cp = build(families::gen_exp(n));
                 Replay canon = canonical_exp(n, cp.program, cp.vass);
                 ReachResult r = shortest_halting(cp.vass, SearchBudget{2 * run_peak(cp.vass, canon.run)});
                 Json at{{"n", n}};
                 if (!canon.halting || r.verdict != Verdict::Found) {
                   fail(p, "no halting run", at);
                   continue;
                 }
                 if (r.run->length() != canon.run.length()) fail(p, "shortest differs from canonical", at);
                 if (r.run->length() <= previous) fail(p, "lengths do not increase", at);
                 previous = r.run->length();
               }
             });
  s.property("canonical run of gen_exp(n) has x_i = N(n) (n+1) / i after each fraction loop (n <= 6)",
             [](PropertyResult& p) {
               for (unsigned n = 1; n <= 6; ++n) {
                 Compiled cp = build(families::gen_exp(n));
                 Replay canon = canonical_exp(n, cp.program, cp.vass);
                 if (recompute_probes(cp.program, cp.vass, canon.run) != canon.probe) fail(p, "probes disagree", Json{{"n", n}});
                 const BigInt big_n = compute_N(n);
                 for (unsigned i = n; i >= 1; --i) {
                   std::size_t xz = 1 + 2 * (n - i);
                   auto first = canon.probe.of(xz).at(0).exit_vector;
                   auto second = canon.probe.of(xz + 1).at(0).exit_vector;
                   if (first[0] != 0 || second[2] != 0 || second[0] * i != big_n * (n + 1)) {
                     fail(p, "probe chain broken", Json{{"n", n}, {"i", i}});
                   }
                 }
               }
             });
  return s.take();
}

std::vector<NpInstance> np_corpus() {
  std::vector<NpInstance> out;
  for (unsigned long s0 = 1; s0 <= 3; ++s0) {
    for (unsigned long a = 1; a <= 3; ++a) {
      out.push_back(NpInstance::make(s0, {a}));
      for (unsigned long b = 1; b <= 3; ++b) out.push_back(NpInstance::make(s0, {a, b}));
    }
  }
  return out;
}

Json instance_json(const NpInstance& inst) {
  Json s = Json::array();
  for (const auto& x : inst.s) s.push_back(to_string(x));
  return Json{{"s0", to_string(inst.s0)}, {"set", s}};
}

SuiteResult suite_np(const VerifyOptions& options) {
  SuiteBuilder s("np");
  s.property("initialisation computes e = N(n), f = N(n)(k+1) and zero elsewhere (n <= 4)", [](PropertyResult& p) {
    for (unsigned n = 1; n <= 4; ++n) {
      NpInstance inst = NpInstance::make(compute_N(n), {1});
      Compiled cp = build(families::gen_init(inst, true));
      Replay r = replay_canonical(cp.program, cp.vass);
      const BigInt big_n = compute_N(n);
      Vector expected{0, 0, 0, 0, big_n, big_n * 2};
      if (!r.halting || !r.at_halt || r.at_halt->vector != expected) fail(p, "unexpected values at halt", Json{{"n", n}});
    }
  });
  s.property("gen_np halts within bound iff the subset-sum instance is positive; flat and 7-dimensional",
             [&options](PropertyResult& p) {
               for (const auto& inst : np_corpus()) {
                 Compiled cp = build(families::gen_np(inst, options.np_mutation));
                 auto o = check_np(inst, options.np_mutation);
                 bool expected = families::subset_sum_brute(inst.s0, inst.s);
                 Json at = instance_json(inst);
                 if (!o.flat || o.dimension != 7) fail(p, "compiled program is not a flat 7-VASS", at);
                 if (o.verdict == Verdict::BudgetExceeded) {
                   fail(p, "search budget exceeded", at);
                   continue;
                 }
                 bool found = o.verdict == Verdict::Found;
                 if (found != expected) {
                   at["expected"] = expected;
                   at["found"] = found;
                   fail(p, "halting differs from the subset-sum oracle", at);
                   continue;
                 }
                 if (!found) continue;
                 for (const auto& eff : component_effects(cp.program, cp.vass, *o.run)) {
                   if (eff.f_delta != -inst.big_n) fail(p, "component " + eff.label + " does not use N(n) of f", at);
                   BigInt expected_u = 0;
                   if (eff.label == "r0") expected_u = inst.s0;
                   if (eff.label[0] == 't') expected_u = -inst.s.at(std::stoul(eff.label.substr(1)) - 1);
                   if (eff.u_delta != expected_u) fail(p, "component " + eff.label + " changes u wrongly", at);
                 }
               }
             });
  return s.take();
}

SuiteResult suite_fractions() {
  SuiteBuilder s("fractions");
  s.property("fraction sequence identities and size bounds for k <= 16", [](PropertyResult& p) {
    for (unsigned k = 1; k <= 16; ++k) {
      auto c = check_fraction_sequence(fraction_sequence(k));
      if (!c.ok()) fail(p, "sequence property fails", Json{{"k", k}});
    }
  });
  s.property("tower product bound: prod (a_j/b_j)^n_j <= a/b with equality iff n_j = 2^j (k <= 3)",
             [](PropertyResult& p) {
               for (unsigned k = 1; k <= 3; ++k) {
                 auto fs = fraction_sequence(k);
                 std::vector<unsigned> cap(k + 2, 0);  // cap[i] = sum_{j>=i} 2^j
                 for (unsigned i = k; i >= 1; --i) cap[i] = cap[i + 1] + (1u << i);
                 std::vector<unsigned> nj(k + 1, 0);
                 // Enumerate n_k first so the suffix sums are known.
                 std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned used) {
                   if (i == 0) {
                     BigInt num = 1, den = 1;
                     bool canonical = true;
                     for (unsigned j = 1; j <= k; ++j) {
                       num *= vasskit::pow(fs.f_list[j - 1].num(), nj[j]);
                       den *= vasskit::pow(fs.f_list[j - 1].den(), nj[j]);
                       canonical = canonical && nj[j] == (1u << j);
                     }
                     BigInt lhs = num * fs.f.den(), rhs = den * fs.f.num();
                     if (lhs > rhs || (lhs == rhs) != canonical) fail(p, "bound fails", Json{{"k", k}});
                     return;
                   }
                   for (unsigned n = 0; used + n <= cap[i]; ++n) {
                     nj[i] = n;
                     rec(i - 1, used + n);
                   }
                 };
                 rec(k, 0);
               }
             });
  return s.take();
}

SuiteResult suite_hp() {
  SuiteBuilder s("hp");
  s.property("HP(3,2) finals obey the power bound and exact finals need 2^z0 | x0 + y0", [](PropertyResult& p) {
    for (int z0 = 0; z0 <= 3; ++z0) {
      for (int sum = 0; sum <= 16; ++sum) {
        for (int x0 = 0; x0 <= sum; ++x0) {
          int y0 = sum - x0;
          auto o = check_hp(3, 2, x0, y0, z0);
          Json at{{"x0", x0}, {"y0", y0}, {"z0", z0}};
          if (!o.exhaustive) fail(p, "bound pruned the exploration", at);
          if (!o.inequality) fail(p, o.counterexample, at);
          // From x0 = y0 = 0 every run ends with x1 = 0, whatever z1 is.
          if (o.exact_exists && !(sum > 0 ? o.exact_has_zero_rest : o.exact_zero_rest_exists)) {
            fail(p, "exact final leaves y or z nonzero", at);
          }
          // With z0 = 0 the outer loop cannot run, so y0 stays where it is.
          bool expected = sum % (1 << z0) == 0 && (z0 > 0 || y0 == 0);
          if (o.exact_exists != expected) fail(p, "exact final existence differs from divisibility", at);
        }
      }
    }
  });
  return s.take();
}

SuiteResult suite_2exp() {
  SuiteBuilder s("2exp");
  s.property("gen_2exp(1) is not flat", [](PropertyResult& p) {
    Compiled cp = build(families::gen_2exp(1));
    if (is_flat(cp.vass).is_flat) fail(p, "reported flat");
  });
  s.property("canonical runs of gen_2exp(k) halt with x_j = N prod_{i>=j} f_i^(2^i) (k <= 2)", [](PropertyResult& p) {
    for (unsigned k = 1; k <= 2; ++k) {
      Compiled cp = build(families::gen_2exp(k));
      auto meta = families::family_2exp_meta(k);
      Replay r = canonical_2exp(k, cp.program, cp.vass);
      auto check = validate_run(cp.vass, r.run);
      if (!r.halting || !check.valid || !check.halting) fail(p, "canonical run does not halt", Json{{"k", k}});
      if (!r.at_halt || std::any_of(r.at_halt->vector.begin(), r.at_halt->vector.end(), [](const BigInt& x) { return x != 0; })) {
        fail(p, "counters are not all zero at halt", Json{{"k", k}});
      }
      auto loops = lang::find_loops(cp.program);
      Fraction acc(meta.n_can);
      unsigned i = k;
      for (const auto& visit : r.probe.visits) {
        if (loops[visit.ordinal].straight_line || visit.ordinal == families::kExpPumpLoop) continue;
        acc = acc * meta.fractions.f_list[i - 1].pow(1ul << i);
        if (acc.den() != 1 || visit.exit_vector[1] != acc.num() || visit.exit_vector[2] != 0 || visit.exit_vector[3] != 0) {
          fail(p, "probe differs from the product formula", Json{{"k", k}, {"i", i}});
        }
        --i;
      }
      if (i != 0) fail(p, "wrong number of outer loop visits", Json{{"k", k}});
    }
  });
  s.property("gen_2exp_fixed(1, N) halts iff 16 | N for N in 1..32; shortest at 16 is canonical",
             [](PropertyResult& p) {
               for (unsigned long pump = 1; pump <= 32; ++pump) {
                 ReachResult r = solve_2exp_fixed(1, pump);
                 bool expected = pump % 16 == 0;
                 if (r.verdict == Verdict::BudgetExceeded) fail(p, "budget exceeded", Json{{"N", pump}});
                 if ((r.verdict == Verdict::Found) != expected) fail(p, "halting differs from divisibility", Json{{"N", pump}});
                 if (pump == 16 && r.run) {
                   Compiled cp = build(families::gen_2exp_fixed(1, 16));
                   Replay canon = replay_canonical(cp.program, cp.vass);
                   if (canon.run.length() != r.run->length()) fail(p, "shortest differs from canonical", Json{{"N", 16}});
                 }
               }
             });
  return s.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"arith", "weakmult", "weak", "exp", "np", "fractions", "hp", "2exp"};
  return names;
}

std::vector<SuiteResult> verify(const std::string& suite, const VerifyOptions& options) {
  std::vector<std::string> chosen;
  if (suite == "all") {
    chosen = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) {
    chosen = {suite};
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  std::vector<SuiteResult> out;
  for (const auto& name : chosen) {
    if (name == "arith") out.push_back(suite_arith());
    if (name == "weakmult") out.push_back(suite_weakmult());
    if (name == "weak") out.push_back(suite_weak());
    if (name == "exp") out.push_back(suite_exp());
    if (name == "np") out.push_back(suite_np(options));
    if (name == "fractions") out.push_back(suite_fractions());
    if (name == "hp") out.push_back(suite_hp());
    if (name == "2exp") out.push_back(suite_2exp());
  }
  return out;
}

Json to_json(const std::vector<SuiteResult>& suites) {
  Json out = Json::array();
  bool all = true;
  for (const auto& s : suites) {
    Json props = Json::array();
    for (const auto& p : s.properties) {
      Json j{{"name", p.name}, {"passed", p.passed}};
      if (!p.passed) {
        j["detail"] = p.detail;
        j["counterexample"] = p.counterexample;
      }
      props.push_back(std::move(j));
    }
    all = all && s.passed();
    out.push_back(Json{{"suite", s.suite}, {"passed", s.passed()}, {"properties", std::move(props)}});
  }
  return Json{{"passed", all}, {"suites", std::move(out)}};
}

std::string to_text(const std::vector<SuiteResult>& suites) {
  std::ostringstream out;
  for (const auto& s : suites) {
    for (const auto& p : s.properties) {
      out << (p.passed ? "PASS " : "FAIL ") << s.suite << ": " << p.name << "\n";
      if (!p.passed) {
        out << "     " << p.detail << "\n";
        if (!p.counterexample.is_null()) out << "     counterexample: " << p.counterexample.dump() << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace vasskit::experiments
