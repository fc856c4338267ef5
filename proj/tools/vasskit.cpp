#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "vasskit/experiments.hpp"
#include "vasskit/lang.hpp"

using namespace vasskit;
namespace ex = vasskit::experiments;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "text";
  std::string out;
  std::string encoding = "binary";
  std::string bound;
  std::size_t max_configs = 20'000'000;
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw UsageError("cannot write '" + c.out + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

bool looks_like_json(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

struct Loaded {
  std::optional<lang::FlatProgram> program;
  Vass vass;
};

Loaded load(const std::string& path) {
  std::string text = read_input(path);
  if (looks_like_json(text)) return {std::nullopt, vass_from_json(Json::parse(text))};
  lang::FlatProgram flat = lang::expand(lang::parse(text));
  Vass v = lang::compile(flat);
  return {std::move(flat), std::move(v)};
}

Encoding encoding_of(const Common& c) { return c.encoding == "unary" ? Encoding::Unary : Encoding::Binary; }

std::vector<BigInt> parse_list(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_bigint(item));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

families::NpMutation mutation_of(const std::string& name) {
  if (name.empty() || name == "none") return families::NpMutation::None;
  if (name == "drop-target-low-bits") return families::NpMutation::DropTargetLowBits;
  if (name == "short-halt") return families::NpMutation::ShortHalt;
  throw UsageError("unknown mutation '" + name + "'");
}

BigInt default_bound(const Loaded& l) {
  BigInt peak = 0;
  for (const auto& x : l.vass.source().vector) peak = std::max(peak, x);
  for (const auto& t : l.vass.transitions()) {
    for (const auto& x : t.delta) peak = std::max(peak, BigInt(abs(x)));
  }
  return std::max(BigInt(64), BigInt(4 * peak));
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::string n = "3", k = "2", b = "6", c = "3", d = "2", s0 = "3", set = "1,2";
  std::string x0, pump, mutate;
};

lang::CounterProgram generate(const GenArgs& g) {
  auto u = [](const std::string& s) { return static_cast<unsigned>(std::stoul(s)); };
  if (g.family == "exp") return g.x0.empty() ? families::gen_exp(u(g.n)) : families::gen_exp_fixed(u(g.n), parse_bigint(g.x0));
  if (g.family == "2exp") {
    return g.pump.empty() ? families::gen_2exp(u(g.k)) : families::gen_2exp_fixed(u(g.k), parse_bigint(g.pump));
  }
  if (g.family == "np") return families::gen_np(families::NpInstance::make(parse_bigint(g.s0), parse_list(g.set)), mutation_of(g.mutate));
  if (g.family == "init") return families::gen_init(families::NpInstance::make(parse_bigint(g.s0), parse_list(g.set)), true);
  if (g.family == "hp") return families::gen_hp(parse_bigint(g.c), parse_bigint(g.d));
  if (g.family == "weak") return families::gen_weak(parse_bigint(g.b));
  if (g.family == "weakmult") return families::gen_weak_mult(parse_bigint(g.c), parse_bigint(g.d));
  throw UsageError("unknown family '" + g.family + "'");
}

int cmd_gen(const Common& c, const GenArgs& g) {
  lang::CounterProgram p = generate(g);
  if (c.format == "json") {
    write_output(c, dump(to_json(lang::compile(lang::expand(p)))));
  } else {
    write_output(c, lang::pretty_print(p));
  }
  return kOk;
}

int cmd_compile(const Common& c, const std::string& input) {
  Loaded l = load(input);
  if (c.format == "json") {
    write_output(c, dump(to_json(l.vass)));
  } else {
    std::ostringstream out;
    out << "dimension " << l.vass.dimension() << "\n"
        << "states " << l.vass.states().size() << "\n"
        << "transitions " << l.vass.transitions().size() << "\n"
        << "size " << to_string(vass_size(l.vass, encoding_of(c))) << " (" << c.encoding << ")\n";
    write_output(c, out.str());
  }
  return kOk;
}

int cmd_expand(const Common& c, const std::string& input) {
  std::string text = read_input(input);
  if (looks_like_json(text)) throw UsageError("expand needs a counter program, not a VASS");
  lang::FlatProgram flat = lang::expand(lang::parse(text));
  if (c.format == "json") {
    Json lines = Json::array();
    std::istringstream in(lang::pretty_print(flat));
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    write_output(c, dump(Json{{"counters", flat.counters}, {"lines", lines}}));
  } else {
    write_output(c, lang::pretty_print(flat));
  }
  return kOk;
}

int cmd_flat(const Common& c, const std::string& input) {
  Loaded l = load(input);
  FlatnessReport r = is_flat(l.vass);
  auto cycle_names = [&](const Cycle& cy) {
    Json out = Json::array();
    for (std::size_t t : cy.transitions) out.push_back(l.vass.state_name(l.vass.transitions()[t].from));
    return out;
  };
  Json j{{"flat", r.is_flat}, {"cycles_seen", r.cycles_seen}, {"size", to_string(vass_size(l.vass, encoding_of(c)))},
         {"encoding", c.encoding}};
  if (r.shared_state) j["shared_state"] = l.vass.state_name(*r.shared_state);
  if (r.witness) j["witness"] = Json::array({cycle_names(r.witness->first), cycle_names(r.witness->second)});
  if (c.format == "json") {
    write_output(c, dump(j));
  } else {
    std::ostringstream out;
    out << (r.is_flat ? "flat" : "not flat") << "\n";
    if (r.shared_state) out << "shared state " << l.vass.state_name(*r.shared_state) << "\n";
    out << "size " << j["size"].get<std::string>() << " (" << c.encoding << ")\n";
    write_output(c, out.str());
  }
  return r.is_flat ? kOk : kNegative;
}

int cmd_solve(const Common& c, const std::string& input) {
  Loaded l = load(input);
  BigInt bound = c.bound.empty() ? default_bound(l) : parse_bigint(c.bound);
  ReachResult r = shortest_halting(l.vass, SearchBudget{bound, c.max_configs});
  Json j{{"verdict", to_string(r.verdict)},
         {"bound", to_string(bound)},
         {"stats",
          {{"expanded", r.stats.expanded},
           {"frontier_peak", r.stats.frontier_peak},
           {"depth", r.stats.depth},
           {"pruned", r.stats.pruned}}}};
  if (r.run) {
    j["length"] = to_string(r.run->length());
    j["run"] = to_json(l.vass, *r.run);
  }
  if (c.format == "json") {
    write_output(c, dump(j));
  } else {
    std::ostringstream out;
    out << "verdict " << to_string(r.verdict) << "\n"
        << "bound " << to_string(bound) << "\n"
        << "expanded " << r.stats.expanded << "\n";
    if (r.run) {
      out << "length " << to_string(r.run->length()) << "\n";
      Configuration cur = r.run->initial;
      auto show = [&](const Configuration& cf) {
        out << "  " << l.vass.state_name(cf.state) << " (";
        for (std::size_t i = 0; i < cf.vector.size(); ++i) out << (i ? "," : "") << to_string(cf.vector[i]);
        out << ")\n";
      };
      show(cur);
      for (std::size_t t : r.run->steps()) {
        cur = step(cur, l.vass.transitions()[t]);
        show(cur);
      }
    }
    write_output(c, out.str());
  }
  switch (r.verdict) {
    case Verdict::Found:
      return kOk;
    case Verdict::ExhaustedWithinBound:
      return kNegative;
    case Verdict::BudgetExceeded:
      return kBudget;
  }
  return kNegative;
}

int cmd_measure(const Common& c, const std::string& family, unsigned from, unsigned to, const std::string& set,
                bool no_timing) {
  ex::MeasureOptions options;
  if (!c.bound.empty()) options.bound = parse_bigint(c.bound);
  options.max_configs = c.max_configs;
  options.timing = !no_timing;
  options.np_set = parse_list(set);
  if (from > to) throw UsageError("empty parameter range");
  auto rows = ex::measure(family, from, to, options);
  write_output(c, c.format == "json" ? dump(ex::to_json(rows)) : ex::to_text(rows));
  bool budget = std::any_of(rows.begin(), rows.end(), [](const ex::ReportRow& r) {
    return r.search == to_string(Verdict::BudgetExceeded) || r.search == "error";
  });
  return budget ? kBudget : kOk;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& mutate) {
  ex::VerifyOptions options;
  options.np_mutation = mutation_of(mutate);
  auto suites = ex::verify(suite, options);
  write_output(c, c.format == "json" ? dump(ex::to_json(suites)) : ex::to_text(suites));
  bool ok = std::all_of(suites.begin(), suites.end(), [](const ex::SuiteResult& s) { return s.passed(); });
  return ok ? kOk : kNegative;
}

int cmd_fractions(const Common& c, unsigned k) {
  FractionSequence fs = fraction_sequence(k);
  FractionCheck check = check_fraction_sequence(fs);
  Json f_list = Json::array();
  for (const auto& f : fs.f_list) f_list.push_back(f.str());
  Json j{{"k", k},
         {"f", f_list},
         {"product", fs.f.str()},
         {"checks",
          {{"increasing", check.increasing},
           {"last_is_one_plus_quarter_power", check.last_is_one_plus_quarter_power},
           {"product_identity", check.product_identity},
           {"member_size_bound", check.member_size_bound},
           {"product_size_bound", check.product_size_bound}}}};
  if (c.format == "json") {
    write_output(c, dump(j));
  } else {
    std::ostringstream out;
    for (std::size_t i = 0; i < fs.f_list.size(); ++i) out << "f" << i + 1 << " = " << fs.f_list[i].str() << "\n";
    out << "f  = " << fs.f.str() << "\n";
    for (const auto& [name, value] : j["checks"].items()) out << (value.get<bool>() ? "ok   " : "FAIL ") << name << "\n";
    write_output(c, out.str());
  }
  return check.ok() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counter programs, VASS reachability instances and their hard families."};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_option("--out", common.out, "Write output to FILE instead of stdout");
  };
  auto add_encoding = [&](CLI::App* sub) {
    sub->add_option("--encoding", common.encoding, "Constant encoding for size reports")
        ->check(CLI::IsMember({"unary", "binary"}))
        ->capture_default_str();
  };
  auto add_search = [&](CLI::App* sub, const std::string& bound_help) {
    sub->add_option("--bound", common.bound, bound_help);
    sub->add_option("--max-configs", common.max_configs, "Abort after this many stored configurations")
        ->capture_default_str();
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a generated counter program (text) or its compiled VASS (json)");
  gen_cmd->add_option("family", gen.family, "exp, 2exp, np, init, hp, weak or weakmult")->required();
  gen_cmd->add_option("--n", gen.n, "exp: number of fractions")->capture_default_str();
  gen_cmd->add_option("--x0", gen.x0, "exp: fixed initial value instead of the pump loop");
  gen_cmd->add_option("--k", gen.k, "2exp: number of fractions")->capture_default_str();
  gen_cmd->add_option("--pump", gen.pump, "2exp: fixed pump value instead of the pump loop");
  gen_cmd->add_option("--s0", gen.s0, "np, init: subset-sum target")->capture_default_str();
  gen_cmd->add_option("--set", gen.set, "np, init: comma separated elements")->capture_default_str();
  gen_cmd->add_option("--c", gen.c, "hp, weakmult: numerator")->capture_default_str();
  gen_cmd->add_option("--d", gen.d, "hp, weakmult: denominator")->capture_default_str();
  gen_cmd->add_option("--b", gen.b, "weak: value to compute")->capture_default_str();
  gen_cmd->add_option("--mutate", gen.mutate, "np: none, drop-target-low-bits or short-halt");
  add_common(gen_cmd);

  std::string input = "-";
  auto* compile_cmd = app.add_subcommand("compile", "Compile a counter program to a VASS");
  compile_cmd->add_option("input", input, "Program (.cp) or VASS JSON; - for stdin")->capture_default_str();
  add_common(compile_cmd);
  add_encoding(compile_cmd);

  auto* expand_cmd = app.add_subcommand("expand", "Expand macros into numbered lines");
  expand_cmd->add_option("input", input, "Program (.cp); - for stdin")->capture_default_str();
  add_common(expand_cmd);

  auto* flat_cmd = app.add_subcommand("flat", "Decide flatness; exit 1 when not flat");
  flat_cmd->add_option("input", input, "Program (.cp) or VASS JSON; - for stdin")->capture_default_str();
  add_common(flat_cmd);
  add_encoding(flat_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Shortest halting run within a counter bound");
  solve_cmd->add_option("input", input, "Program (.cp) or VASS JSON; - for stdin")->capture_default_str();
  add_common(solve_cmd);
  add_search(solve_cmd, "Counter bound (default: max(64, 4 x largest constant))");

  std::string family;
  unsigned from = 1, to = 3;
  std::string np_set = "1,2";
  bool no_timing = false;
  auto* measure_cmd = app.add_subcommand("measure", "Report table over a parameter range");
  measure_cmd->add_option("family", family, "exp, 2exp, np, weak or hp")->required();
  measure_cmd->add_option("--from", from, "First parameter")->capture_default_str();
  measure_cmd->add_option("--to", to, "Last parameter")->capture_default_str();
  measure_cmd->add_option("--set", np_set, "np: the set S; the parameter is s0")->capture_default_str();
  measure_cmd->add_flag("--no-timing", no_timing, "Omit wall-clock seconds");
  add_common(measure_cmd);
  add_search(measure_cmd, "Counter bound (default: per family)");

  std::string suite = "all";
  std::string mutate;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite; exit 1 on failure");
  verify_cmd->add_option("suite", suite, "arith, weakmult, weak, exp, np, fractions, hp, 2exp or all")
      ->capture_default_str();
  verify_cmd->add_option("--mutate", mutate, "np: none, drop-target-low-bits or short-halt");
  add_common(verify_cmd);

  unsigned k = 3;
  auto* fractions_cmd = app.add_subcommand("fractions", "Print and check the fraction sequence");
  fractions_cmd->add_option("--k", k, "Length of the sequence")->capture_default_str();
  add_common(fractions_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(common, gen);
    if (*compile_cmd) return cmd_compile(common, input);
    if (*expand_cmd) return cmd_expand(common, input);
    if (*flat_cmd) return cmd_flat(common, input);
    if (*solve_cmd) return cmd_solve(common, input);
    if (*measure_cmd) return cmd_measure(common, family, from, to, np_set, no_timing);
    if (*verify_cmd) return cmd_verify(common, suite, mutate);
    if (*fractions_cmd) return cmd_fractions(common, k);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
