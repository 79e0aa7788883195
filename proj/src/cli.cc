#include "turingflow/cli.h"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "turingflow/cantor_map.h"
#include "turingflow/error.h"
#include "turingflow/gshift.h"
#include "turingflow/io.h"
#include "turingflow/orbit_harness.h"
#include "turingflow/reeb_numerics.h"
#include "turingflow/tm_core.h"

namespace turingflow {

namespace {

struct Options {
  std::string format = "record";
  std::uint64_t seed = 1;
  std::string output;
  std::string trace;
  std::string svg;

  std::string machine;
  std::string shift;
  std::string input;
  std::string sequence;
  std::size_t k = 0;
  std::string target;
  std::uint64_t steps = 0;
  bool blockmap = false;
  bool dump = false;
  bool verify = false;
  std::size_t samples = 200;
  std::vector<std::string> experiments;
  unsigned jobs = 1;
  double M = 0;
  double nu = 0;
  std::vector<double> times;
  std::string family = "radial-bump";
  std::vector<std::string> params;
  double tolerance = 1e-10;
  int grid = 64;
  std::uint64_t max_steps = 1000000;
  double C = 0;
  bool points = false;
  bool example = false;
  bool literal = false;
  std::uint64_t orbit = 0;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) out << text;
  else write_file(o.output, text);
}

TuringMachine extended(const TuringMachine& m) {
  return m.is_extended() ? m : extend_halting(m);
}

void check_reversible_cmd(const Options& o, std::ostream& out) {
  const TuringMachine m = extended(read_machine(o.machine));
  const auto report = check_reversible(m);
  std::ostringstream s;
  if (o.format == "pretty") {
    s << "machine is " << (report.reversible ? "reversible" : "not reversible") << "\n";
  } else {
    s << "reversible=" << (report.reversible ? "true" : "false");
  }
  if (const auto& w = report.witness) {
    auto rule = [&](const RuleRef& r) { return m.state_name(r.state) + " " + m.symbol_name(r.symbol); };
    if (o.format == "pretty") {
      s << "rules (" << rule(w->first) << ") and (" << rule(w->second) << ") collide\n"
        << "  " << format_config(m, w->config_a) << "\n  " << format_config(m, w->config_b)
        << "\nhave the same successor\n";
    } else {
      s << " rule_a=\"" << rule(w->first) << "\" rule_b=\"" << rule(w->second)
        << "\" config_a=\"" << format_config(m, w->config_a) << "\" config_b=\""
        << format_config(m, w->config_b) << "\"";
    }
  }
  if (o.format != "pretty") s << "\n";
  out << s.str();
}

void make_reader_cmd(const Options& o, std::ostream& out) {
  const TuringMachine m = read_machine(o.machine);
  std::istringstream in(o.target);
  std::vector<std::string> target;
  for (std::string t; in >> t;) target.push_back(t);
  if (target.size() != 2 * o.k + 1) {
    throw Error(ErrorCode::kInvalidMachine, "target needs 2k+1 symbols");
  }
  emit(o, out, format_machine(make_reader(m, o.k, target)));
}

GeneralizedShift shift_from(const Options& o) {
  if (!o.shift.empty()) return read_shift(o.shift);
  if (o.example) return two_letter_example(o.literal);
  return compile_tm(extended(read_machine(o.machine))).shift;
}

void compile_cmd(const Options& o, std::ostream& out) {
  const GeneralizedShift shift = shift_from(o);
  std::string text;
  if (o.dump || o.verify) {
    const auto map = compile_blockmap(shift);
    if (o.dump) text += format_blockmap(map, shift);
    if (o.verify) text += format_verification(verify_blockmap(map, shift, o.samples, o.seed));
  } else {
    text = format_shift(shift);
  }
  emit(o, out, text);
}

void simulate_cmd(const Options& o, std::ostream& out) {
  if (!o.machine.empty()) {
    const TuringMachine m = read_machine(o.machine);
    const Configuration start = parse_config(m, o.input);
    const RunResult r = run(m, start, o.steps);
    if (const auto* h = std::get_if<Halted>(&r)) {
      out << "halted=true steps=" << h->steps << " config=\"" << format_config(m, h->final_config)
          << "\"\n";
    } else {
      out << "halted=false steps=" << o.steps << " config=\""
          << format_config(m, std::get<Running>(r).config) << "\"\n";
    }
    return;
  }
  const GeneralizedShift shift = shift_from(o);
  BiSequence s = parse_sequence(shift, o.sequence);
  if (o.blockmap) {
    const auto map = compile_blockmap(shift);
    const auto result = run_orbit(map, encode_point(s, shift.alphabet_size()), {}, o.steps,
                                  !o.trace.empty());
    if (!o.trace.empty()) write_file(o.trace, format_orbit_csv(map, result));
    s = decode_point(result.last, shift.alphabet_size());
  } else {
    for (std::uint64_t i = 0; i < o.steps; ++i) s = apply(shift, s);
  }
  out << "steps=" << o.steps << " sequence=\"" << render_sequence(shift, s) << "\"\n";
}

void verify_cmd(const Options& o, std::ostream& out) {
  if (o.experiments.size() > 1 && (!o.trace.empty() || !o.svg.empty())) {
    throw CLI::ValidationError("--trace and --svg take a single experiment");
  }
  struct Slot {
    std::string text;
    std::optional<Error> error;
  };
  std::vector<Slot> slots(o.experiments.size());
  auto work = [&](std::size_t i) {
    try {
      const ExperimentSpec spec = read_experiment(o.experiments[i]);
      const Experiment experiment = build_experiment(spec);
      OrbitResult orbit{std::nullopt, experiment.start, {}};
      const bool keep = !o.trace.empty() || !o.svg.empty();
      const Verdict v = verify_equivalence(spec, experiment, &orbit, keep);
      if (!o.trace.empty()) write_file(o.trace, format_orbit_csv(experiment.map, orbit));
      if (!o.svg.empty()) {
        std::vector<CantorPoint> points;
        for (const auto& step : orbit.trace) points.push_back(step.point);
        write_file(o.svg, render_svg(experiment.map, experiment.compiled.shift, points));
      }
      slots[i].text = o.format == "pretty" ? format_verdict_pretty(spec.machine, v)
                                           : format_verdict(spec.machine, v) + "\n";
    } catch (const Error& e) {
      slots[i].error = e;
    }
  };
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(slots.size())));
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < slots.size();) work(i);
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& slot : slots) {
    if (slot.error) throw *slot.error;
    out << slot.text;
  }
}

void encode_point_cmd(const Options& o, std::ostream& out) {
  CantorPoint p{RadixRational(3), RadixRational(3)};
  std::size_t letters = 0;
  if (!o.machine.empty()) {
    const TuringMachine m = extended(read_machine(o.machine));
    const auto compiled = compile_tm(m);
    p = encode_point(encode_config(compiled.conjugation, parse_config(m, o.input)),
                     compiled.shift.alphabet_size());
    letters = compiled.shift.alphabet_size();
  } else {
    const GeneralizedShift shift = shift_from(o);
    p = encode_point(parse_sequence(shift, o.sequence), shift.alphabet_size());
    letters = shift.alphabet_size();
  }
  out << "radix=" << radix_for(letters) << " x=" << p.x.to_string() << " y=" << p.y.to_string()
      << " x_approx=" << g17(p.x.to_double()) << " y_approx=" << g17(p.y.to_double()) << "\n";
}

void budget_cmd(const Options& o, std::ostream& out) {
  const ViscousBudget b = viscous_budget(o.M, o.nu);
  out << "M=" << g17(b.M) << " nu=" << g17(b.nu) << " tau_limit=" << g17(b.tau_limit)
      << " complete_steps=" << b.complete_steps << "\n";
  for (double t : o.times) out << "t=" << g17(t) << " tau=" << g17(b.tau(t)) << "\n";
}

void suspension_cmd(const Options& o, std::ostream& out) {
  std::map<std::string, double> params;
  for (const auto& p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--param expects key=value");
    try {
      params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--param value is not a number: " + p);
    }
  }
  SuspensionProblem problem = make_problem(fixture_by_name(o.family, params), o.tolerance, o.grid);
  problem.max_steps = o.max_steps;
  if (o.C != 0) problem.C = o.C;
  emit(o, out, format_report(return_map_report(problem, o.samples, o.seed), o.points));
}

void render_cmd(const Options& o, std::ostream& out) {
  const GeneralizedShift shift = shift_from(o);
  const auto map = compile_blockmap(shift);
  std::vector<CantorPoint> points;
  if (!o.sequence.empty()) {
    const auto orbit = run_orbit(map, encode_point(parse_sequence(shift, o.sequence), shift.alphabet_size()),
                                 {}, o.orbit, true);
    for (const auto& s : orbit.trace) points.push_back(s.point);
  }
  const std::string svg = render_svg(map, shift, points);
  if (!o.svg.empty()) write_file(o.svg, svg);
  else emit(o, out, svg);
}

std::string quoted(std::string_view s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Turing machines as generalized shifts, Cantor block maps and suspension flows",
               "turingflow"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "record or pretty")
        ->check(CLI::IsMember({"record", "pretty"}));
  };
  auto add_source = [&](CLI::App* c, bool machine) {
    auto* shift = c->add_option("--shift", o.shift, "shift file");
    auto* example = c->add_flag("--example", o.example, "built-in two-letter example shift");
    c->add_flag("--literal", o.literal, "use the example table exactly as printed")->needs(example);
    if (machine) {
      auto* m = c->add_option("--machine", o.machine, "machine file");
      m->excludes(shift)->excludes(example);
      shift->excludes(example);
    } else {
      shift->excludes(example);
    }
  };

  auto* rev = app.add_subcommand("check-reversible", "Rule-level reversibility of a machine");
  rev->add_option("machine", o.machine, "machine file")->required();
  add_format(rev);

  auto* reader = app.add_subcommand("make-reader", "Machine that halts only on a target window");
  reader->add_option("machine", o.machine, "machine file")->required();
  reader->add_option("--k", o.k, "window radius")->required();
  reader->add_option("--target", o.target, "2k+1 symbols, space separated")->required();
  reader->add_option("-o,--output", o.output, "output file");

  auto* compile = app.add_subcommand("compile", "Generalized shift of a machine, or its block map");
  add_source(compile, true);
  compile->add_flag("--dump", o.dump, "print the block map with exact coefficients");
  compile->add_flag("--verify", o.verify, "print the block-map verification report");
  compile->add_option("--samples", o.samples, "conjugacy samples for --verify");
  compile->add_option("--seed", o.seed, "seed for --verify");
  compile->add_option("-o,--output", o.output, "output file");

  auto* simulate = app.add_subcommand("simulate", "Run a machine or iterate a shift");
  add_source(simulate, true);
  simulate->add_option("--input", o.input, "configuration, e.g. \"q0 . 1 1\"");
  simulate->add_option("--sequence", o.sequence, "sequence, e.g. \"0 . 1\"");
  simulate->add_option("--steps", o.steps, "number of steps")->required();
  simulate->add_flag("--blockmap", o.blockmap, "iterate the Cantor block map instead");
  simulate->add_option("--trace", o.trace, "CSV orbit trace (with --blockmap)");

  auto* verify = app.add_subcommand("verify", "Orbit versus native run for experiment files");
  verify->add_option("experiments", o.experiments, "experiment files")->required();
  verify->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--trace", o.trace, "CSV orbit trace");
  verify->add_option("--svg", o.svg, "SVG of the block map with the orbit");
  add_format(verify);

  auto* encode = app.add_subcommand("encode-point", "Exact Cantor point of a configuration");
  add_source(encode, true);
  encode->add_option("--input", o.input, "configuration (with --machine)");
  encode->add_option("--sequence", o.sequence, "sequence (with a shift)");

  auto* budget = app.add_subcommand("budget", "Map iterations completed under viscous decay");
  budget->add_option("--M", o.M, "initial amplitude")->required();
  budget->add_option("--nu", o.nu, "viscosity")->required();
  budget->add_option("--t", o.times, "times at which to print tau");

  auto* suspension = app.add_subcommand("suspension", "First-return map and contact checks");
  suspension->add_option("--family", o.family, "radial-bump, angular-bump, zero, with optional -reversed");
  suspension->add_option("--param", o.params, "family parameter key=value");
  suspension->add_option("--tolerance", o.tolerance, "integrator tolerance")->check(CLI::PositiveNumber);
  suspension->add_option("--grid", o.grid, "lattice points per axis for C0 and density");
  suspension->add_option("--max-steps", o.max_steps, "integrator step limit");
  suspension->add_option("--samples", o.samples = 100, "return-map start points");
  suspension->add_option("--C", o.C, "contact constant (default 2 C0 + 1)");
  suspension->add_option("--seed", o.seed, "seed for start points");
  suspension->add_flag("--points", o.points, "list every start point");
  suspension->add_option("-o,--output", o.output, "output file");

  auto* render = app.add_subcommand("render", "SVG of domain and image blocks");
  add_source(render, true);
  render->add_option("--sequence", o.sequence, "start of an orbit to overlay");
  render->add_option("--orbit", o.orbit, "orbit length for --sequence");
  render->add_option("--svg,-o,--output", o.svg, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    for (auto* c : {compile, simulate, encode, render}) {
      if (*c && o.machine.empty() && o.shift.empty() && !o.example) {
        throw CLI::ValidationError("give one of --machine, --shift or --example");
      }
    }
    if (*rev) check_reversible_cmd(o, out);
    else if (*reader) make_reader_cmd(o, out);
    else if (*compile) compile_cmd(o, out);
    else if (*simulate) {
      if (!o.machine.empty() == o.input.empty() || (o.machine.empty() && o.sequence.empty())) {
        throw CLI::ValidationError("--machine takes --input; a shift takes --sequence");
      }
      if (!o.machine.empty() && (o.blockmap || !o.trace.empty())) {
        throw CLI::ValidationError("--blockmap and --trace iterate a shift");
      }
      simulate_cmd(o, out);
    } else if (*verify) verify_cmd(o, out);
    else if (*encode) {
      if (!o.machine.empty() == o.input.empty() || (o.machine.empty() && o.sequence.empty())) {
        throw CLI::ValidationError("--machine takes --input; a shift takes --sequence");
      }
      encode_point_cmd(o, out);
    } else if (*budget) budget_cmd(o, out);
    else if (*suspension) suspension_cmd(o, out);
    else if (*render) render_cmd(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error code=" << error_code_name(e.code()) << " message=" << quoted(e.what()) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace turingflow
