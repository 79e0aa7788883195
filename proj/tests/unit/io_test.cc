#include <doctest.h>

#include <random>

#include "fixtures.h"
#include "turingflow/error.h"
#include "turingflow/io.h"

using namespace turingflow;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

std::string parse_message(std::string_view text) {
  try {
    parse_machine(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("machine file") {
  const auto m = parse_machine(R"(# comment
alphabet: b 1
states: q0 q1 qh   # trailing comment
initial: q0
halt: qh
rule: q0 1 -> q0 1 L
rule: q0 b -> q1 1 R
rule: q1 1 -> q1 1 R
rule: q1 b -> qh b L
)");
  CHECK(m == fixtures::unary_incrementer());
  CHECK(parse_machine(format_machine(m)) == m);
  CHECK(parse_machine(format_machine(extend_halting(m))) == extend_halting(m));
}

TEST_CASE("machine round trip on random machines") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto m = fixtures::random_machine(rng, 2 + i % 3, 2 + i % 2);
    CHECK(parse_machine(format_machine(m)) == m);
    CHECK(machine_hash(parse_machine(format_machine(m))) == machine_hash(m));
  }
}

TEST_CASE("machine parse errors name the line") {
  CHECK(parse_message("alphabet: 0 1\nstates: a h\ninitial: a\nhalt: h\nrule: a 0 -> h 0 X\n")
            .starts_with("line 5"));
  CHECK(parse_message("alphabet: 0 1\nstates: a h\ninitial: a\nhalt: h\nrule: a 2 -> h 0 L\n")
            .starts_with("line 5"));
  CHECK(parse_message("alphabet: 0 1\nbogus: 3\n").starts_with("line 2"));
  CHECK(parse_message("alphabet: 0 1\nalphabet: 0 1\n").starts_with("line 2"));
  CHECK(parse_message("alphabet 0 1\n").starts_with("line 1"));
  CHECK(code_of([] { parse_machine("alphabet: 0 1\nstates: a h\ninitial: a\n"); }) ==
        ErrorCode::kParse);
  // Well formed but incomplete: the machine constructor rejects it.
  CHECK(code_of([] { parse_machine("alphabet: 0 1\nstates: a h\ninitial: a\nhalt: h\n"); }) ==
        ErrorCode::kInvalidMachine);
}

TEST_CASE("shift file round trip") {
  for (bool literal : {false, true}) {
    const auto s = two_letter_example(literal);
    CHECK(s == fixtures::example_shift(literal));
    CHECK(parse_shift(format_shift(s)) == s);
  }
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto compiled = compile_tm(extend_halting(fixtures::random_machine(rng, 3, 2)));
    const auto back = parse_shift(format_shift(compiled.shift));
    CHECK(back == compiled.shift);
    CHECK(back.phase_space() == compiled.shift.phase_space());
  }
}

TEST_CASE("shift file text") {
  const auto s = parse_shift(R"(alphabet: 0 1
windowF: -1 0
windowG: -1 0
F: 0 1 -> -1
F: 1 1 -> -1
G: 1 1 -> 0 0
G: 0 0 -> 0 1
G: 1 0 -> 1 1
)");
  CHECK(s == two_letter_example(false));
  CHECK(code_of([] { parse_shift("alphabet: 0 1\nwindowF: 0 0\nwindowG: 0 0\nF: 2 -> 1\n"); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { parse_shift("alphabet: 0 1\nwindowF: 1 0\nwindowG: 0 0\n"); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { parse_shift("alphabet: 0 1\nwindowF: 0 0\nwindowG: 0 0\ncenter: 1\n"); }) ==
        ErrorCode::kParse);
}

TEST_CASE("configurations and sequences") {
  const auto m = fixtures::unary_incrementer();
  CHECK(parse_config(m, "q0 . 1 1") == fixtures::unary_input(m));
  CHECK(parse_config(m, "q0 1 1") == fixtures::unary_input(m));
  const auto c = parse_config(m, "q1 1 b . 1");
  CHECK(c.tape.at(-2) == SymbolId{1});
  CHECK(c.tape.at(-1) == SymbolId{0});
  CHECK(c.tape.at(0) == SymbolId{1});
  CHECK(parse_config(m, format_config(m, c)) == c);
  CHECK(format_config(m, parse_config(m, "q0")) == "q0 .");
  CHECK(code_of([&] { parse_config(m, "zz . 1"); }) == ErrorCode::kUnknownState);
  CHECK(code_of([&] { parse_config(m, "q0 . 7"); }) == ErrorCode::kUnknownSymbol);

  const auto s = two_letter_example();
  const auto seq = parse_sequence(s, "1 . 1 0");
  CHECK(seq.at(-1) == Letter{1});
  CHECK(seq.at(0) == Letter{1});
  CHECK(seq.at(1) == Letter{0});
  CHECK(render_sequence(s, seq) == "(.. 1 . 1 ..)");
}

TEST_CASE("experiment file") {
  const auto spec = read_experiment(std::string(TURINGFLOW_SOURCE_DIR) + "/examples_data/unary_reader.exp");
  CHECK(spec.machine == fixtures::unary_incrementer());
  CHECK(spec.input == fixtures::unary_input(spec.machine));
  CHECK(spec.k == 1);
  CHECK(spec.mode == Mode::kReader);
  CHECK(spec.budget == 100);
  CHECK(spec.target == std::vector<SymbolId>{SymbolId{0}, SymbolId{1}, SymbolId{1}});
  CHECK(code_of([] { parse_experiment("machine: nowhere.tm\ninput: a\ntarget: 0\n", "/nonexistent"); }) ==
        ErrorCode::kIo);
  CHECK(code_of([] { read_file("/nonexistent/file"); }) == ErrorCode::kIo);
}

TEST_CASE("verdict record") {
  const auto m = fixtures::unary_incrementer();
  Verdict v{Mode::kReader, 10, true, Halted{6, {}}, true, 10, true};
  const std::string line = format_verdict(m, v);
  CHECK(line.substr(0, 8) == "machine=");
  CHECK(line.substr(24) == " mode=reader hit=10 native=6 consistent=true");
  Verdict none{Mode::kDirect, std::nullopt, false, Running{}, false, std::nullopt, true};
  CHECK(format_verdict(m, none).ends_with("mode=direct hit=NONE native=NONE consistent=true"));
}

TEST_CASE("machine hash is FNV-1a of the canonical text") {
  // FNV-1a 64 test vectors.
  auto fnv = [](std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) { h ^= c; h *= 0x100000001b3ULL; }
    return h;
  };
  CHECK(fnv("") == 0xcbf29ce484222325ULL);
  CHECK(fnv("a") == 0xaf63dc4c8601ec8cULL);
  const auto m = fixtures::unary_incrementer();
  CHECK(machine_hash(m) == fnv(format_machine(m)));
}

TEST_CASE("orbit trace replays exactly") {
  const auto spec = read_experiment(std::string(TURINGFLOW_SOURCE_DIR) + "/examples_data/unary_direct.exp");
  const auto e = build_experiment(spec);
  const auto orbit = run_orbit(e.map, e.start, e.region, 50, true);
  const std::string csv = format_orbit_csv(e.map, orbit);
  CHECK(csv.starts_with("# radix=9\niter,x_num,x_exp,y_num,y_exp,block_id,in_halt_region\n"));
  const auto rows = parse_orbit_csv(csv);
  REQUIRE(rows.size() == orbit.trace.size());
  CHECK(rows.back().in_region);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].iteration == i);
    CHECK(apply_blockmap(e.map, rows[i].point) == rows[i + 1].point);
    const auto piece = e.map.locate(rows[i].point);
    CHECK(rows[i].block_id == (piece ? static_cast<long>(*piece) : -1L));
  }
  CHECK(code_of([] { parse_orbit_csv("1,2,3\n"); }) == ErrorCode::kParse);
}

TEST_CASE("block map dump lists exact coefficients") {
  const auto s = two_letter_example();
  const auto dump = format_blockmap(compile_blockmap(s), s);
  CHECK(dump.find("# radix=3 letters=2 cut=-1..0 pieces=4 identity=0\n") == 0);
  // (x, y) -> (3x, y/3) on [0,1/3] x [2/3,1].
  CHECK(dump.find("piece 1 window=0.1 domain=[0/3^1,1/3^1]x[2/3^1,3/3^1] "
                  "image=[0/3^0,1/3^0]x[2/3^2,3/3^2] m=1 cx=0/3^0 cy=0/3^0\n") != std::string::npos);
  // (x, y) -> (3x - 2, y/3 - 2/9) on [2/3,1] x [2/3,1].
  CHECK(dump.find("m=1 cx=-2/3^0 cy=-2/3^2") != std::string::npos);
}

TEST_CASE("svg layout") {
  const auto s = two_letter_example();
  const auto svg = render_svg(compile_blockmap(s), s);
  CHECK(svg == render_svg(compile_blockmap(s), s));
  // Left square at (30, 30), side 400; domain [0,1/3] x [2/3,1].
  CHECK(svg.find("<rect x=\"30.000\" y=\"30.000\" width=\"133.333\" height=\"133.333\"") !=
        std::string::npos);
  // Right square at (460, 30); image [0,1] x [2/9,1/3].
  CHECK(svg.find("<rect x=\"460.000\" y=\"296.667\" width=\"400.000\" height=\"44.444\"") !=
        std::string::npos);
  const auto with_orbit = render_svg(compile_blockmap(s), s, {{RadixRational(3), RadixRational(mpz_class(2), 1, 3)}});
  CHECK(with_orbit.find("<circle cx=\"30.000\" cy=\"163.333\" r=\"2\"") != std::string::npos);
}

}  // TEST_SUITE
