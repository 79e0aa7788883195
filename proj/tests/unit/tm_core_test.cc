#include <doctest.h>

#include <random>

#include "fixtures.h"
#include "turingflow/error.h"
#include "turingflow/tm_core.h"

using namespace turingflow;
using fixtures::machine;

namespace {

Tape tape_of(std::initializer_list<std::pair<Position, std::uint32_t>> cells) {
  Tape t;
  for (auto [n, s] : cells) t.set(n, SymbolId(s));
  return t;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

}  // namespace

TEST_SUITE("tm_core") {

TEST_CASE("stay rule that rewrites the scanned symbol is a fixed point") {
  auto m = machine({"q0", "qh"}, {"b", "1"}, "q0", "qh",
                   {{"q0", "1", "q0", "1", 'N'}, {"q0", "b", "qh", "b", 'N'}});
  const Configuration c{StateId(0), tape_of({{0, 1}})};
  CHECK(step(m, c) == c);
}

TEST_CASE("left move shifts the written cell to position -1") {
  auto m = machine({"q0", "q1", "qh"}, {"b", "x"}, "q0", "qh",
                   {{"q0", "b", "q1", "x", 'L'}, {"q0", "x", "qh", "x", 'N'},
                    {"q1", "b", "qh", "b", 'N'}, {"q1", "x", "qh", "x", 'N'}});
  const Configuration next = step(m, Configuration{StateId(0), {}});
  CHECK(next.state == StateId(1));
  CHECK(next.tape == tape_of({{-1, 1}}));
}

TEST_CASE("unary incrementer halts with three ones") {
  const auto m = fixtures::unary_incrementer();
  // Hand count: two moves over the ones, append, two moves back, step off the
  // left end onto the first 1.
  const auto result = run(m, fixtures::unary_input(m), 100);
  REQUIRE(std::holds_alternative<Halted>(result));
  const auto& h = std::get<Halted>(result);
  CHECK(h.steps == 6);
  CHECK(h.final_config.tape == tape_of({{0, 1}, {1, 1}, {2, 1}}));

  const auto window = output_window(h.final_config, 1);
  CHECK(window == std::vector<SymbolId>{SymbolId(0), SymbolId(1), SymbolId(1)});
}

TEST_CASE("extension sends the halting state back to q0 with the tape intact") {
  const auto m = fixtures::unary_incrementer();
  const auto ext = extend_halting(m);
  CHECK(ext.is_extended());
  CHECK_FALSE(m.is_extended());
  CHECK(extend_halting(ext) == ext);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    Configuration c = fixtures::random_config(rng, m, 3);
    c.state = m.halting();
    const Configuration next = step(ext, c);
    CHECK(next.state == m.initial());
    CHECK(next.tape == c.tape);
  }

  const auto h = std::get<Halted>(run(m, fixtures::unary_input(m), 100));
  const auto after = step(ext, h.final_config);
  CHECK(after.state == m.initial());
  CHECK(after.tape == h.final_config.tape);
  // Other rows are untouched.
  for (std::size_t q = 0; q + 1 < m.num_states(); ++q) {
    CHECK(ext.rules()[q] == m.rules()[q]);
  }
}

TEST_CASE("run: immediate halt, looping machine, budget zero") {
  const auto h = fixtures::instant_halt();
  const auto r = run(h, Configuration{h.initial(), {}}, 10);
  REQUIRE(std::holds_alternative<Halted>(r));
  CHECK(std::get<Halted>(r).steps == 1);

  const auto loop = fixtures::loop_machine();
  CHECK(std::holds_alternative<Running>(run(loop, Configuration{loop.initial(), {}}, 100)));

  const auto z = run(h, Configuration{h.initial(), {}}, 0);
  CHECK(std::holds_alternative<Running>(z));
  // A configuration already in q_halt halts at step 0.
  CHECK(std::get<Halted>(run(h, Configuration{h.halting(), {}}, 0)).steps == 0);
}

TEST_CASE("errors") {
  const auto m = fixtures::unary_incrementer();
  CHECK(code_of([&] { step(m, Configuration{m.halting(), {}}); }) == ErrorCode::kHaltingStateStep);
  CHECK(code_of([&] { step(m, Configuration{StateId(9), {}}); }) == ErrorCode::kUnknownState);
  CHECK(code_of([&] { step(m, Configuration{StateId(0), tape_of({{2, 7}})}); }) ==
        ErrorCode::kUnknownSymbol);
  CHECK(code_of([&] { check_reversible(m); }) == ErrorCode::kNotExtended);
  CHECK(code_of([&] { make_reader(m, 0, std::vector<std::string>{"z"}); }) ==
        ErrorCode::kSymbolNotInAlphabet);
  CHECK(code_of([&] { make_reader(m, 1, std::vector<std::string>{"1"}); }) ==
        ErrorCode::kSymbolNotInAlphabet);

  CHECK(code_of([] { machine({"q0", "qh"}, {"b"}, "q0", "qh", {}); }) ==
        ErrorCode::kInvalidMachine);
  CHECK(code_of([] { machine({"q0", "qh"}, {"b", "1"}, "q0", "qh", {{"q0", "b", "qh", "b", 'N'}}); }) ==
        ErrorCode::kInvalidMachine);
  CHECK(code_of([] { machine({"q0", "qh"}, {"b", "q0"}, "q0", "qh", {}); }) ==
        ErrorCode::kInvalidMachine);
  CHECK(code_of([] { machine({"q0", "qh"}, {"b", "1"}, "q0", "q0", {}); }) ==
        ErrorCode::kInvalidMachine);
}

TEST_CASE("colliding rules give a verified witness") {
  const auto ext = extend_halting(fixtures::colliding_machine());
  const auto report = check_reversible(ext);
  REQUIRE_FALSE(report.reversible);
  REQUIRE(report.witness);
  const auto& w = *report.witness;
  CHECK(w.config_a != w.config_b);
  CHECK(step(ext, w.config_a) == step(ext, w.config_b));
  // The two rules differ only in the scanned symbol.
  CHECK(w.config_a.state == w.config_b.state);
}

TEST_CASE("single incoming rule per state is reversible") {
  // q0 -> q1 -> qh -> q0 (extension), each reached from one row only.
  auto m = machine({"q0", "q1", "qh"}, {"0", "1"}, "q0", "qh",
                   {{"q0", "0", "q1", "1", 'L'}, {"q0", "1", "q1", "0", 'L'},
                    {"q1", "0", "qh", "0", 'R'}, {"q1", "1", "qh", "1", 'R'}});
  const auto report = check_reversible(extend_halting(m));
  CHECK(report.reversible);
  CHECK_FALSE(report.witness);
}

TEST_CASE("witnesses collide for random irreversible machines") {
  std::mt19937_64 rng(5);
  int irreversible = 0;
  for (int i = 0; i < 400; ++i) {
    const auto ext = extend_halting(fixtures::random_machine(rng, 2 + i % 3, 2 + i % 2));
    const auto report = check_reversible(ext);
    CHECK(report.reversible == !report.witness.has_value());
    if (!report.witness) continue;
    ++irreversible;
    CHECK(report.witness->config_a != report.witness->config_b);
    CHECK(step(ext, report.witness->config_a) == step(ext, report.witness->config_b));
  }
  CHECK(irreversible > 0);
}

TEST_CASE("rule criterion matches brute force on a sample of the small family") {
  std::size_t index = 0;
  std::size_t checked = 0;
  std::size_t reversible = 0;
  fixtures::for_each_small_machine([&](const TuringMachine& ext) {
    if (index++ % 97 != 0) return;
    const bool criterion = check_reversible(ext).reversible;
    CHECK(criterion == fixtures::brute_force_injective(ext));
    reversible += criterion;
    ++checked;
  });
  CHECK(checked > 1000);
  CHECK(reversible > 0);
}

TEST_CASE("step agrees with an index-shifted copy") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto ext = extend_halting(fixtures::random_machine(rng, 2 + i % 3, 2 + i % 2));
    const auto c = fixtures::random_config(rng, ext, 4);
    CHECK(fixtures::to_sparse(step(ext, c)) == fixtures::reference_step(ext, fixtures::to_sparse(c)));
  }
}

TEST_CASE("run is deterministic and support grows by at most one per step") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto ext = extend_halting(fixtures::random_machine(rng, 3, 3));
    const auto c = fixtures::random_config(rng, ext, 2);
    Configuration cur = c;
    for (int n = 1; n <= 40; ++n) {
      cur = step(ext, cur);
      if (auto s = cur.tape.support()) {
        CHECK(s->first >= -2 - n);
        CHECK(s->second <= 2 + n);
      }
    }
    const auto a = run(ext, c, 40);
    const auto b = run(ext, c, 40);
    CHECK(a.index() == b.index());
    if (std::holds_alternative<Running>(a)) {
      CHECK(std::get<Running>(a).config == std::get<Running>(b).config);
      CHECK(std::get<Running>(a).config == cur);
    }
  }
}

TEST_CASE("output_window") {
  CHECK(output_window(Configuration{}, 1) ==
        std::vector<SymbolId>{SymbolId(0), SymbolId(0), SymbolId(0)});
  CHECK(output_window(Configuration{StateId(0), tape_of({{0, 1}})}, 0) ==
        std::vector<SymbolId>{SymbolId(1)});
}

TEST_CASE("reader with k = 0 checks cell 0 of the output") {
  const auto m = fixtures::unary_incrementer();
  const auto input = fixtures::unary_input(m);
  const auto native = std::get<Halted>(run(m, input, 100));

  const auto yes = make_reader(m, 0, std::vector<std::string>{"1"});
  const auto r = run(yes, input, 1000);
  REQUIRE(std::holds_alternative<Halted>(r));
  CHECK(std::get<Halted>(r).steps == native.steps + reader_latency(0));

  const auto no = make_reader(m, 0, std::vector<std::string>{"b"});
  const auto r2 = run(no, input, 1000);
  REQUIRE(std::holds_alternative<Running>(r2));
  CHECK(no.state_name(std::get<Running>(r2).config.state) == "q_nohalt");
}

TEST_CASE("reader latency counts the 3k+1 reading steps") {
  const auto m = fixtures::unary_incrementer();
  for (int ones = 1; ones <= 4; ++ones) {
    const auto input = fixtures::unary_input(m, ones);
    const auto native = std::get<Halted>(run(m, input, 1000));
    for (std::size_t k = 0; k <= 2; ++k) {
      const auto target = output_window(native.final_config, k);
      const auto reader = make_reader(m, k, target);
      CHECK(reader.num_states() == m.num_states() + 3 * k + 2);
      const auto r = run(reader, input, 1000);
      REQUIRE(std::holds_alternative<Halted>(r));
      CHECK(std::get<Halted>(r).steps == native.steps + 3 * k + 1);
      // The reader leaves the tape as T produced it, shifted by the walk.
      CHECK(std::get<Halted>(r).final_config.tape.cells().size() ==
            native.final_config.tape.cells().size());
    }
  }
}

TEST_CASE("reader never halts for a non-halting machine") {
  const auto loop = fixtures::loop_machine();
  for (const char* t : {"0", "1"}) {
    const auto reader = make_reader(loop, 0, std::vector<std::string>{t});
    CHECK(std::holds_alternative<Running>(run(reader, Configuration{loop.initial(), {}}, 5000)));
  }
}

TEST_CASE("reader halts iff the machine halts with the target window") {
  std::mt19937_64 rng(21);
  int matched = 0;
  int mismatched = 0;
  for (int i = 0; i < 300; ++i) {
    const auto m = fixtures::random_machine(rng, 2 + i % 3, 2 + i % 2);
    const auto input = fixtures::random_config(rng, m, 2, false);
    const std::size_t k = static_cast<std::size_t>(i % 3);
    const std::uint64_t budget = 300;
    const auto native = run(m, input, budget);

    std::vector<SymbolId> target;
    std::uniform_int_distribution<std::uint32_t> sym(0, static_cast<std::uint32_t>(m.num_symbols() - 1));
    if (std::holds_alternative<Halted>(native) && i % 2 == 0) {
      target = output_window(std::get<Halted>(native).final_config, k);
    } else {
      for (std::size_t j = 0; j < 2 * k + 1; ++j) target.push_back(SymbolId(sym(rng)));
    }
    const bool expect = std::holds_alternative<Halted>(native) &&
                        output_window(std::get<Halted>(native).final_config, k) == target;
    const auto reader = run(make_reader(m, k, target), input, budget + reader_latency(k));
    CHECK(std::holds_alternative<Halted>(reader) == expect);
    (expect ? matched : mismatched)++;
  }
  CHECK(matched > 20);
  CHECK(mismatched > 20);
}

TEST_CASE("reader with a window off by one position traps in q_nohalt") {
  const auto m = fixtures::unary_incrementer();
  const auto input = fixtures::unary_input(m);
  const auto native = std::get<Halted>(run(m, input, 100));
  for (std::size_t k = 0; k <= 2; ++k) {
    auto target = output_window(native.final_config, k);
    for (std::size_t pos = 0; pos < target.size(); ++pos) {
      auto wrong = target;
      wrong[pos] = SymbolId(1 - index_of(wrong[pos]));
      const auto reader = make_reader(m, k, wrong);
      const auto r = run(reader, input, 10000);
      REQUIRE(std::holds_alternative<Running>(r));
      CHECK(reader.state_name(std::get<Running>(r).config.state) == "q_nohalt");
    }
  }
}

TEST_CASE("extension of a machine re-entering q0 in place is not injective") {
  // (q1, 0) -> (q0, 0, N) collides with the extension row (qh, 0) -> (q0, 0, N).
  auto m = machine({"q0", "q1", "qh"}, {"0", "1"}, "q0", "qh",
                   {{"q0", "0", "q1", "0", 'L'}, {"q0", "1", "qh", "1", 'L'},
                    {"q1", "0", "q0", "0", 'N'}, {"q1", "1", "q0", "1", 'N'}});
  const auto ext = extend_halting(m);
  CHECK_FALSE(check_reversible(ext).reversible);
  CHECK_FALSE(fixtures::brute_force_injective(ext));
}

}  // TEST_SUITE
