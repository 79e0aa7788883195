#include <algorithm>
#include "fixtures.h"

#include <stdexcept>

namespace fixtures {

using namespace turingflow;

TuringMachine machine(const std::vector<std::string>& states,
                      const std::vector<std::string>& alphabet,
                      const std::string& initial, const std::string& halt,
                      const std::vector<RuleText>& rules) {
  auto state = [&](const std::string& s) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] == s) return StateId(static_cast<std::uint32_t>(i));
    }
    throw std::invalid_argument("state " + s);
  };
  auto symbol = [&](const std::string& s) {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      if (alphabet[i] == s) return SymbolId(static_cast<std::uint32_t>(i));
    }
    throw std::invalid_argument("symbol " + s);
  };
  std::vector<std::vector<std::optional<Rule>>> table(
      states.size(), std::vector<std::optional<Rule>>(alphabet.size()));
  for (const auto& r : rules) {
    const Move move = r.move == 'L' ? Move::kLeft : r.move == 'R' ? Move::kRight : Move::kStay;
    table[index_of(state(r.state))][index_of(symbol(r.symbol))] =
        Rule{state(r.next), symbol(r.write), move};
  }
  return TuringMachine(states, alphabet, state(initial), state(halt), std::move(table));
}

TuringMachine unary_incrementer() {
  return machine({"q0", "q1", "qh"}, {"b", "1"}, "q0", "qh",
                 {{"q0", "1", "q0", "1", 'L'},
                  {"q0", "b", "q1", "1", 'R'},
                  {"q1", "1", "q1", "1", 'R'},
                  {"q1", "b", "qh", "b", 'L'}});
}

Configuration unary_input(const TuringMachine& m, int ones) {
  Configuration c{m.initial(), {}};
  for (int i = 0; i < ones; ++i) c.tape.set(i, SymbolId(1));
  return c;
}

TuringMachine colliding_machine() {
  return machine({"q0", "q1", "qh"}, {"0", "1"}, "q0", "qh",
                 {{"q0", "0", "q1", "0", 'N'},
                  {"q0", "1", "q1", "0", 'N'},
                  {"q1", "0", "qh", "0", 'N'},
                  {"q1", "1", "qh", "1", 'N'}});
}

TuringMachine loop_machine() {
  return machine({"a", "c", "h"}, {"0", "1"}, "a", "h",
                 {{"a", "0", "c", "0", 'L'},
                  {"a", "1", "c", "1", 'L'},
                  {"c", "0", "a", "0", 'R'},
                  {"c", "1", "a", "1", 'R'}});
}

TuringMachine instant_halt() {
  return machine({"q0", "qh"}, {"0", "1"}, "q0", "qh",
                 {{"q0", "0", "qh", "1", 'N'}, {"q0", "1", "qh", "1", 'N'}});
}

GeneralizedShift example_shift(bool literal) {
  GeneralizedShift s({"0", "1"}, Window{-1, 2}, Window{-1, 2});
  auto w = [](unsigned a, unsigned b) { return Word{Letter(a), Letter(b)}; };
  s.set_rewrite(w(0, 1), w(0, 1));
  s.set_rewrite(w(1, 1), w(0, 0));
  s.set_rewrite(w(0, 0), w(0, 1));
  s.set_rewrite(w(1, 0), w(1, 1));
  s.set_shift(w(0, 1), -1);
  s.set_shift(w(1, 1), literal ? 0 : -1);
  s.set_shift(w(0, 0), literal ? -1 : 0);
  s.set_shift(w(1, 0), 0);
  return s;
}

TuringMachine random_machine(std::mt19937_64& rng, std::size_t states,
                             std::size_t symbols) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i + 1 < states; ++i) names.push_back("q" + std::to_string(i));
  names.push_back("h");
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < symbols; ++i) alphabet.push_back("s" + std::to_string(i));
  std::uniform_int_distribution<std::uint32_t> state(0, static_cast<std::uint32_t>(states - 1));
  std::uniform_int_distribution<std::uint32_t> symbol(0, static_cast<std::uint32_t>(symbols - 1));
  std::uniform_int_distribution<int> move(-1, 1);
  std::vector<std::vector<std::optional<Rule>>> rules(
      states, std::vector<std::optional<Rule>>(symbols));
  for (std::size_t q = 0; q + 1 < states; ++q) {
    for (std::size_t s = 0; s < symbols; ++s) {
      rules[q][s] = Rule{StateId(state(rng)), SymbolId(symbol(rng)),
                         static_cast<Move>(move(rng))};
    }
  }
  return TuringMachine(names, alphabet, StateId(0),
                       StateId(static_cast<std::uint32_t>(states - 1)), std::move(rules));
}

Configuration random_config(std::mt19937_64& rng, const TuringMachine& m, int radius,
                            bool any_state) {
  std::uniform_int_distribution<std::uint32_t> state(0, static_cast<std::uint32_t>(m.num_states() - 1));
  std::uniform_int_distribution<std::uint32_t> symbol(0, static_cast<std::uint32_t>(m.num_symbols() - 1));
  Configuration c{any_state ? StateId(state(rng)) : m.initial(), {}};
  for (int n = -radius; n <= radius; ++n) c.tape.set(n, SymbolId(symbol(rng)));
  return c;
}

SparseConfig reference_step(const TuringMachine& m, const SparseConfig& c) {
  const auto it = c.cells.find(0);
  const std::size_t scanned = it == c.cells.end() ? 0 : it->second;
  const Rule& r = *m.rule(StateId(static_cast<std::uint32_t>(c.state)),
                          SymbolId(static_cast<std::uint32_t>(scanned)));
  std::map<long, std::size_t> written = c.cells;
  written.erase(0);
  if (index_of(r.write) != 0) written[0] = index_of(r.write);
  const long eps = static_cast<long>(r.move);
  SparseConfig out{index_of(r.next), {}};
  for (const auto& [pos, sym] : written) out.cells[pos - eps] = sym;
  return out;
}

SparseConfig to_sparse(const Configuration& c) {
  SparseConfig s{index_of(c.state), {}};
  if (auto range = c.tape.support()) {
    for (Position n = range->first; n <= range->second; ++n) {
      if (index_of(c.tape.at(n)) != 0) s.cells[n] = index_of(c.tape.at(n));
    }
  }
  return s;
}

bool brute_force_injective(const TuringMachine& extended) {
  const std::size_t n = extended.num_symbols();
  std::size_t tapes = 1;
  for (int i = 0; i < 7; ++i) tapes *= n;
  // Successors are supported in [-4, 4]; pack them into one integer.
  std::vector<std::uint64_t> images;
  images.reserve(extended.num_states() * tapes);
  for (std::size_t q = 0; q < extended.num_states(); ++q) {
    for (std::size_t code = 0; code < tapes; ++code) {
      SparseConfig c{q, {}};
      std::size_t k = code;
      for (long pos = -3; pos <= 3; ++pos) {
        if (k % n != 0) c.cells[pos] = k % n;
        k /= n;
      }
      const SparseConfig next = reference_step(extended, c);
      std::uint64_t key = next.state;
      for (long pos = -4; pos <= 4; ++pos) {
        const auto it = next.cells.find(pos);
        key = key * n + (it == next.cells.end() ? 0 : it->second);
      }
      images.push_back(key);
    }
  }
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

}  // namespace fixtures
