#pragma once

namespace fixtures {

template <typename Visit>
void for_each_small_machine(Visit&& visit) {
  using namespace turingflow;
  const std::vector<std::string> alphabet{"0", "1"};
  const Move moves[] = {Move::kRight, Move::kStay, Move::kLeft};
  for (std::size_t n = 2; n <= 3; ++n) {
    std::vector<std::string> states;
    for (std::size_t i = 0; i + 1 < n; ++i) states.push_back("q" + std::to_string(i));
    states.push_back("h");
    const StateId halting{static_cast<std::uint32_t>(n - 1)};
    const std::size_t options = n * 2 * 3;
    const std::size_t slots = (n - 1) * 2;
    std::size_t total = 1;
    for (std::size_t i = 0; i < slots; ++i) total *= options;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::vector<std::optional<Rule>>> rules(n, std::vector<std::optional<Rule>>(2));
      std::size_t c = code;
      for (std::size_t slot = 0; slot < slots; ++slot) {
        const std::size_t o = c % options;
        c /= options;
        rules[slot / 2][slot % 2] =
            Rule{StateId(static_cast<std::uint32_t>(o / 6)),
                 SymbolId(static_cast<std::uint32_t>((o / 3) % 2)), moves[o % 3]};
      }
      TuringMachine m(states, alphabet, StateId(0), halting, std::move(rules));
      visit(extend_halting(m));
    }
  }
}

}  // namespace fixtures
