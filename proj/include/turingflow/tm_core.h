#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "turingflow/finite_tape.h"

namespace turingflow {

enum class StateId : std::uint32_t {};
enum class SymbolId : std::uint32_t {};

constexpr std::size_t index_of(StateId s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index_of(SymbolId s) { return static_cast<std::size_t>(s); }

// Tape shift applied after a write. kLeft (+1) moves every cell one position
// to the left, so the head effectively advances to the right; kRight (-1) is
// the opposite.
enum class Move : std::int8_t { kRight = -1, kStay = 0, kLeft = 1 };

constexpr int shift_amount(Move m) { return static_cast<int>(m); }

struct Rule {
  StateId next;
  SymbolId write;
  Move move;

  friend bool operator==(const Rule&, const Rule&) = default;
};

using Tape = FiniteTape<SymbolId>;

struct Configuration {
  StateId state{};
  Tape tape;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Deterministic single-tape machine with a fixed head and a moving tape. The
// first alphabet symbol is the blank (SymbolId 0).
class TuringMachine {
 public:
  // Validates: at least two symbols, distinct names, state names disjoint
  // from symbol names, initial != halting, and a rule for every
  // (non-halting state, symbol). A halting row may be given, in which case it
  // must be complete. Throws Error(kInvalidMachine).
  TuringMachine(std::vector<std::string> states,
                std::vector<std::string> alphabet, StateId initial,
                StateId halting,
                std::vector<std::vector<std::optional<Rule>>> rules);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_symbols() const { return alphabet_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& state_name(StateId s) const { return states_.at(index_of(s)); }
  const std::string& symbol_name(SymbolId s) const {
    return alphabet_.at(index_of(s));
  }
  StateId initial() const { return initial_; }
  StateId halting() const { return halting_; }

  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<SymbolId> find_symbol(const std::string& name) const;

  // Empty for the halting row of an unextended machine.
  const std::optional<Rule>& rule(StateId q, SymbolId s) const {
    return rules_[index_of(q)][index_of(s)];
  }
  const std::vector<std::vector<std::optional<Rule>>>& rules() const {
    return rules_;
  }

  bool is_extended() const;

  friend bool operator==(const TuringMachine&, const TuringMachine&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  StateId initial_;
  StateId halting_;
  std::vector<std::vector<std::optional<Rule>>> rules_;
};

Configuration step(const TuringMachine& machine, const Configuration& config);

// Sets delta(q_halt, s) = (q0, s, stay) for every symbol s.
TuringMachine extend_halting(const TuringMachine& machine);

struct Halted {
  std::uint64_t steps;
  Configuration final_config;
};
struct Running {
  Configuration config;
};
using RunResult = std::variant<Halted, Running>;

// Halting is detected as soon as the state equals q_halt, before any
// extension row could fire.
RunResult run(const TuringMachine& machine, const Configuration& input,
              std::uint64_t max_steps);

struct RuleRef {
  StateId state;
  SymbolId symbol;
};

struct ReversibilityWitness {
  RuleRef first;
  RuleRef second;
  Configuration config_a;
  Configuration config_b;
};

struct ReversibilityReport {
  bool reversible = true;
  std::optional<ReversibilityWitness> witness;
};

// Injectivity of the global transition function over all configurations.
// Two distinct rules with the same target state are compatible iff they
// shift by the same amount and write different symbols. Requires an
// extended machine (Error kNotExtended).
ReversibilityReport check_reversible(const TuringMachine& machine);

// Machine that runs `machine` and, where it would halt, checks that tape
// cells -k..k hold `target`. It halts on a match and loops forever in
// q_nohalt otherwise. New states are r0..r{3k}, q_nohalt (renamed with a
// trailing underscore on a name clash). Any halting row of the input is
// dropped; the result is unextended.
TuringMachine make_reader(const TuringMachine& machine, std::size_t k,
                          const std::vector<SymbolId>& target);

// Overload resolving target symbols by name (Error kSymbolNotInAlphabet).
TuringMachine make_reader(const TuringMachine& machine, std::size_t k,
                          const std::vector<std::string>& target);

std::vector<SymbolId> output_window(const Configuration& config, std::size_t k);

// Number of steps from reaching r0 to reaching q_halt in a reader machine.
constexpr std::uint64_t reader_latency(std::size_t k) { return 3 * k + 1; }

}  // namespace turingflow
