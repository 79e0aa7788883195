#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "turingflow/gshift.h"
#include "turingflow/tm_core.h"

namespace fixtures {

using turingflow::Configuration;
using turingflow::TuringMachine;

struct RuleText {
  std::string state;
  std::string symbol;
  std::string next;
  std::string write;
  char move;  // L, R or N
};

TuringMachine machine(const std::vector<std::string>& states,
                      const std::vector<std::string>& alphabet,
                      const std::string& initial, const std::string& halt,
                      const std::vector<RuleText>& rules);

// Moves right over a block of 1s, appends a 1, walks back and halts on the
// leftmost 1. Not reversible.
TuringMachine unary_incrementer();

// Tape "1 1" at cells 0 and 1, head on cell 0.
Configuration unary_input(const TuringMachine& m, int ones = 2);

// (q0,0)->(q1,0,N) and (q0,1)->(q1,0,N).
TuringMachine colliding_machine();

// Two non-halting states swapping forever; no rule enters the halting state.
TuringMachine loop_machine();

// First rule goes straight to the halting state.
TuringMachine instant_halt();

// Alphabet {0,1}, windows {-1,0}. With literal = false, F(0.1) = F(1.1) = -1
// and F(0.0) = F(1.0) = 0; literal = true swaps in the table as printed.
turingflow::GeneralizedShift example_shift(bool literal = false);

// Random machine with `states` states (halting included) and `symbols`
// symbols; targets, writes and moves uniform.
TuringMachine random_machine(std::mt19937_64& rng, std::size_t states,
                             std::size_t symbols);

// Random configuration in any state with tape support inside [-radius, radius].
Configuration random_config(std::mt19937_64& rng, const TuringMachine& m,
                            int radius, bool any_state = true);

// Brute force: the global transition map restricted to configurations
// supported in [-3, 3] is injective. Uses its own step implementation.
bool brute_force_injective(const TuringMachine& extended);

// Every extended machine with at most 3 states (halting included) and
// symbols {0, 1}.
template <typename Visit>
void for_each_small_machine(Visit&& visit);

// Independent reference step on a sparse map tape.
struct SparseConfig {
  std::size_t state;
  std::map<long, std::size_t> cells;  // non-blank only
  bool operator==(const SparseConfig&) const = default;
  bool operator<(const SparseConfig& o) const {
    return state != o.state ? state < o.state : cells < o.cells;
  }
};
SparseConfig reference_step(const TuringMachine& m, const SparseConfig& c);
SparseConfig to_sparse(const Configuration& c);

}  // namespace fixtures

#include "fixtures_inl.h"
