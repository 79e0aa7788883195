#include "turingflow/tm_core.h"

#include <algorithm>
#include <set>

#include "turingflow/error.h"

namespace turingflow {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidMachine, message);
}

void validate_config(const TuringMachine& machine, const Configuration& c) {
  if (index_of(c.state) >= machine.num_states()) {
    throw Error(ErrorCode::kUnknownState,
                "configuration state " + std::to_string(index_of(c.state)) +
                    " is not declared");
  }
  for (SymbolId s : c.tape.cells()) {
    if (index_of(s) >= machine.num_symbols()) {
      throw Error(ErrorCode::kUnknownSymbol,
                  "tape symbol " + std::to_string(index_of(s)) +
                      " is not in the alphabet");
    }
  }
}

// Assumes a validated configuration.
void step_in_place(const TuringMachine& machine, Configuration& c) {
  const auto& rule = machine.rule(c.state, c.tape.at(0));
  if (!rule) {
    throw Error(ErrorCode::kHaltingStateStep,
                "no rule for state '" + machine.state_name(c.state) +
                    "'; extend the machine before stepping past q_halt");
  }
  c.state = rule->next;
  c.tape.set(0, rule->write);
  c.tape.shift(shift_amount(rule->move));
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& taken) {
  std::string name = base;
  while (taken.contains(name)) name += '_';
  return name;
}

}  // namespace

TuringMachine::TuringMachine(std::vector<std::string> states,
                             std::vector<std::string> alphabet,
                             StateId initial, StateId halting,
                             std::vector<std::vector<std::optional<Rule>>> rules)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      halting_(halting),
      rules_(std::move(rules)) {
  require(alphabet_.size() >= 2, "alphabet needs at least two symbols");
  require(states_.size() >= 2, "need at least an initial and a halting state");
  require(index_of(initial_) < states_.size(), "initial state out of range");
  require(index_of(halting_) < states_.size(), "halting state out of range");
  require(initial_ != halting_, "initial and halting state must differ");

  std::set<std::string> names;
  for (const auto& s : states_) {
    require(!s.empty(), "empty state name");
    require(names.insert(s).second, "duplicate identifier '" + s + "'");
  }
  for (const auto& s : alphabet_) {
    require(!s.empty(), "empty symbol name");
    require(names.insert(s).second,
            "identifier '" + s + "' is used twice (states and symbols share "
                                 "one namespace)");
  }

  require(rules_.size() == states_.size(), "rule table has wrong row count");
  for (std::size_t q = 0; q < states_.size(); ++q) {
    require(rules_[q].size() == alphabet_.size(),
            "rule row for '" + states_[q] + "' has wrong width");
    const bool is_halt = q == index_of(halting_);
    const auto defined = std::count_if(rules_[q].begin(), rules_[q].end(),
                                       [](const auto& r) { return r.has_value(); });
    if (is_halt) {
      require(defined == 0 || defined == static_cast<long>(alphabet_.size()),
              "halting row must be either empty or complete");
    } else {
      require(defined == static_cast<long>(alphabet_.size()),
              "missing rule for state '" + states_[q] + "'");
    }
    for (const auto& r : rules_[q]) {
      if (!r) continue;
      require(index_of(r->next) < states_.size(), "rule targets unknown state");
      require(index_of(r->write) < alphabet_.size(), "rule writes unknown symbol");
      const int m = shift_amount(r->move);
      require(m >= -1 && m <= 1, "move must be -1, 0 or +1");
    }
  }
}

std::optional<StateId> TuringMachine::find_state(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return StateId(static_cast<std::uint32_t>(it - states_.begin()));
}

std::optional<SymbolId> TuringMachine::find_symbol(const std::string& name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return SymbolId(static_cast<std::uint32_t>(it - alphabet_.begin()));
}

bool TuringMachine::is_extended() const {
  return rules_[index_of(halting_)].front().has_value();
}

Configuration step(const TuringMachine& machine, const Configuration& config) {
  validate_config(machine, config);
  Configuration next = config;
  step_in_place(machine, next);
  return next;
}

TuringMachine extend_halting(const TuringMachine& machine) {
  auto rules = machine.rules();
  auto& row = rules[index_of(machine.halting())];
  for (std::size_t s = 0; s < row.size(); ++s) {
    row[s] = Rule{machine.initial(), SymbolId(static_cast<std::uint32_t>(s)),
                  Move::kStay};
  }
  return TuringMachine(machine.states(), machine.alphabet(), machine.initial(),
                       machine.halting(), std::move(rules));
}

RunResult run(const TuringMachine& machine, const Configuration& input,
              std::uint64_t max_steps) {
  validate_config(machine, input);
  Configuration c = input;
  for (std::uint64_t n = 0;; ++n) {
    if (c.state == machine.halting()) return Halted{n, std::move(c)};
    if (n == max_steps) return Running{std::move(c)};
    step_in_place(machine, c);
  }
}

ReversibilityReport check_reversible(const TuringMachine& machine) {
  if (!machine.is_extended()) {
    throw Error(ErrorCode::kNotExtended,
                "reversibility is decided on the halting-extended machine");
  }
  const std::size_t nq = machine.num_states();
  const std::size_t ns = machine.num_symbols();
  std::vector<std::vector<RuleRef>> incoming(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t s = 0; s < ns; ++s) {
      RuleRef ref{StateId(static_cast<std::uint32_t>(q)),
                  SymbolId(static_cast<std::uint32_t>(s))};
      incoming[index_of(machine.rule(ref.state, ref.symbol)->next)].push_back(ref);
    }
  }

  for (const auto& group : incoming) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        const Rule& r1 = *machine.rule(group[i].state, group[i].symbol);
        const Rule& r2 = *machine.rule(group[j].state, group[j].symbol);
        if (r1.move == r2.move && r1.write != r2.write) continue;

        // Build written tapes w1, w2 with w1_{n} = w2_{n - d}, d = e1 - e2,
        // so that both shift to the same successor tape.
        Configuration a{group[i].state, {}};
        Configuration b{group[j].state, {}};
        const int d = shift_amount(r1.move) - shift_amount(r2.move);
        if (d != 0) {
          a.tape.set(d, r2.write);
          b.tape.set(-d, r1.write);
        }
        a.tape.set(0, group[i].symbol);
        b.tape.set(0, group[j].symbol);
        ReversibilityReport report;
        report.reversible = false;
        report.witness = ReversibilityWitness{group[i], group[j], std::move(a),
                                              std::move(b)};
        return report;
      }
    }
  }
  return {};
}

TuringMachine make_reader(const TuringMachine& machine, std::size_t k,
                          const std::vector<SymbolId>& target) {
  if (target.size() != 2 * k + 1) {
    throw Error(ErrorCode::kSymbolNotInAlphabet,
                "target window must have 2k+1 = " + std::to_string(2 * k + 1) +
                    " symbols");
  }
  for (SymbolId s : target) {
    if (index_of(s) >= machine.num_symbols()) {
      throw Error(ErrorCode::kSymbolNotInAlphabet,
                  "target symbol " + std::to_string(index_of(s)) +
                      " is not in the alphabet");
    }
  }
  // target[i + k] is the expected symbol at position i, i in [-k, k].
  auto expected = [&](long pos) { return target[static_cast<std::size_t>(pos + static_cast<long>(k))]; };

  std::set<std::string> taken(machine.states().begin(), machine.states().end());
  taken.insert(machine.alphabet().begin(), machine.alphabet().end());
  std::vector<std::string> states = machine.states();
  const auto first_reader = static_cast<std::uint32_t>(states.size());
  for (std::size_t i = 0; i <= 3 * k; ++i) {
    auto name = fresh_name("r" + std::to_string(i), taken);
    taken.insert(name);
    states.push_back(name);
  }
  const auto nohalt = StateId(static_cast<std::uint32_t>(states.size()));
  states.push_back(fresh_name("q_nohalt", taken));

  auto reader = [&](std::size_t i) { return StateId(first_reader + static_cast<std::uint32_t>(i)); };
  const std::size_t ns = machine.num_symbols();
  std::vector<std::vector<std::optional<Rule>>> rules(
      states.size(), std::vector<std::optional<Rule>>(ns));

  for (std::size_t q = 0; q < machine.num_states(); ++q) {
    if (q == index_of(machine.halting())) continue;
    for (std::size_t s = 0; s < ns; ++s) {
      Rule r = *machine.rules()[q][s];
      if (r.next == machine.halting()) r.next = reader(0);
      rules[q][s] = r;
    }
  }

  for (std::size_t s = 0; s < ns; ++s) {
    const auto sym = SymbolId(static_cast<std::uint32_t>(s));
    const Rule trap{nohalt, sym, Move::kStay};
    for (std::size_t i = 0; i < k; ++i) {
      const bool ok = sym == expected(-static_cast<long>(i));
      rules[index_of(reader(i))][s] = ok ? Rule{reader(i + 1), sym, Move::kRight} : trap;
    }
    for (std::size_t i = k; i < 3 * k; ++i) {
      const bool ok = sym == expected(static_cast<long>(i) - 2 * static_cast<long>(k));
      rules[index_of(reader(i))][s] = ok ? Rule{reader(i + 1), sym, Move::kLeft} : trap;
    }
    const bool ok = sym == expected(static_cast<long>(k));
    rules[index_of(reader(3 * k))][s] =
        ok ? Rule{machine.halting(), sym, Move::kStay} : trap;
    rules[index_of(nohalt)][s] = trap;
  }

  return TuringMachine(std::move(states), machine.alphabet(), machine.initial(),
                       machine.halting(), std::move(rules));
}

TuringMachine make_reader(const TuringMachine& machine, std::size_t k,
                          const std::vector<std::string>& target) {
  std::vector<SymbolId> ids;
  ids.reserve(target.size());
  for (const auto& name : target) {
    auto id = machine.find_symbol(name);
    if (!id) {
      throw Error(ErrorCode::kSymbolNotInAlphabet,
                  "target symbol '" + name + "' is not in the alphabet");
    }
    ids.push_back(*id);
  }
  return make_reader(machine, k, ids);
}

std::vector<SymbolId> output_window(const Configuration& config, std::size_t k) {
  std::vector<SymbolId> window;
  window.reserve(2 * k + 1);
  const auto kk = static_cast<Position>(k);
  for (Position n = -kk; n <= kk; ++n) window.push_back(config.tape.at(n));
  return window;
}

}  // namespace turingflow
