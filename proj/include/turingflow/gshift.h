#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "turingflow/finite_tape.h"
#include "turingflow/tm_core.h"

namespace turingflow {

// Letter of a generalized-shift alphabet. Letter 0 is the blank.
enum class Letter : std::uint32_t {};

constexpr std::size_t index_of(Letter l) { return static_cast<std::size_t>(l); }

using BiSequence = FiniteTape<Letter>;
using Word = std::vector<Letter>;

// Contiguous block of positions {start, ..., start + size - 1}.
struct Window {
  Position start = 0;
  std::size_t size = 1;

  Position last() const { return start + static_cast<Position>(size) - 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

// Sequences whose position 0 holds a `center` letter and every other position
// a `background` letter. Compiled machine shifts carry the image of the
// configuration space this way; bijectivity is judged on it.
struct PhaseSpace {
  std::vector<Letter> center;
  std::vector<Letter> background;

  bool admits(Position n, Letter l) const;
  friend bool operator==(const PhaseSpace&, const PhaseSpace&) = default;
};

class GeneralizedShift {
 public:
  // Identity shift (F = 0, G = id) on the given alphabet; tables are filled
  // in with set_shift/set_rewrite. Throws Error(kInvalidShift).
  GeneralizedShift(std::vector<std::string> alphabet, Window window_f,
                   Window window_g);

  std::size_t alphabet_size() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::optional<Letter> find_letter(const std::string& name) const;
  const Window& window_f() const { return window_f_; }
  const Window& window_g() const { return window_g_; }

  int shift_for(std::span<const Letter> word_f) const {
    return table_f_[key(word_f)];
  }
  std::span<const Letter> rewrite_for(std::span<const Letter> word_g) const {
    const std::size_t k = key(word_g);
    return {table_g_.data() + k * window_g_.size, window_g_.size};
  }
  void set_shift(std::span<const Letter> word_f, int amount);
  void set_rewrite(std::span<const Letter> word_g, std::span<const Letter> image);

  // max |F| over the table.
  int max_abs_shift() const;

  const std::optional<PhaseSpace>& phase_space() const { return phase_space_; }
  void set_phase_space(PhaseSpace space) { phase_space_ = std::move(space); }

  // Dense table index of a word; words are read most-significant first.
  std::size_t key(std::span<const Letter> word) const;
  Word word_at(std::size_t key, std::size_t length) const;
  std::size_t table_size_f() const { return table_f_.size(); }
  std::size_t table_size_g() const { return table_g_.size() / window_g_.size; }

  friend bool operator==(const GeneralizedShift&, const GeneralizedShift&) = default;

 private:
  std::vector<std::string> alphabet_;
  Window window_f_;
  Window window_g_;
  std::vector<int> table_f_;
  std::vector<Letter> table_g_;
  std::optional<PhaseSpace> phase_space_;
};

Word read_window(const BiSequence& s, const Window& w);

// One application: F and G read the original sequence, G rewrites its
// window, and the result is shifted so that s''_n = s'_{n + F}.
BiSequence apply(const GeneralizedShift& shift, const BiSequence& s);

GeneralizedShift standard_shift(std::vector<std::string> alphabet, int amount = 1);

// Two-letter example with windows {-1, 0}: G rewrites 0.1->0.1, 1.1->0.0,
// 0.0->0.1, 1.0->1.1. F is -1 on 0.1 and 1.1 and 0 elsewhere; `literal`
// swaps F(1.1) and F(0.0), which makes the shift non-injective.
GeneralizedShift two_letter_example(bool literal = false);

// Encoding of machine configurations as sequences over Sigma followed by Q:
// (..t_{-1} . q t_0 t_1..).
class Conjugation {
 public:
  Conjugation(std::size_t num_symbols, std::size_t num_states, StateId halting)
      : num_symbols_(num_symbols), num_states_(num_states), halting_(halting) {}

  std::size_t num_symbols() const { return num_symbols_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t alphabet_size() const { return num_symbols_ + num_states_; }
  StateId halting() const { return halting_; }
  Letter state_letter(StateId q) const {
    return Letter(static_cast<std::uint32_t>(num_symbols_ + index_of(q)));
  }
  Letter symbol_letter(SymbolId s) const {
    return Letter(static_cast<std::uint32_t>(index_of(s)));
  }
  bool is_state_letter(Letter l) const {
    return index_of(l) >= num_symbols_ && index_of(l) < num_symbols_ + num_states_;
  }

  friend bool operator==(const Conjugation&, const Conjugation&) = default;

 private:
  std::size_t num_symbols_;
  std::size_t num_states_;
  StateId halting_;
};

struct CompiledMachine {
  GeneralizedShift shift;
  Conjugation conjugation;
};

// Requires an extended machine (Error kNotExtended). Windows D_F = D_G =
// {-1, 0, 1}.
CompiledMachine compile_tm(const TuringMachine& machine);

BiSequence encode_config(const Conjugation& conj, const Configuration& c);

// Error kNotInImage unless s_0 is a state letter and all else tape letters.
Configuration decode_config(const Conjugation& conj, const BiSequence& s);

// Image blocks of the induced block map are pairwise disjoint. When the
// shift carries a phase space only blocks meeting it are compared.
bool is_bijective(const GeneralizedShift& shift);

// "(..s_{-1}.s_0 s_1..)" over the stored support, letters separated by
// spaces, "." before position 0.
std::string render_sequence(const GeneralizedShift& shift, const BiSequence& s);

}  // namespace turingflow
