#include "turingflow/gshift.h"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "turingflow/cantor_map.h"
#include "turingflow/error.h"

namespace turingflow {

bool PhaseSpace::admits(Position n, Letter l) const {
  const auto& allowed = n == 0 ? center : background;
  return std::find(allowed.begin(), allowed.end(), l) != allowed.end();
}

GeneralizedShift::GeneralizedShift(std::vector<std::string> alphabet,
                                   Window window_f, Window window_g)
    : alphabet_(std::move(alphabet)), window_f_(window_f), window_g_(window_g) {
  if (alphabet_.size() < 2) {
    throw Error(ErrorCode::kInvalidShift, "shift alphabet needs at least two letters");
  }
  std::set<std::string> seen;
  for (const auto& a : alphabet_) {
    if (a.empty() || !seen.insert(a).second) {
      throw Error(ErrorCode::kInvalidShift, "empty or duplicate letter '" + a + "'");
    }
  }
  if (window_f_.size == 0 || window_g_.size == 0) {
    throw Error(ErrorCode::kInvalidShift, "windows must be non-empty");
  }
  auto table_entries = [&](std::size_t length) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < length; ++i) {
      if (n > (std::size_t{1} << 24) / alphabet_.size()) {
        throw Error(ErrorCode::kInvalidShift, "window too large for a dense table");
      }
      n *= alphabet_.size();
    }
    return n;
  };
  table_f_.assign(table_entries(window_f_.size), 0);
  const std::size_t ng = table_entries(window_g_.size);
  table_g_.resize(ng * window_g_.size);
  for (std::size_t k = 0; k < ng; ++k) {
    Word w = word_at(k, window_g_.size);
    std::copy(w.begin(), w.end(), table_g_.begin() + static_cast<std::ptrdiff_t>(k * window_g_.size));
  }
}

std::optional<Letter> GeneralizedShift::find_letter(const std::string& name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return Letter(static_cast<std::uint32_t>(it - alphabet_.begin()));
}

std::size_t GeneralizedShift::key(std::span<const Letter> word) const {
  std::size_t k = 0;
  for (Letter l : word) {
    if (index_of(l) >= alphabet_.size()) {
      throw Error(ErrorCode::kInvalidShift, "letter outside the shift alphabet");
    }
    k = k * alphabet_.size() + index_of(l);
  }
  return k;
}

Word GeneralizedShift::word_at(std::size_t key, std::size_t length) const {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = Letter(static_cast<std::uint32_t>(key % alphabet_.size()));
    key /= alphabet_.size();
  }
  return w;
}

void GeneralizedShift::set_shift(std::span<const Letter> word_f, int amount) {
  if (word_f.size() != window_f_.size) {
    throw Error(ErrorCode::kInvalidShift, "F entry has the wrong length");
  }
  table_f_[key(word_f)] = amount;
}

void GeneralizedShift::set_rewrite(std::span<const Letter> word_g,
                                   std::span<const Letter> image) {
  if (word_g.size() != window_g_.size || image.size() != window_g_.size) {
    throw Error(ErrorCode::kInvalidShift, "G entry has the wrong length");
  }
  key(image);
  std::copy(image.begin(), image.end(),
            table_g_.begin() + static_cast<std::ptrdiff_t>(key(word_g) * window_g_.size));
}

int GeneralizedShift::max_abs_shift() const {
  int m = 0;
  for (int f : table_f_) m = std::max(m, std::abs(f));
  return m;
}

Word read_window(const BiSequence& s, const Window& w) {
  Word word(w.size);
  for (std::size_t i = 0; i < w.size; ++i) {
    word[i] = s.at(w.start + static_cast<Position>(i));
  }
  return word;
}

BiSequence apply(const GeneralizedShift& shift, const BiSequence& s) {
  const int amount = shift.shift_for(read_window(s, shift.window_f()));
  const auto image = shift.rewrite_for(read_window(s, shift.window_g()));
  BiSequence out = s;
  for (std::size_t i = 0; i < image.size(); ++i) {
    out.set(shift.window_g().start + static_cast<Position>(i), image[i]);
  }
  out.shift(amount);
  return out;
}

GeneralizedShift standard_shift(std::vector<std::string> alphabet, int amount) {
  GeneralizedShift shift(std::move(alphabet), Window{0, 1}, Window{0, 1});
  for (std::size_t a = 0; a < shift.alphabet_size(); ++a) {
    const Letter l{static_cast<std::uint32_t>(a)};
    shift.set_shift(std::span(&l, 1), amount);
  }
  return shift;
}

GeneralizedShift two_letter_example(bool literal) {
  GeneralizedShift s({"0", "1"}, Window{-1, 2}, Window{-1, 2});
  auto w = [](std::uint32_t a, std::uint32_t b) { return Word{Letter{a}, Letter{b}}; };
  s.set_rewrite(w(0, 1), w(0, 1));
  s.set_rewrite(w(1, 1), w(0, 0));
  s.set_rewrite(w(0, 0), w(0, 1));
  s.set_rewrite(w(1, 0), w(1, 1));
  s.set_shift(w(0, 1), -1);
  s.set_shift(w(1, 1), literal ? 0 : -1);
  s.set_shift(w(0, 0), literal ? -1 : 0);
  return s;
}

CompiledMachine compile_tm(const TuringMachine& machine) {
  if (!machine.is_extended()) {
    throw Error(ErrorCode::kNotExtended,
                "compile the halting-extended machine so every state has a row");
  }
  std::vector<std::string> alphabet = machine.alphabet();
  alphabet.insert(alphabet.end(), machine.states().begin(), machine.states().end());
  const Window window{-1, 3};
  GeneralizedShift shift(std::move(alphabet), window, window);
  Conjugation conj(machine.num_symbols(), machine.num_states(), machine.halting());

  for (std::size_t q = 0; q < machine.num_states(); ++q) {
    const auto state = StateId(static_cast<std::uint32_t>(q));
    for (std::size_t left = 0; left < machine.num_symbols(); ++left) {
      for (std::size_t s = 0; s < machine.num_symbols(); ++s) {
        const auto scanned = SymbolId(static_cast<std::uint32_t>(s));
        const Letter tl = conj.symbol_letter(SymbolId(static_cast<std::uint32_t>(left)));
        const Word a{tl, conj.state_letter(state), conj.symbol_letter(scanned)};
        const Rule& r = *machine.rule(state, scanned);
        const Letter next = conj.state_letter(r.next);
        const Letter written = conj.symbol_letter(r.write);
        Word g;
        switch (r.move) {
          case Move::kLeft: g = {tl, written, next}; break;
          case Move::kRight: g = {next, tl, written}; break;
          case Move::kStay: g = {tl, next, written}; break;
        }
        shift.set_shift(a, shift_amount(r.move));
        shift.set_rewrite(a, g);
      }
    }
  }

  PhaseSpace space;
  for (std::size_t q = 0; q < machine.num_states(); ++q) {
    space.center.push_back(conj.state_letter(StateId(static_cast<std::uint32_t>(q))));
  }
  for (std::size_t s = 0; s < machine.num_symbols(); ++s) {
    space.background.push_back(conj.symbol_letter(SymbolId(static_cast<std::uint32_t>(s))));
  }
  shift.set_phase_space(std::move(space));
  return {std::move(shift), conj};
}

BiSequence encode_config(const Conjugation& conj, const Configuration& c) {
  BiSequence s;
  if (auto range = c.tape.support()) {
    std::vector<Letter> cells;
    // Cells at n >= 0 move one slot right to make room for the state.
    const Position lo = std::min<Position>(range->first, 0);
    const Position hi = std::max<Position>(range->second + 1, 0);
    cells.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (Position n = lo; n <= hi; ++n) {
      if (n < 0) cells.push_back(conj.symbol_letter(c.tape.at(n)));
      else if (n == 0) cells.push_back(conj.state_letter(c.state));
      else cells.push_back(conj.symbol_letter(c.tape.at(n - 1)));
    }
    s = BiSequence(lo, std::move(cells));
  } else {
    s.set(0, conj.state_letter(c.state));
  }
  return s;
}

Configuration decode_config(const Conjugation& conj, const BiSequence& s) {
  const Letter center = s.at(0);
  if (!conj.is_state_letter(center)) {
    throw Error(ErrorCode::kNotInImage, "position 0 does not hold a state letter");
  }
  Configuration c;
  c.state = StateId(static_cast<std::uint32_t>(index_of(center) - conj.num_symbols()));
  const auto cells = s.cells();
  std::vector<SymbolId> tape;
  tape.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Position n = s.first() + static_cast<Position>(i);
    if (n == 0) continue;
    if (index_of(cells[i]) >= conj.num_symbols()) {
      throw Error(ErrorCode::kNotInImage,
                  "position " + std::to_string(n) + " holds a state letter");
    }
    tape.push_back(SymbolId(static_cast<std::uint32_t>(index_of(cells[i]))));
  }
  // The support contains 0 (a state letter is never blank). Positions < 0
  // keep their index and positions >= 1 move left by one.
  c.tape = Tape(s.first(), std::move(tape));
  return c;
}

bool is_bijective(const GeneralizedShift& shift) {
  return image_blocks_disjoint(compile_blockmap(shift, true), shift.phase_space()).disjoint;
}

std::string render_sequence(const GeneralizedShift& shift, const BiSequence& s) {
  Position lo = -1;
  Position hi = 0;
  if (auto range = s.support()) {
    lo = std::min(lo, range->first);
    hi = std::max(hi, range->second);
  }
  std::string out = "(..";
  for (Position n = lo; n <= hi; ++n) {
    if (n == 0) out += " .";
    out += ' ';
    out += shift.alphabet()[index_of(s.at(n))];
  }
  out += " ..)";
  return out;
}

}  // namespace turingflow
