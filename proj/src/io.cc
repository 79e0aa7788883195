#include "turingflow/io.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "turingflow/error.h"

namespace turingflow {

namespace {

struct Line {
  std::size_t number;
  std::string key;
  std::vector<std::string> tokens;
};

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto body = split(raw);
    if (body.empty()) continue;
    const auto colon = raw.find(':');
    if (colon == std::string_view::npos) parse_error(number, "expected 'key: value'");
    Line line{number, std::string(raw.substr(0, colon)), split(raw.substr(colon + 1))};
    line.key.erase(0, line.key.find_first_not_of(" \t\r"));
    line.key.erase(line.key.find_last_not_of(" \t\r") + 1);
    out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

template <typename T>
T number_of(const std::string& token, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_error(line, "expected a number, got '" + token + "'");
  }
  return value;
}

// Splits "a b -> c d" into both sides.
std::pair<std::vector<std::string>, std::vector<std::string>> arrow(const Line& line) {
  auto it = std::find(line.tokens.begin(), line.tokens.end(), "->");
  if (it == line.tokens.end()) parse_error(line.number, "missing '->'");
  return {{line.tokens.begin(), it}, {it + 1, line.tokens.end()}};
}

const std::vector<std::string>& single_use(std::map<std::string, const Line*>& seen,
                                           const Line& line) {
  if (!seen.emplace(line.key, &line).second) {
    parse_error(line.number, "duplicate '" + line.key + "'");
  }
  return line.tokens;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

char move_char(Move m) {
  switch (m) {
    case Move::kLeft: return 'L';
    case Move::kRight: return 'R';
    case Move::kStay: return 'N';
  }
  return 'N';
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string window_text(const GeneralizedShift& shift, const Word& word, Position start) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Position n = start + static_cast<Position>(i);
    if (n == 0) out += '.';
    else if (i > 0) out += ' ';
    out += shift.alphabet()[index_of(word[i])];
  }
  return out;
}

}  // namespace

TuringMachine parse_machine(std::string_view text) {
  std::map<std::string, const Line*> seen;
  std::vector<const Line*> rule_lines;
  const auto lines = lines_of(text);
  for (const auto& line : lines) {
    if (line.key == "rule") {
      rule_lines.push_back(&line);
    } else if (line.key == "alphabet" || line.key == "states" || line.key == "initial" ||
               line.key == "halt") {
      single_use(seen, line);
    } else {
      parse_error(line.number, "unknown key '" + line.key + "'");
    }
  }
  for (const char* key : {"alphabet", "states", "initial", "halt"}) {
    if (!seen.count(key)) parse_error(lines.empty() ? 0 : lines.back().number, std::string("missing '") + key + "'");
  }
  for (const char* key : {"initial", "halt"}) {
    if (seen[key]->tokens.size() != 1) parse_error(seen[key]->number, "expected one state");
  }
  const auto& alphabet = seen["alphabet"]->tokens;
  const auto& states = seen["states"]->tokens;
  auto state_index = [&](const std::string& name, std::size_t line) {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) parse_error(line, "unknown state '" + name + "'");
    return StateId(static_cast<std::uint32_t>(it - states.begin()));
  };
  auto symbol_index = [&](const std::string& name, std::size_t line) {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) parse_error(line, "unknown symbol '" + name + "'");
    return SymbolId(static_cast<std::uint32_t>(it - alphabet.begin()));
  };

  std::vector<std::vector<std::optional<Rule>>> rules(
      states.size(), std::vector<std::optional<Rule>>(alphabet.size()));
  for (const Line* line : rule_lines) {
    const auto [lhs, rhs] = arrow(*line);
    if (lhs.size() != 2 || rhs.size() != 3) {
      parse_error(line->number, "expected 'q s -> q' s' L|R|N'");
    }
    const StateId q = state_index(lhs[0], line->number);
    const SymbolId s = symbol_index(lhs[1], line->number);
    Move move;
    if (rhs[2] == "L") move = Move::kLeft;
    else if (rhs[2] == "R") move = Move::kRight;
    else if (rhs[2] == "N") move = Move::kStay;
    else parse_error(line->number, "move must be L, R or N");
    auto& slot = rules[index_of(q)][index_of(s)];
    if (slot) parse_error(line->number, "second rule for " + lhs[0] + " " + lhs[1]);
    slot = Rule{state_index(rhs[0], line->number), symbol_index(rhs[1], line->number), move};
  }
  return TuringMachine(states, alphabet,
                       state_index(seen["initial"]->tokens[0], seen["initial"]->number),
                       state_index(seen["halt"]->tokens[0], seen["halt"]->number),
                       std::move(rules));
}

std::string format_machine(const TuringMachine& m) {
  std::string out = "alphabet: " + join(m.alphabet()) + "\nstates: " + join(m.states()) +
                    "\ninitial: " + m.state_name(m.initial()) +
                    "\nhalt: " + m.state_name(m.halting()) + "\n";
  for (std::size_t q = 0; q < m.num_states(); ++q) {
    for (std::size_t s = 0; s < m.num_symbols(); ++s) {
      const auto state = StateId(static_cast<std::uint32_t>(q));
      const auto symbol = SymbolId(static_cast<std::uint32_t>(s));
      const auto& r = m.rule(state, symbol);
      if (!r) continue;
      out += "rule: " + m.state_name(state) + " " + m.symbol_name(symbol) + " -> " +
             m.state_name(r->next) + " " + m.symbol_name(r->write) + " " +
             move_char(r->move) + "\n";
    }
  }
  return out;
}

GeneralizedShift parse_shift(std::string_view text) {
  std::map<std::string, const Line*> seen;
  std::vector<const Line*> f_lines;
  std::vector<const Line*> g_lines;
  const auto lines = lines_of(text);
  for (const auto& line : lines) {
    if (line.key == "F") f_lines.push_back(&line);
    else if (line.key == "G") g_lines.push_back(&line);
    else if (line.key == "alphabet" || line.key == "windowF" || line.key == "windowG" ||
             line.key == "center" || line.key == "background") single_use(seen, line);
    else parse_error(line.number, "unknown key '" + line.key + "'");
  }
  for (const char* key : {"alphabet", "windowF", "windowG"}) {
    if (!seen.count(key)) parse_error(lines.empty() ? 0 : lines.back().number, std::string("missing '") + key + "'");
  }
  auto window = [&](const char* key) {
    const Line& line = *seen[key];
    if (line.tokens.size() != 2) parse_error(line.number, "expected 'first last'");
    const auto first = number_of<Position>(line.tokens[0], line.number);
    const auto last = number_of<Position>(line.tokens[1], line.number);
    if (last < first || last - first > 16) parse_error(line.number, "bad window");
    return Window{first, static_cast<std::size_t>(last - first + 1)};
  };
  GeneralizedShift shift(seen["alphabet"]->tokens, window("windowF"), window("windowG"));
  auto word = [&](const std::vector<std::string>& names, std::size_t size, std::size_t line) {
    if (names.size() != size) parse_error(line, "word of length " + std::to_string(size) + " expected");
    Word w;
    for (const auto& name : names) {
      auto l = shift.find_letter(name);
      if (!l) parse_error(line, "unknown letter '" + name + "'");
      w.push_back(*l);
    }
    return w;
  };
  std::vector<bool> f_set(shift.table_size_f());
  for (const Line* line : f_lines) {
    const auto [lhs, rhs] = arrow(*line);
    const Word w = word(lhs, shift.window_f().size, line->number);
    if (rhs.size() != 1) parse_error(line->number, "expected one shift amount");
    if (f_set[shift.key(w)]) parse_error(line->number, "duplicate F entry");
    f_set[shift.key(w)] = true;
    shift.set_shift(w, number_of<int>(rhs[0], line->number));
  }
  std::vector<bool> g_set(shift.table_size_g());
  for (const Line* line : g_lines) {
    const auto [lhs, rhs] = arrow(*line);
    const Word w = word(lhs, shift.window_g().size, line->number);
    if (g_set[shift.key(w)]) parse_error(line->number, "duplicate G entry");
    g_set[shift.key(w)] = true;
    shift.set_rewrite(w, word(rhs, shift.window_g().size, line->number));
  }
  if (seen.count("center") != seen.count("background")) {
    parse_error((seen.count("center") ? seen["center"] : seen["background"])->number,
                "center and background go together");
  }
  if (seen.count("center")) {
    PhaseSpace space;
    space.center = word(seen["center"]->tokens, seen["center"]->tokens.size(), seen["center"]->number);
    space.background = word(seen["background"]->tokens, seen["background"]->tokens.size(),
                            seen["background"]->number);
    if (space.center.empty() || space.background.empty()) {
      parse_error(seen["center"]->number, "empty phase space");
    }
    shift.set_phase_space(std::move(space));
  }
  return shift;
}

std::string format_shift(const GeneralizedShift& shift) {
  auto words = [&](std::span<const Letter> w) {
    std::string out;
    for (Letter l : w) {
      if (!out.empty()) out += ' ';
      out += shift.alphabet()[index_of(l)];
    }
    return out;
  };
  std::string out = "alphabet: " + join(shift.alphabet()) + "\n";
  out += "windowF: " + std::to_string(shift.window_f().start) + " " +
         std::to_string(shift.window_f().last()) + "\n";
  out += "windowG: " + std::to_string(shift.window_g().start) + " " +
         std::to_string(shift.window_g().last()) + "\n";
  if (const auto& space = shift.phase_space()) {
    out += "center: " + words(space->center) + "\n";
    out += "background: " + words(space->background) + "\n";
  }
  for (std::size_t k = 0; k < shift.table_size_f(); ++k) {
    const Word w = shift.word_at(k, shift.window_f().size);
    if (const int f = shift.shift_for(w); f != 0) {
      out += "F: " + words(w) + " -> " + std::to_string(f) + "\n";
    }
  }
  for (std::size_t k = 0; k < shift.table_size_g(); ++k) {
    const Word w = shift.word_at(k, shift.window_g().size);
    const auto g = shift.rewrite_for(w);
    if (!std::equal(g.begin(), g.end(), w.begin())) {
      out += "G: " + words(w) + " -> " + words(g) + "\n";
    }
  }
  return out;
}

Configuration parse_config(const TuringMachine& m, std::string_view text) {
  const auto tokens = split(text);
  if (tokens.empty()) throw Error(ErrorCode::kParse, "empty configuration");
  const auto state = m.find_state(tokens[0]);
  if (!state) throw Error(ErrorCode::kUnknownState, "unknown state '" + tokens[0] + "'");
  const auto dot = std::find(tokens.begin() + 1, tokens.end(), ".");
  if (dot != tokens.end() && std::find(dot + 1, tokens.end(), ".") != tokens.end()) {
    throw Error(ErrorCode::kParse, "more than one '.' in a configuration");
  }
  const Position left = dot == tokens.end() ? 0 : static_cast<Position>(dot - tokens.begin() - 1);
  std::vector<SymbolId> cells;
  for (auto it = tokens.begin() + 1; it != tokens.end(); ++it) {
    if (it == dot) continue;
    const auto s = m.find_symbol(*it);
    if (!s) throw Error(ErrorCode::kUnknownSymbol, "unknown symbol '" + *it + "'");
    cells.push_back(*s);
  }
  return {*state, Tape(-left, std::move(cells))};
}

std::string format_config(const TuringMachine& m, const Configuration& c) {
  std::string out = m.state_name(c.state);
  Position lo = 0;
  Position hi = -1;
  if (auto range = c.tape.support()) {
    lo = std::min<Position>(range->first, 0);
    hi = range->second;
  }
  for (Position n = lo; n <= hi; ++n) {
    if (n == 0) out += " .";
    out += " " + m.symbol_name(c.tape.at(n));
  }
  if (hi < 0) out += " .";
  return out;
}

BiSequence parse_sequence(const GeneralizedShift& shift, std::string_view text) {
  const auto tokens = split(text);
  const auto dot = std::find(tokens.begin(), tokens.end(), ".");
  if (dot != tokens.end() && std::find(dot + 1, tokens.end(), ".") != tokens.end()) {
    throw Error(ErrorCode::kParse, "more than one '.' in a sequence");
  }
  const Position left = dot == tokens.end() ? 0 : static_cast<Position>(dot - tokens.begin());
  std::vector<Letter> cells;
  for (auto it = tokens.begin(); it != tokens.end(); ++it) {
    if (it == dot) continue;
    const auto l = shift.find_letter(*it);
    if (!l) throw Error(ErrorCode::kParse, "unknown letter '" + *it + "'");
    cells.push_back(*l);
  }
  return BiSequence(-left, std::move(cells));
}

std::string format_verification(const VerificationReport& r) {
  auto flag = [](bool b) { return b ? std::string("true") : std::string("false"); };
  auto pair = [](const DisjointnessReport& d) {
    return d.overlap ? std::to_string(d.overlap->first) + "," + std::to_string(d.overlap->second)
                     : std::string("NONE");
  };
  std::string out;
  out += "domains_partition=" + flag(r.domains_partition) + "\n";
  out += "unit_determinants=" + flag(r.unit_determinants) + "\n";
  out += "images_match_blocks=" + flag(r.images_match_blocks) + "\n";
  out += "piece_count=" + std::to_string(r.piece_count) + "\n";
  out += "cylinder_count=" + std::to_string(r.cylinder_count) + "\n";
  out += "components=" + std::to_string(r.components) + "\n";
  out += "components_unmerged=" + std::to_string(r.components_unmerged) + "\n";
  out += "bound=" + r.bound.get_str() + "\n";
  out += "within_bound=" + flag(r.within_bound) + "\n";
  out += "images_disjoint=" + flag(r.images.disjoint) + "\n";
  out += "images_overlap=" + pair(r.images) + "\n";
  out += "images_full_disjoint=" + flag(r.images_full.disjoint) + "\n";
  out += "images_full_overlap=" + pair(r.images_full) + "\n";
  out += "conjugacy_samples=" + std::to_string(r.conjugacy_samples) + "\n";
  out += "conjugacy_failures=" + std::to_string(r.conjugacy_failures) + "\n";
  out += "ok=" + flag(r.ok()) + "\n";
  return out;
}

ExperimentSpec parse_experiment(std::string_view text, const std::filesystem::path& base_dir) {
  std::map<std::string, const Line*> seen;
  const auto lines = lines_of(text);
  for (const auto& line : lines) {
    static const std::array<std::string_view, 6> keys{"machine", "input", "k", "target",
                                                      "mode", "budget"};
    if (std::find(keys.begin(), keys.end(), line.key) == keys.end()) {
      parse_error(line.number, "unknown key '" + line.key + "'");
    }
    single_use(seen, line);
  }
  for (const char* key : {"machine", "input", "target"}) {
    if (!seen.count(key)) parse_error(lines.empty() ? 0 : lines.back().number, std::string("missing '") + key + "'");
  }
  auto one = [&](const char* key) -> const std::string& {
    const Line& line = *seen[key];
    if (line.tokens.size() != 1) parse_error(line.number, std::string("expected one value for '") + key + "'");
    return line.tokens[0];
  };
  std::filesystem::path path = one("machine");
  if (path.is_relative()) path = base_dir / path;
  const TuringMachine machine = read_machine(path);

  const Line& input = *seen["input"];
  Configuration config;
  try {
    config = parse_config(machine, join(input.tokens));
  } catch (const Error& e) {
    parse_error(input.number, e.what());
  }
  std::size_t k = 0;
  if (seen.count("k")) k = number_of<std::size_t>(one("k"), seen["k"]->number);
  Mode mode = Mode::kDirect;
  if (seen.count("mode")) {
    const auto& m = one("mode");
    if (m == "direct") mode = Mode::kDirect;
    else if (m == "reader") mode = Mode::kReader;
    else parse_error(seen["mode"]->number, "mode must be direct or reader");
  }
  std::uint64_t budget = 10000;
  if (seen.count("budget")) budget = number_of<std::uint64_t>(one("budget"), seen["budget"]->number);
  std::vector<SymbolId> target;
  for (const auto& name : seen["target"]->tokens) {
    const auto s = machine.find_symbol(name);
    if (!s) {
      throw Error(ErrorCode::kSymbolNotInAlphabet,
                  "line " + std::to_string(seen["target"]->number) + ": target symbol '" +
                      name + "' is not in the alphabet");
    }
    target.push_back(*s);
  }
  return ExperimentSpec{machine, std::move(config), k, std::move(target), mode, budget};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

TuringMachine read_machine(const std::filesystem::path& path) {
  return parse_machine(read_file(path));
}

GeneralizedShift read_shift(const std::filesystem::path& path) {
  return parse_shift(read_file(path));
}

ExperimentSpec read_experiment(const std::filesystem::path& path) {
  return parse_experiment(read_file(path), path.parent_path());
}

std::uint64_t machine_hash(const TuringMachine& machine) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : format_machine(machine)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string optional_count(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : "NONE";
}

std::optional<std::uint64_t> native_steps(const RunResult& r) {
  if (const auto* h = std::get_if<Halted>(&r)) return h->steps;
  return std::nullopt;
}

}  // namespace

std::string format_verdict(const TuringMachine& machine, const Verdict& v) {
  return "machine=" + hex64(machine_hash(machine)) + " mode=" + std::string(mode_name(v.mode)) +
         " hit=" + optional_count(v.orbit_hit) + " native=" + optional_count(native_steps(v.native)) +
         " consistent=" + (v.consistent ? "true" : "false");
}

std::string format_verdict_pretty(const TuringMachine& machine, const Verdict& v) {
  std::string out;
  out += "machine     " + hex64(machine_hash(machine)) + "\n";
  out += "mode        " + std::string(mode_name(v.mode)) + "\n";
  out += "orbit       " + (v.orbit_hit ? "enters the halting region at iteration " + std::to_string(*v.orbit_hit)
                                       : std::string("stays outside the halting region")) + "\n";
  out += "native      " + (native_steps(v.native) ? "halts after " + std::to_string(*native_steps(v.native)) + " steps"
                                                  : std::string("still running at the budget")) + "\n";
  out += "window      " + std::string(v.native_accepts ? "matches" : "does not match") + "\n";
  out += "consistent  " + std::string(v.consistent ? "true" : "false") + "\n";
  return out;
}

std::string format_orbit_csv(const PiecewiseBlockMap& map, const OrbitResult& orbit) {
  std::string out = "# radix=" + std::to_string(map.radix()) + "\n";
  out += "iter,x_num,x_exp,y_num,y_exp,block_id,in_halt_region\n";
  for (const auto& s : orbit.trace) {
    out += std::to_string(s.iteration) + "," + s.point.x.numerator().get_str() + "," +
           std::to_string(s.point.x.exponent()) + "," + s.point.y.numerator().get_str() + "," +
           std::to_string(s.point.y.exponent()) + "," +
           (s.piece ? std::to_string(*s.piece) : std::string("-1")) + "," +
           (s.in_region ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<TraceRow> parse_orbit_csv(std::string_view text) {
  std::vector<TraceRow> rows;
  std::optional<unsigned> radix;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++number;
    if (line.rfind("# radix=", 0) == 0) {
      radix = number_of<unsigned>(line.substr(8), number);
      continue;
    }
    if (line.empty() || line[0] == '#' || line.rfind("iter,", 0) == 0) continue;
    if (!radix) parse_error(number, "missing radix line");
    std::vector<std::string> f;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) f.push_back(cell);
    if (f.size() != 7) parse_error(number, "expected 7 fields");
    auto coord = [&](const std::string& num, const std::string& exp) {
      mpz_class n;
      if (n.set_str(num, 10) != 0) parse_error(number, "bad numerator '" + num + "'");
      return RadixRational(std::move(n), number_of<std::size_t>(exp, number), *radix);
    };
    rows.push_back({number_of<std::uint64_t>(f[0], number),
                    {coord(f[1], f[2]), coord(f[3], f[4])},
                    number_of<long>(f[5], number),
                    number_of<int>(f[6], number) != 0});
  }
  return rows;
}

std::string format_blockmap(const PiecewiseBlockMap& map, const GeneralizedShift& shift) {
  const Window& cut = map.cut();
  std::string out = "# radix=" + std::to_string(map.radix()) +
                    " letters=" + std::to_string(map.alphabet_size()) +
                    " cut=" + std::to_string(cut.start) + ".." + std::to_string(cut.last()) +
                    " pieces=" + std::to_string(map.pieces().size()) +
                    " identity=" + std::to_string(map.identity_pieces().size()) + "\n";
  auto line = [&](const char* kind, std::size_t i, const BlockPiece& p) {
    out += std::string(kind) + " " + std::to_string(i) + " window=" +
           window_text(shift, p.window, cut.start) + " domain=" + describe(p.domain) +
           " image=" + describe(p.image) + " m=" + std::to_string(p.exponent) +
           " cx=" + p.cx.to_string() + " cy=" + p.cy.to_string() + "\n";
  };
  for (std::size_t i = 0; i < map.pieces().size(); ++i) line("piece", i, map.pieces()[i]);
  for (std::size_t i = 0; i < map.identity_pieces().size(); ++i) {
    line("identity", i, map.identity_pieces()[i]);
  }
  return out;
}

std::string render_svg(const PiecewiseBlockMap& map, const GeneralizedShift& shift,
                       const std::vector<CantorPoint>& orbit) {
  constexpr double kSide = 400;
  constexpr double kPad = 30;
  static constexpr std::array<const char*, 8> kPalette{
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7"};
  const double width = 3 * kPad + 2 * kSide;
  const double height = 2 * kPad + kSide + 20;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) +
                    "\" height=\"" + fixed(height) + "\" viewBox=\"0 0 " + fixed(width) + " " +
                    fixed(height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) +
         "\" fill=\"#ffffff\"/>\n";
  auto rect = [&](double ox, const CantorBlock& b, const char* fill, const std::string& label) {
    const double x0 = ox + kSide * b.x_lo().to_double();
    const double x1 = ox + kSide * b.x_hi().to_double();
    const double y0 = kPad + kSide * (1 - b.y_hi().to_double());
    const double y1 = kPad + kSide * (1 - b.y_lo().to_double());
    out += "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(y0) + "\" width=\"" + fixed(x1 - x0) +
           "\" height=\"" + fixed(y1 - y0) + "\" fill=\"" + fill +
           "\" fill-opacity=\"0.6\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
    if (x1 - x0 >= 24 && y1 - y0 >= 12) {
      out += "<text x=\"" + fixed((x0 + x1) / 2) + "\" y=\"" + fixed((y0 + y1) / 2 + 4) +
             "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">" + label +
             "</text>\n";
    }
  };
  for (int panel = 0; panel < 2; ++panel) {
    const double ox = kPad + panel * (kSide + kPad);
    out += "<rect x=\"" + fixed(ox) + "\" y=\"" + fixed(kPad) + "\" width=\"" + fixed(kSide) +
           "\" height=\"" + fixed(kSide) + "\" fill=\"none\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + fixed(ox + kSide / 2) + "\" y=\"" + fixed(kPad + kSide + 18) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" +
           (panel == 0 ? "domain blocks" : "image blocks") + "</text>\n";
    for (std::size_t i = 0; i < map.pieces().size(); ++i) {
      const auto& p = map.pieces()[i];
      rect(ox, panel == 0 ? p.domain : p.image, kPalette[i % kPalette.size()],
           window_text(shift, p.window, map.cut().start));
    }
    for (const auto& p : map.identity_pieces()) {
      rect(ox, panel == 0 ? p.domain : p.image, "#cccccc",
           window_text(shift, p.window, map.cut().start));
    }
  }
  for (const auto& p : orbit) {
    out += "<circle cx=\"" + fixed(kPad + kSide * p.x.to_double()) + "\" cy=\"" +
           fixed(kPad + kSide * (1 - p.y.to_double())) + "\" r=\"2\" fill=\"#000000\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace turingflow
