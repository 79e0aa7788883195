#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turingflow/cantor_map.h"
#include "turingflow/gshift.h"
#include "turingflow/orbit_harness.h"
#include "turingflow/tm_core.h"

namespace turingflow {

// Line-oriented formats. Blank lines and text after '#' are ignored; every
// parse error is Error(kParse) naming the line.

// alphabet: b 0 1        first symbol is the blank
// states: q0 q1 qh
// initial: q0
// halt: qh
// rule: q0 0 -> q1 1 L   L shifts the tape left (+1), R right (-1), N stays
TuringMachine parse_machine(std::string_view text);
std::string format_machine(const TuringMachine& machine);

// alphabet: 0 1
// windowF: -1 0          first and last position
// windowG: -1 0
// F: 0 1 -> -1           entries absent from the file are 0
// G: 0 1 -> 0 1          entries absent from the file are the identity
// center: ...            optional phase space
// background: ...
GeneralizedShift parse_shift(std::string_view text);
std::string format_shift(const GeneralizedShift& shift);

// "q0 a b . c d": state, then the cells left of position 0, a dot, and the
// cells from position 0 on. Without a dot the cells start at position 0.
Configuration parse_config(const TuringMachine& machine, std::string_view text);
std::string format_config(const TuringMachine& machine, const Configuration& c);

// "a b . c d" over the shift alphabet, same layout as a configuration.
BiSequence parse_sequence(const GeneralizedShift& shift, std::string_view text);

// key=value lines for every field of the report.
std::string format_verification(const VerificationReport& r);

// machine: path          relative to the experiment file
// input: q0 . 1 1
// k: 1
// target: b 1 1
// mode: direct | reader
// budget: 10000
ExperimentSpec parse_experiment(std::string_view text,
                                const std::filesystem::path& base_dir);

std::string read_file(const std::filesystem::path& path);  // Error kIo
void write_file(const std::filesystem::path& path, std::string_view data);

TuringMachine read_machine(const std::filesystem::path& path);
GeneralizedShift read_shift(const std::filesystem::path& path);
ExperimentSpec read_experiment(const std::filesystem::path& path);

// FNV-1a 64 of the canonical machine text.
std::uint64_t machine_hash(const TuringMachine& machine);

// machine=<16 hex digits> mode=direct hit=N|NONE native=N|NONE consistent=true
std::string format_verdict(const TuringMachine& machine, const Verdict& v);
std::string format_verdict_pretty(const TuringMachine& machine, const Verdict& v);

// "# radix=b" line, then iter,x_num,x_exp,y_num,y_exp,block_id,in_halt_region.
// block_id is the piece index, or -1 where the default identity acts.
std::string format_orbit_csv(const PiecewiseBlockMap& map, const OrbitResult& orbit);

struct TraceRow {
  std::uint64_t iteration;
  CantorPoint point;
  long block_id;
  bool in_region;
};
std::vector<TraceRow> parse_orbit_csv(std::string_view text);

// One line per piece with exact coefficients, identity cylinders last.
std::string format_blockmap(const PiecewiseBlockMap& map, const GeneralizedShift& shift);

// Two unit squares side by side: domain blocks left, image blocks right,
// pieces sharing a colour. Optional orbit points on the left square.
std::string render_svg(const PiecewiseBlockMap& map, const GeneralizedShift& shift,
                       const std::vector<CantorPoint>& orbit = {});

}  // namespace turingflow
