#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "turingflow/cantor_map.h"
#include "turingflow/gshift.h"
#include "turingflow/tm_core.h"

namespace turingflow {

// kDirect compiles the machine itself and reads the output window off the
// orbit at the hit. kReader compiles the reader machine, so that reaching the
// halting region alone certifies the window.
enum class Mode { kDirect, kReader };

std::string_view mode_name(Mode m);

struct ExperimentSpec {
  TuringMachine machine;
  Configuration input;
  std::size_t k = 0;
  std::vector<SymbolId> target;  // 2k+1 symbols for positions -k..k
  Mode mode = Mode::kDirect;
  std::uint64_t budget = 1;
};

struct Experiment {
  TuringMachine machine;  // extended; the reader machine in kReader mode
  CompiledMachine compiled;
  PiecewiseBlockMap map;
  CantorPoint start;
  std::vector<CantorBlock> region;
  std::uint64_t orbit_budget;  // budget plus the reader latency in kReader mode
  std::vector<std::string> warnings;
};

// Error kInvalidMachine for a zero budget or a target of the wrong length,
// kSymbolNotInAlphabet for foreign target symbols; compile errors propagate.
Experiment build_experiment(const ExperimentSpec& spec);

struct OrbitStep {
  std::uint64_t iteration;
  CantorPoint point;
  std::optional<std::size_t> piece;  // index into map.pieces()
  bool in_region;
};

struct OrbitResult {
  std::optional<std::uint64_t> hit;  // first iteration inside the region
  CantorPoint last;                  // point at the hit or after the budget
  std::vector<OrbitStep> trace;      // iterations 0..hit or 0..budget
};

// Checks iterations 0, 1, ..., budget. The trace is kept only on request.
OrbitResult run_orbit(const PiecewiseBlockMap& map, const CantorPoint& start,
                      const std::vector<CantorBlock>& region, std::uint64_t budget,
                      bool keep_trace = false);

struct Verdict {
  Mode mode;
  std::optional<std::uint64_t> orbit_hit;
  // kDirect: window decoded from the orbit at the hit matches the target.
  // kReader: same as orbit_hit.has_value().
  bool orbit_accepts = false;
  RunResult native;
  bool native_accepts = false;  // halted within budget with the target window
  std::optional<std::uint64_t> expected_hit;  // native steps plus the mode offset
  bool consistent = false;
};

// Native run and orbit under the same budget; consistent when both sides
// accept or both reject, and an accepting orbit hits exactly at expected_hit.
Verdict verify_equivalence(const ExperimentSpec& spec);
Verdict verify_equivalence(const ExperimentSpec& spec, const Experiment& experiment,
                           OrbitResult* orbit_out = nullptr, bool keep_trace = false);

struct ViscousBudget {
  double M;
  double nu;
  double tau_limit;              // M / nu, approached but never reached
  std::uint64_t complete_steps;  // largest n with n < M / nu

  // (M / nu)(1 - e^{-nu t})
  double tau(double t) const;
};

// Error kNonPositiveParameter unless M and nu are positive and finite.
ViscousBudget viscous_budget(double M, double nu);

}  // namespace turingflow
