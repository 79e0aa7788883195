#include "turingflow/orbit_harness.h"

#include <cmath>
#include <limits>

#include "turingflow/error.h"

namespace turingflow {

std::string_view mode_name(Mode m) { return m == Mode::kDirect ? "direct" : "reader"; }

Experiment build_experiment(const ExperimentSpec& spec) {
  if (spec.budget == 0) {
    throw Error(ErrorCode::kInvalidMachine, "budget must be at least 1");
  }
  if (spec.target.size() != 2 * spec.k + 1) {
    throw Error(ErrorCode::kSymbolNotInAlphabet,
                "target must have 2k+1 = " + std::to_string(2 * spec.k + 1) + " symbols");
  }
  for (SymbolId s : spec.target) {
    if (index_of(s) >= spec.machine.num_symbols()) {
      throw Error(ErrorCode::kSymbolNotInAlphabet, "target symbol outside the alphabet");
    }
  }

  std::vector<std::string> warnings;
  TuringMachine machine = spec.mode == Mode::kReader
                              ? extend_halting(make_reader(spec.machine, spec.k, spec.target))
                              : extend_halting(spec.machine);
  if (!check_reversible(machine).reversible) {
    warnings.push_back(spec.mode == Mode::kReader
                           ? "reader machine is not reversible; the block map is not injective"
                           : "machine is not reversible; the block map is not injective");
  }
  CompiledMachine compiled = compile_tm(machine);
  PiecewiseBlockMap map = compile_blockmap(compiled.shift);
  const std::size_t n = compiled.shift.alphabet_size();
  CantorPoint start = encode_point(encode_config(compiled.conjugation, spec.input), n);
  auto region = halt_region(compiled.conjugation);
  const std::uint64_t budget =
      spec.budget + (spec.mode == Mode::kReader ? reader_latency(spec.k) : 0);
  return {std::move(machine), std::move(compiled), std::move(map), std::move(start),
          std::move(region), budget, std::move(warnings)};
}

OrbitResult run_orbit(const PiecewiseBlockMap& map, const CantorPoint& start,
                      const std::vector<CantorBlock>& region, std::uint64_t budget,
                      bool keep_trace) {
  OrbitResult result{std::nullopt, start, {}};
  for (std::uint64_t i = 0;; ++i) {
    const auto piece = map.locate(result.last);
    const bool inside = in_region(region, result.last);
    if (keep_trace) result.trace.push_back({i, result.last, piece, inside});
    if (inside) {
      result.hit = i;
      return result;
    }
    if (i == budget) return result;
    if (piece) result.last = apply_piece(map.pieces()[*piece], result.last);
  }
}

Verdict verify_equivalence(const ExperimentSpec& spec) {
  return verify_equivalence(spec, build_experiment(spec));
}

Verdict verify_equivalence(const ExperimentSpec& spec, const Experiment& experiment,
                           OrbitResult* orbit_out, bool keep_trace) {
  Verdict v{spec.mode, std::nullopt, false, run(spec.machine, spec.input, spec.budget),
            false, std::nullopt, false};
  if (const auto* h = std::get_if<Halted>(&v.native)) {
    v.native_accepts = output_window(h->final_config, spec.k) == spec.target;
    v.expected_hit = h->steps + (spec.mode == Mode::kReader ? reader_latency(spec.k) : 0);
  }

  OrbitResult orbit = run_orbit(experiment.map, experiment.start, experiment.region,
                                experiment.orbit_budget, keep_trace);
  v.orbit_hit = orbit.hit;
  if (orbit.hit) {
    if (spec.mode == Mode::kDirect) {
      const auto seq = decode_point(orbit.last, experiment.compiled.shift.alphabet_size());
      const auto config = decode_config(experiment.compiled.conjugation, seq);
      v.orbit_accepts = output_window(config, spec.k) == spec.target;
    } else {
      v.orbit_accepts = true;
    }
  }

  v.consistent = v.orbit_accepts == v.native_accepts;
  if (spec.mode == Mode::kDirect) {
    // The orbit must reach the region exactly when the machine halts.
    v.consistent = v.consistent && v.orbit_hit == (std::holds_alternative<Halted>(v.native)
                                                       ? v.expected_hit
                                                       : std::nullopt);
  } else if (v.orbit_accepts) {
    v.consistent = v.consistent && v.orbit_hit == v.expected_hit;
  }
  if (orbit_out) *orbit_out = std::move(orbit);
  return v;
}

double ViscousBudget::tau(double t) const { return -(M / nu) * std::expm1(-nu * t); }

ViscousBudget viscous_budget(double M, double nu) {
  if (!(M > 0) || !(nu > 0) || !std::isfinite(M) || !std::isfinite(nu)) {
    throw Error(ErrorCode::kNonPositiveParameter, "M and nu must be positive and finite");
  }
  const double limit = M / nu;
  std::uint64_t steps = std::numeric_limits<std::uint64_t>::max();
  if (limit <= 0) {
    steps = 0;
  } else if (limit < 1.8e19) {
    steps = static_cast<std::uint64_t>(std::ceil(limit)) - 1;
  }
  return {M, nu, limit, steps};
}

}  // namespace turingflow
