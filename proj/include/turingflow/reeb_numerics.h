#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace turingflow {

struct Vec2 {
  double x = 0;
  double y = 0;
};

// Time-dependent Hamiltonian on the closed unit disk. H vanishes for
// r > 1 - boundary_margin and for t outside [time_margin, 1 - time_margin].
struct HamiltonianFamily {
  std::string name;
  std::function<double(double t, Vec2 q)> value;
  std::function<Vec2(double t, Vec2 q)> gradient;  // (dH/dx, dH/dy)
  double boundary_margin = 0;
  double time_margin = 0;
  // Closed-form time-1 map of the Hamiltonian flow, when one is known.
  std::function<Vec2(Vec2 q)> exact_return;
};

// eta(t) g(r^2) with eta a normalized quartic bump on [delta, 1 - delta]
// (integral 1) and g(rho) = amplitude (1 - rho/rho0)^4, rho0 = (1 - margin)^2.
// The flow rotates each circle rigidly.
HamiltonianFamily radial_bump(double amplitude = -1.0, double margin = 0.1,
                              double delta = 0.1);

// Radial bump times (1 + beta (x^2 - y^2)); depends on the angle.
HamiltonianFamily angular_bump(double amplitude = -1.0, double beta = 0.5,
                               double margin = 0.1, double delta = 0.1);

HamiltonianFamily zero_family();

// K_t = 2 H_{2t} on [0, 1/2] and -2 H_{2 - 2t} on [1/2, 1]: runs H and then
// undoes it, so the time-1 map is the identity.
HamiltonianFamily concatenate_with_reverse(const HamiltonianFamily& h);

// "radial-bump", "angular-bump" or "zero", optionally suffixed "-reversed"
// for concatenate_with_reverse. Parameters by key: amplitude, beta, margin,
// delta. Error kParse for unknown names or keys, kNonPositiveParameter for
// margins or deltas out of range.
HamiltonianFamily fixture_by_name(const std::string& name,
                                  const std::map<std::string, double>& params = {});

// Solves i_X d(lambda) = dH with lambda = x dy - y dx, d(lambda) = 2 dx^dy:
// X = (dH/dy, -dH/dx) / 2. Error kOutOfDisk unless |q| < 1.
Vec2 hamiltonian_vector_field(const HamiltonianFamily& h, double t, Vec2 q);

// Coefficient of alpha ^ d(alpha) against d(lambda) ^ dz for
// alpha = (H + C) dz + lambda: H + C - (x H_x + y H_y) / 2.
double contact_density(const HamiltonianFamily& h, double C, double t, Vec2 q);

// Safety factor applied to the sampled threshold.
inline constexpr double kC0Safety = 1.05;

// kC0Safety * max(0, max over a grid^3 sample of (x H_x + y H_y)/2 - H), the
// disk sampled on a grid x grid lattice of [-1, 1]^2 and t on grid points of
// [0, 1]. grid >= 16 (Error kNonPositiveParameter).
double estimate_C0(const HamiltonianFamily& h, int grid = 64);

struct SuspensionProblem {
  HamiltonianFamily family;
  double C = 1;
  double tolerance = 1e-10;
  std::uint64_t max_steps = 1000000;
  int grid = 64;
};

// C = 2 C0 + 1 with C0 from estimate_C0 at the problem grid.
SuspensionProblem make_problem(HamiltonianFamily family, double tolerance = 1e-10,
                               int grid = 64);

// Integrates dq/dz = X_z(q) from z = 0 to 1 (adaptive Dormand-Prince, absolute
// and relative tolerance = problem.tolerance). Errors kOutOfDisk for a start
// outside the open disk, kLeftDisk if the path leaves it, kIntegrationFailure
// on step-size underflow or when max_steps is exceeded.
Vec2 integrate_suspension(const SuspensionProblem& problem, Vec2 start);

struct ReebSample {
  double rx, ry, rz;       // Reeb vector
  double denominator;      // H + C + lambda(X)
  double alpha_defect;     // |alpha(R) - 1|
  double kernel_defect;    // max-norm of i_R d(alpha) in the dx, dy, dz coframe
};

// R = (X, 1) / (H + C + lambda(X)). Error kDegenerateDenominator when the
// denominator is not positive, kOutOfDisk off the open disk.
ReebSample reeb_field(const SuspensionProblem& problem, Vec2 q, double z);

struct ReturnMapReport {
  std::string family;
  double C = 0;
  double C0 = 0;
  double tolerance = 0;
  std::uint64_t max_steps = 0;
  int grid = 0;
  std::uint64_t seed = 0;
  std::vector<Vec2> starts;
  std::vector<Vec2> returns;
  std::vector<Vec2> references;
  double max_deviation = 0;
  double min_contact_density = 0;
  double max_alpha_defect = 0;
  double max_kernel_defect = 0;
  double max_hamilton_residual = 0;  // |i_X d(lambda) - dH| on random points
  bool reference_exact = false;      // closed form rather than a tight solve
};

// Samples `samples` start points uniformly in the disk of radius 0.98 and
// compares the integrated return map with the exact time-1 map (or with an
// integration at 1e-3 * tolerance when the family has none). Reeb defects and
// residuals use `defect_samples` random points; contact density uses the
// grid^3 lattice.
ReturnMapReport return_map_report(const SuspensionProblem& problem, std::size_t samples,
                                  std::uint64_t seed, std::size_t defect_samples = 1000);

// key=value lines, doubles in %.17g, every tolerance echoed.
std::string format_report(const ReturnMapReport& report, bool with_points = false);

}  // namespace turingflow
