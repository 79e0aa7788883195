#include "turingflow/reeb_numerics.h"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "turingflow/error.h"

namespace turingflow {

namespace {

void require_disk(Vec2 q) {
  if (!(q.x * q.x + q.y * q.y < 1)) {
    throw Error(ErrorCode::kOutOfDisk, "point outside the open unit disk");
  }
}

void require_margins(double margin, double delta) {
  if (!(margin > 0 && margin < 1)) {
    throw Error(ErrorCode::kNonPositiveParameter, "boundary margin must lie in (0, 1)");
  }
  if (!(delta > 0 && delta < 0.5)) {
    throw Error(ErrorCode::kNonPositiveParameter, "time margin must lie in (0, 1/2)");
  }
}

// (s(1-s))^4 on [delta, 1-delta] rescaled to unit integral; the Beta(5,5)
// integral is 1/630.
double time_profile(double t, double delta) {
  if (t <= delta || t >= 1 - delta) return 0;
  const double width = 1 - 2 * delta;
  const double s = (t - delta) / width;
  const double b = s * (1 - s);
  return 630.0 / width * b * b * b * b;
}

Vec2 field(const HamiltonianFamily& h, double t, Vec2 q) {
  const Vec2 g = h.gradient(t, q);
  return {g.y / 2, -g.x / 2};
}

Vec2 rotate(Vec2 q, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * q.x - s * q.y, s * q.x + c * q.y};
}

// Lattice of the closed disk used for C0 and density checks.
template <typename Visit>
void for_each_grid_point(int grid, Visit&& visit) {
  for (int k = 0; k < grid; ++k) {
    const double t = static_cast<double>(k) / (grid - 1);
    for (int i = 0; i < grid; ++i) {
      const double x = -1 + 2.0 * i / (grid - 1);
      for (int j = 0; j < grid; ++j) {
        const double y = -1 + 2.0 * j / (grid - 1);
        if (x * x + y * y >= 1) continue;
        visit(t, Vec2{x, y});
      }
    }
  }
}

}  // namespace

HamiltonianFamily radial_bump(double amplitude, double margin, double delta) {
  require_margins(margin, delta);
  const double rho0 = (1 - margin) * (1 - margin);
  HamiltonianFamily h;
  h.name = "radial-bump";
  h.boundary_margin = margin;
  h.time_margin = delta;
  h.value = [=](double t, Vec2 q) {
    const double u = (q.x * q.x + q.y * q.y) / rho0;
    if (u >= 1) return 0.0;
    const double w = (1 - u) * (1 - u);
    return time_profile(t, delta) * amplitude * w * w;
  };
  h.gradient = [=](double t, Vec2 q) {
    const double u = (q.x * q.x + q.y * q.y) / rho0;
    if (u >= 1) return Vec2{};
    // d/dx of (1-u)^4 is -8x(1-u)^3/rho0.
    const double c = -8 * time_profile(t, delta) * amplitude * (1 - u) * (1 - u) * (1 - u) / rho0;
    return Vec2{c * q.x, c * q.y};
  };
  h.exact_return = [=](Vec2 q) {
    const double u = (q.x * q.x + q.y * q.y) / rho0;
    if (u >= 1) return q;
    // Angular speed -eta(t) g'(r^2) with g'(rho) = -4A(1-u)^3/rho0.
    return rotate(q, 4 * amplitude * (1 - u) * (1 - u) * (1 - u) / rho0);
  };
  return h;
}

HamiltonianFamily angular_bump(double amplitude, double beta, double margin, double delta) {
  require_margins(margin, delta);
  const double rho0 = (1 - margin) * (1 - margin);
  HamiltonianFamily h;
  h.name = "angular-bump";
  h.boundary_margin = margin;
  h.time_margin = delta;
  h.value = [=](double t, Vec2 q) {
    const double u = (q.x * q.x + q.y * q.y) / rho0;
    if (u >= 1) return 0.0;
    const double w = (1 - u) * (1 - u);
    return time_profile(t, delta) * amplitude * w * w * (1 + beta * (q.x * q.x - q.y * q.y));
  };
  h.gradient = [=](double t, Vec2 q) {
    const double u = (q.x * q.x + q.y * q.y) / rho0;
    if (u >= 1) return Vec2{};
    const double eta = time_profile(t, delta);
    const double w3 = (1 - u) * (1 - u) * (1 - u);
    const double g = amplitude * w3 * (1 - u);
    const double dg = -8 * amplitude * w3 / rho0;  // d g / dx = dg * x
    const double m = 1 + beta * (q.x * q.x - q.y * q.y);
    return Vec2{eta * (dg * q.x * m + g * 2 * beta * q.x),
                eta * (dg * q.y * m - g * 2 * beta * q.y)};
  };
  return h;
}

HamiltonianFamily zero_family() {
  HamiltonianFamily h;
  h.name = "zero";
  h.boundary_margin = 0.5;
  h.time_margin = 0.25;
  h.value = [](double, Vec2) { return 0.0; };
  h.gradient = [](double, Vec2) { return Vec2{}; };
  h.exact_return = [](Vec2 q) { return q; };
  return h;
}

HamiltonianFamily concatenate_with_reverse(const HamiltonianFamily& h) {
  HamiltonianFamily k;
  k.name = h.name + "-reversed";
  k.boundary_margin = h.boundary_margin;
  k.time_margin = h.time_margin / 2;
  auto value = h.value;
  auto gradient = h.gradient;
  k.value = [value](double t, Vec2 q) {
    return t <= 0.5 ? 2 * value(2 * t, q) : -2 * value(2 - 2 * t, q);
  };
  k.gradient = [gradient](double t, Vec2 q) {
    const Vec2 g = t <= 0.5 ? gradient(2 * t, q) : gradient(2 - 2 * t, q);
    const double s = t <= 0.5 ? 2 : -2;
    return Vec2{s * g.x, s * g.y};
  };
  k.exact_return = [](Vec2 q) { return q; };
  return k;
}

HamiltonianFamily fixture_by_name(const std::string& name,
                                  const std::map<std::string, double>& params) {
  std::string base = name;
  const std::string suffix = "-reversed";
  const bool reversed = base.size() > suffix.size() &&
                        base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0;
  if (reversed) base.resize(base.size() - suffix.size());

  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  std::vector<std::string> allowed;
  HamiltonianFamily h;
  if (base == "radial-bump") {
    allowed = {"amplitude", "margin", "delta"};
    h = radial_bump(get("amplitude", -1.0), get("margin", 0.1), get("delta", 0.1));
  } else if (base == "angular-bump") {
    allowed = {"amplitude", "beta", "margin", "delta"};
    h = angular_bump(get("amplitude", -1.0), get("beta", 0.5), get("margin", 0.1),
                     get("delta", 0.1));
  } else if (base == "zero") {
    h = zero_family();
  } else {
    throw Error(ErrorCode::kParse, "unknown Hamiltonian family '" + name + "'");
  }
  for (const auto& [key, v] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kParse, "family '" + base + "' has no parameter '" + key + "'");
    }
  }
  return reversed ? concatenate_with_reverse(h) : h;
}

Vec2 hamiltonian_vector_field(const HamiltonianFamily& h, double t, Vec2 q) {
  require_disk(q);
  return field(h, t, q);
}

double contact_density(const HamiltonianFamily& h, double C, double t, Vec2 q) {
  const Vec2 g = h.gradient(t, q);
  return h.value(t, q) + C - (q.x * g.x + q.y * g.y) / 2;
}

double estimate_C0(const HamiltonianFamily& h, int grid) {
  if (grid < 16) {
    throw Error(ErrorCode::kNonPositiveParameter, "C0 grid needs at least 16 points per axis");
  }
  double worst = 0;
  for_each_grid_point(grid, [&](double t, Vec2 q) {
    worst = std::max(worst, -contact_density(h, 0, t, q));
  });
  return kC0Safety * worst;
}

SuspensionProblem make_problem(HamiltonianFamily family, double tolerance, int grid) {
  const double c0 = estimate_C0(family, grid);
  return {std::move(family), 2 * c0 + 1, tolerance, 1000000, grid};
}

Vec2 integrate_suspension(const SuspensionProblem& problem, Vec2 start) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 2>;
  require_disk(start);
  if (!(problem.tolerance > 0)) {
    throw Error(ErrorCode::kNonPositiveParameter, "integrator tolerance must be positive");
  }
  const auto& h = problem.family;
  auto system = [&h](const State& s, State& ds, double z) {
    const Vec2 v = field(h, z, Vec2{s[0], s[1]});
    ds[0] = v.x;
    ds[1] = v.y;
  };
  auto stepper = ode::make_controlled(problem.tolerance, problem.tolerance,
                                      ode::runge_kutta_dopri5<State>());
  State s{start.x, start.y};
  double z = 0;
  double dz = 1e-3;
  std::uint64_t steps = 0;
  while (z < 1) {
    if (++steps > problem.max_steps) {
      throw Error(ErrorCode::kIntegrationFailure, "step limit exceeded");
    }
    dz = std::min(dz, 1 - z);
    if (dz < 1e-15) {
      throw Error(ErrorCode::kIntegrationFailure, "step size underflow");
    }
    const bool last = dz == 1 - z;
    if (stepper.try_step(system, s, z, dz) == ode::success) {
      if (last) z = 1;
      if (!(s[0] * s[0] + s[1] * s[1] < 1)) {
        throw Error(ErrorCode::kLeftDisk, "trajectory left the disk");
      }
    }
  }
  return {s[0], s[1]};
}

ReebSample reeb_field(const SuspensionProblem& problem, Vec2 q, double z) {
  require_disk(q);
  const auto& h = problem.family;
  const Vec2 g = h.gradient(z, q);
  const Vec2 x = {g.y / 2, -g.x / 2};
  const double hv = h.value(z, q);
  const double lambda_x = q.x * x.y - q.y * x.x;
  const double den = hv + problem.C + lambda_x;
  if (!(den > 0)) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "H + C + lambda(X) is not positive; C is too small");
  }
  ReebSample r;
  r.rx = x.x / den;
  r.ry = x.y / den;
  r.rz = 1 / den;
  r.denominator = den;
  // alpha = (H + C) dz + x dy - y dx
  const double alpha = (hv + problem.C) * r.rz + q.x * r.ry - q.y * r.rx;
  r.alpha_defect = std::abs(alpha - 1);
  // d(alpha) = dH ^ dz + 2 dx ^ dy, contracted with R.
  const double kx = -r.rz * g.x - 2 * r.ry;
  const double ky = -r.rz * g.y + 2 * r.rx;
  const double kz = g.x * r.rx + g.y * r.ry;
  r.kernel_defect = std::max({std::abs(kx), std::abs(ky), std::abs(kz)});
  return r;
}

ReturnMapReport return_map_report(const SuspensionProblem& problem, std::size_t samples,
                                  std::uint64_t seed, std::size_t defect_samples) {
  ReturnMapReport r;
  r.family = problem.family.name;
  r.C = problem.C;
  r.C0 = estimate_C0(problem.family, problem.grid);
  r.tolerance = problem.tolerance;
  r.max_steps = problem.max_steps;
  r.grid = problem.grid;
  r.seed = seed;
  r.reference_exact = static_cast<bool>(problem.family.exact_return);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  auto disk_point = [&](double radius) {
    const double rad = radius * std::sqrt(unit(rng));
    const double phi = 2 * std::numbers::pi * unit(rng);
    return Vec2{rad * std::cos(phi), rad * std::sin(phi)};
  };

  SuspensionProblem tight = problem;
  tight.tolerance = std::max(problem.tolerance * 1e-3, 1e-14);
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec2 start = disk_point(0.98);
    const Vec2 end = integrate_suspension(problem, start);
    const Vec2 ref = r.reference_exact ? problem.family.exact_return(start)
                                       : integrate_suspension(tight, start);
    r.starts.push_back(start);
    r.returns.push_back(end);
    r.references.push_back(ref);
    r.max_deviation = std::max(r.max_deviation, std::hypot(end.x - ref.x, end.y - ref.y));
  }

  r.min_contact_density = std::numeric_limits<double>::infinity();
  for_each_grid_point(problem.grid, [&](double t, Vec2 q) {
    r.min_contact_density =
        std::min(r.min_contact_density, contact_density(problem.family, problem.C, t, q));
  });

  for (std::size_t i = 0; i < defect_samples; ++i) {
    const Vec2 q = disk_point(0.99);
    const double z = unit(rng);
    const ReebSample s = reeb_field(problem, q, z);
    r.max_alpha_defect = std::max(r.max_alpha_defect, s.alpha_defect);
    r.max_kernel_defect = std::max(r.max_kernel_defect, s.kernel_defect);
    const Vec2 x = hamiltonian_vector_field(problem.family, z, q);
    const Vec2 g = problem.family.gradient(z, q);
    r.max_hamilton_residual = std::max(
        {r.max_hamilton_residual, std::abs(-2 * x.y - g.x), std::abs(2 * x.x - g.y)});
  }
  return r;
}

std::string format_report(const ReturnMapReport& r, bool with_points) {
  std::string out;
  char buf[160];
  auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s=%.17g\n", key, v);
    out += buf;
  };
  out += "family=" + r.family + "\n";
  num("C", r.C);
  num("C0", r.C0);
  num("tolerance", r.tolerance);
  out += "max_steps=" + std::to_string(r.max_steps) + "\n";
  out += "grid=" + std::to_string(r.grid) + "\n";
  out += "seed=" + std::to_string(r.seed) + "\n";
  out += "samples=" + std::to_string(r.starts.size()) + "\n";
  out += std::string("reference=") + (r.reference_exact ? "exact" : "integrated") + "\n";
  num("max_deviation", r.max_deviation);
  num("min_contact_density", r.min_contact_density);
  num("max_alpha_defect", r.max_alpha_defect);
  num("max_kernel_defect", r.max_kernel_defect);
  num("max_hamilton_residual", r.max_hamilton_residual);
  if (with_points) {
    for (std::size_t i = 0; i < r.starts.size(); ++i) {
      std::snprintf(buf, sizeof buf, "point=%zu %.17g %.17g %.17g %.17g %.17g %.17g\n", i,
                    r.starts[i].x, r.starts[i].y, r.returns[i].x, r.returns[i].y,
                    r.references[i].x, r.references[i].y);
      out += buf;
    }
  }
  return out;
}

}  // namespace turingflow
