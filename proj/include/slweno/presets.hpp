#pragma once

// Initial data, bounds and exact solutions for the named presets, and the
// assembly of a ready-to-run simulation from a RunConfig.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "slweno/config.hpp"
#include "slweno/phase_grid.hpp"
#include "slweno/sl_advect.hpp"
#include "slweno/vlasov_driver.hpp"

namespace slweno {

using PhaseFunction = std::function<double(double, double)>;

struct SpeciesInit {
  std::string name;
  double coupling = 1.0;
  double density_weight = 1.0;
  double mass = 1.0;
  PhaseFunction f0;
  // Limiter band. The lower end is 0 (positivity); the upper end is the
  // supremum of f0 over the domain, not just over the grid points.
  double lo = 0.0;
  double hi = 1.0;
};

namespace detail {

/// Supremum of a smooth 1D function on [lo, hi]: dense sampling followed by
/// golden-section refinement around the best sample.
inline double sup_1d(const std::function<double(double)>& fn, double lo, double hi) {
  constexpr int samples = 20001;
  const double h = (hi - lo) / (samples - 1);
  int best = 0;
  double best_val = fn(lo);
  for (int s = 1; s < samples; ++s) {
    const double y = fn(lo + s * h);
    if (y > best_val) {
      best_val = y;
      best = s;
    }
  }
  double a = std::max(lo, lo + (best - 1) * h), b = std::min(hi, lo + (best + 1) * h);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (fn(c) >= fn(d)) b = d;
    else a = c;
  }
  return std::max(best_val, fn(0.5 * (a + b)));
}

inline double maxwellian(double v, double vth = 1.0, double u = 0.0) {
  const double z = (v - u) / vth;
  return std::exp(-0.5 * z * z) / (vth * std::sqrt(2.0 * std::numbers::pi));
}

// Slotted disk, cone and hump on [-1.57, 1.57]^2, mapped onto [-pi, pi]^2.
inline double slotted_triple(double x, double v) {
  constexpr double pi = std::numbers::pi;
  const double s = pi / 1.57;
  x /= s;
  v /= s;
  constexpr double r = 0.5;
  {
    const double cx = 0.0, cy = 0.75, w = 0.15;
    const double d = std::hypot(x - cx, v - cy);
    if (d < r) return (std::abs(x - cx) < 0.5 * w && v < cy + 0.25) ? 0.0 : 1.0;
  }
  {
    const double d = std::hypot(x, v + 0.75);
    if (d < r) return 1.0 - d / r;
  }
  {
    const double d = std::hypot(x + 0.75, v);
    if (d < r) return 0.25 * (1.0 + std::cos(pi * d / r));
  }
  return 0.0;
}

inline double cos6_hump(double x, double v) {
  const double r = std::hypot(x, v);
  if (r >= 0.5 * std::numbers::pi) return 0.0;
  const double c = std::cos(r);
  return c * c * c * c * c * c;
}

inline double ion_acoustic_perturbation(double x) {
  return 0.01 * (std::sin(x) + std::sin(0.5 * x) + std::sin(0.1 * x) + std::sin(0.15 * x) +
                 std::sin(0.2 * x) + std::cos(0.25 * x) + std::cos(0.3 * x) +
                 std::cos(0.35 * x));
}

}  // namespace detail

/// Species list with initial data for a config. Two-species runs list the
/// ions first and the electrons second.
inline std::vector<SpeciesInit> species_for(const RunConfig& c) {
  constexpr double pi = std::numbers::pi;
  using detail::maxwellian;
  using detail::sup_1d;
  const double x0 = c.x_lo, x1 = c.x_lo + c.length;
  auto separable = [&](std::function<double(double)> X, std::function<double(double)> V) {
    SpeciesInit s;
    s.f0 = [X, V](double x, double v) { return X(x) * V(v); };
    s.hi = sup_1d(X, x0, x1) * sup_1d(V, -c.vc, c.vc);
    return s;
  };
  const std::string& p = c.preset;
  std::vector<SpeciesInit> out;
  if (p == "advect_sin4") {
    SpeciesInit s;
    s.f0 = [](double x, double v) { return std::pow(std::sin(x + v), 4); };
    out.push_back(s);
  } else if (p == "rigid_cos6") {
    SpeciesInit s;
    s.f0 = detail::cos6_hump;
    out.push_back(s);
  } else if (p == "rigid_slotted") {
    SpeciesInit s;
    s.f0 = detail::slotted_triple;
    out.push_back(s);
  } else if (p == "vp_smooth") {
    const double k = c.param("k");
    out.push_back(separable([k](double x) { return std::pow(std::cos(k * x), 4); },
                            [](double v) { return maxwellian(v); }));
  } else if (p == "landau_weak" || p == "landau_strong") {
    const double k = c.param("k"), a = c.param("alpha");
    out.push_back(separable([k, a](double x) { return 1.0 + a * std::cos(k * x); },
                            [](double v) { return maxwellian(v); }));
  } else if (p == "twostream_sym") {
    const double k = c.param("k"), a = c.param("alpha"), u = c.param("u"), vth = c.param("vth");
    out.push_back(separable(
        [k, a](double x) { return 1.0 + a * std::cos(k * x); },
        [u, vth](double v) { return 0.5 * (maxwellian(v, vth, u) + maxwellian(v, vth, -u)); }));
  } else if (p == "twostream_unstable") {
    const double k = c.param("k"), a = c.param("alpha");
    out.push_back(separable(
        [k, a](double x) {
          return 1.0 + a * ((std::cos(2 * k * x) + std::cos(3 * k * x)) / 1.2 + std::cos(k * x));
        },
        [](double v) { return 2.0 / 7.0 * (1.0 + 5.0 * v * v) * maxwellian(v); }));
  } else if (p == "bump_on_tail") {
    const double k = c.param("k"), a = c.param("alpha"), np = c.param("np"), nb = c.param("nb"),
                 vb = c.param("vb"), vt = c.param("vt");
    out.push_back(separable(
        [k, a](double x) { return 1.0 + a * std::cos(k * x); },
        [=](double v) {
          return np * maxwellian(v) + nb * std::exp(-0.5 * (v - vb) * (v - vb) / (vt * vt)) /
                                          std::sqrt(2.0 * pi);
        }));
  } else if (p == "keen_J" || p == "keen_A") {
    out.push_back(separable([](double) { return 1.0; }, [](double v) { return maxwellian(v); }));
  } else if (p == "ion_acoustic") {
    const double mr = c.param("mass_ratio"), ue = c.param("drift");
    if (!(mr >= 1.0)) throw ConfigError("mass_ratio must be >= 1");
    SpeciesInit ion = separable([](double) { return 1.0; },
                                [mr](double v) { return maxwellian(v, 1.0 / std::sqrt(mr)); });
    ion.name = "ion";
    ion.coupling = 1.0 / mr;
    ion.density_weight = 1.0;
    ion.mass = mr;
    SpeciesInit el = separable([](double x) { return 1.0 + detail::ion_acoustic_perturbation(x); },
                               [ue](double v) { return maxwellian(v, 1.0, ue); });
    el.name = "electron";
    el.coupling = -1.0;
    el.density_weight = -1.0;
    el.mass = 1.0;
    out.push_back(ion);
    out.push_back(el);
  } else {
    throw ConfigError("unknown preset '" + p + "'");
  }
  return out;
}

/// Exact solution f(x, v, t) where one is known by characteristics.
inline std::optional<std::function<double(double, double, double)>> exact_solution(
    const RunConfig& c) {
  if (c.preset == "advect_sin4")
    return [](double x, double v, double t) { return std::pow(std::sin(x + v - 2.0 * t), 4); };
  if (c.preset == "rigid_cos6")
    return [](double x, double v, double t) {
      // Characteristics rotate (x, v) counter-clockwise at unit rate.
      const double ct = std::cos(t), st = std::sin(t);
      return detail::cos6_hump(x * ct + v * st, -x * st + v * ct);
    };
  return std::nullopt;
}

inline DriveSpec drive_for(const RunConfig& c) {
  DriveSpec d;
  if (c.preset == "keen_J" || c.preset == "keen_A") {
    d.kind = c.preset == "keen_J" ? DriveSpec::Kind::keen_J : DriveSpec::Kind::keen_A;
    d.amplitude = c.param("amplitude");
    d.omega = c.param("omega");
    d.k = c.param("k");
  }
  return d;
}

struct Simulation {
  SimState state;
  Model model;
  AdvectOptions options;
};

inline Simulation make_simulation(const RunConfig& c) {
  Simulation sim;
  sim.state.grid = make_phase_grid(c.x_lo, c.length, c.vc, c.nx, c.nv);
  sim.model.kind = c.model;
  sim.model.drive = drive_for(c);
  sim.options.limiter = c.limiter;
  sim.options.weno.weights = c.weights;
  sim.options.weno.epsilon = c.epsilon;
  const auto inits = species_for(c);
  // One species: neutralizing ion background of unit density. Two species:
  // both densities are evolved, no background.
  sim.model.background = inits.size() == 1 ? 1.0 : 0.0;
  for (const auto& in : inits) {
    Species sp;
    sp.name = in.name.empty() ? "f" : in.name;
    sp.coupling = in.coupling;
    sp.density_weight = in.density_weight;
    sp.mass = in.mass;
    sp.f = sample(sim.state.grid, in.f0);
    const Bounds discrete = extract_bounds(sp.f.values());
    sp.f.set_bounds(Bounds{std::min(in.lo, discrete.lo), std::max(in.hi, discrete.hi)});
    sim.state.species.push_back(std::move(sp));
  }
  return sim;
}

inline RunSettings run_settings(const RunConfig& c) {
  RunSettings s;
  s.t_final = c.t_final;
  s.cfl = c.cfl;
  s.diag_stride = c.diag_stride;
  s.snapshot_times = c.snapshot_times;
  return s;
}

}  // namespace slweno
