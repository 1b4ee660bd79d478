#pragma once

// Mesh-doubling accuracy studies.
//
// Errors are measured at the coarse grid points against the exact solution
// (advect_sin4, rigid_cos6) or against a reference run (vp_smooth). The
// reference is computed on a mesh refined 4x in both directions that replays
// the coarse run's exact step sequence, so the splitting error, identical in
// both runs, drops out and the spatial error is what is measured. Coarse
// centers sit on fine faces and are recovered with the 8-point midpoint
// Lagrange stencil in each direction.

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slweno/config.hpp"
#include "slweno/phase_grid.hpp"
#include "slweno/presets.hpp"
#include "slweno/vlasov_driver.hpp"

namespace slweno {

struct ErrorNorms {
  double l1 = 0.0;    // mean |e| over grid points
  double linf = 0.0;  // max |e|
};

inline ErrorNorms error_norms(std::span<const double> f, std::span<const double> ref) {
  if (f.size() != ref.size() || f.empty())
    throw std::invalid_argument("error_norms: size mismatch");
  ErrorNorms e;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = std::abs(f[i] - ref[i]);
    e.l1 += d;
    e.linf = std::max(e.linf, d);
  }
  e.l1 /= static_cast<double>(f.size());
  return e;
}

/// log2(e_N / e_2N).
inline double observed_order(double coarse, double fine) {
  return std::log2(coarse / fine);
}

inline constexpr int kReferenceRefinement = 4;

/// Values at the coarse centers of a periodic field stored on a grid refined
/// by kReferenceRefinement in both directions.
inline Distribution restrict_to_coarse(const Distribution& fine, int nx, int nv) {
  static constexpr double w[8] = {-5.0, 49.0, -245.0, 1225.0, 1225.0, -245.0, 49.0, -5.0};
  constexpr int r = kReferenceRefinement;
  if (fine.nx() != r * nx || fine.nv() != r * nv)
    throw std::invalid_argument("restrict_to_coarse: fine grid is not a 4x refinement");
  const int fnx = fine.nx(), fnv = fine.nv();
  // x pass: coarse center i lies midway between fine cells r*i + r/2 - 1 and r*i + r/2.
  Distribution tmp(nx, fnv);
  for (int j = 0; j < fnv; ++j)
    for (int i = 0; i < nx; ++i) {
      const int left = r * i + r / 2 - 1;
      double acc = 0.0;
      for (int q = 0; q < 8; ++q) acc += w[q] * fine(wrap_index(left - 3 + q, fnx), j);
      tmp(i, j) = acc / 2048.0;
    }
  Distribution out(nx, nv);
  for (int j = 0; j < nv; ++j) {
    const int left = r * j + r / 2 - 1;
    for (int i = 0; i < nx; ++i) {
      double acc = 0.0;
      for (int q = 0; q < 8; ++q) acc += w[q] * tmp(i, wrap_index(left - 3 + q, fnv));
      out(i, j) = acc / 2048.0;
    }
  }
  return out;
}

struct ConvergenceRow {
  int n = 0;
  double l1 = 0.0;
  double l1_order = std::numeric_limits<double>::quiet_NaN();
  double linf = 0.0;
  double linf_order = std::numeric_limits<double>::quiet_NaN();
  double f_min = 0.0;
  double seconds = 0.0;
};

inline bool has_reference(const RunConfig& c) {
  return exact_solution(c).has_value() || c.preset == "vp_smooth";
}

struct RunOutcome {
  Simulation sim;
  RunResult result;
};

inline RunOutcome run_config(const RunConfig& c, int workers = 1,
                             std::optional<std::vector<double>> schedule = std::nullopt) {
  RunOutcome out{make_simulation(c), {}};
  VlasovDriver driver(out.sim.model, out.sim.options, out.sim.state.grid, workers);
  RunSettings s = run_settings(c);
  s.dt_schedule = std::move(schedule);
  out.result = run(out.sim.state, driver, s);
  return out;
}

/// Error of one run of `c` against its exact or reference solution.
inline ConvergenceRow measure(const RunConfig& c, int workers = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  ConvergenceRow row;
  row.n = c.nx;
  auto coarse = run_config(c, workers);
  const auto& f = coarse.sim.state.species.front().f;
  const auto& grid = coarse.sim.state.grid;
  Distribution ref;
  if (auto exact = exact_solution(c)) {
    const double t = coarse.sim.state.t;
    ref = sample(grid, [&](double x, double v) { return (*exact)(x, v, t); });
  } else {
    RunConfig fine = c;
    fine.nx *= kReferenceRefinement;
    fine.nv *= kReferenceRefinement;
    auto fine_run = run_config(fine, workers, coarse.result.dts);
    ref = restrict_to_coarse(fine_run.sim.state.species.front().f, c.nx, c.nv);
  }
  const auto e = error_norms(f.values(), ref.values());
  row.l1 = e.l1;
  row.linf = e.linf;
  row.f_min = *std::min_element(f.values().begin(), f.values().end());
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

/// Runs `base` at each mesh (nx = N, nv = N * base.nv / base.nx) and fills
/// in observed orders between consecutive meshes.
inline std::vector<ConvergenceRow> convergence_study(const RunConfig& base,
                                                     const std::vector<int>& meshes,
                                                     int workers = 1) {
  if (!has_reference(base))
    throw ConfigError("preset '" + base.preset + "' has no exact or reference solution");
  if (meshes.empty()) throw ConfigError("empty mesh list");
  for (std::size_t m = 1; m < meshes.size(); ++m)
    if (meshes[m] != 2 * meshes[m - 1]) throw ConfigError("mesh list must double at each step");
  if (base.nv % base.nx != 0) throw ConfigError("nv must be a multiple of nx for a mesh study");
  const int ratio = base.nv / base.nx;
  std::vector<ConvergenceRow> rows;
  for (int n : meshes) {
    RunConfig c = base;
    c.nx = n;
    c.nv = ratio * n;
    c.snapshot_times.clear();
    rows.push_back(measure(c, workers));
    if (rows.size() > 1) {
      auto& prev = rows[rows.size() - 2];
      rows.back().l1_order = observed_order(prev.l1, rows.back().l1);
      rows.back().linf_order = observed_order(prev.linf, rows.back().linf);
    }
  }
  return rows;
}

}  // namespace slweno
