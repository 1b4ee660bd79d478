#pragma once

// Strang-split evolution of 1D x 1D kinetic equations
//
//   f_t + a_x(v) f_x + a_v(x, t) f_v = 0
//
// with x half-sweeps around a full v-sweep. Three models share the machinery:
// pure advection (a_x = a_v = 1), rigid-body rotation (a_x = -v, a_v = x) and
// Vlasov-Poisson with any number of species (a_x = v,
// a_v = q_s (E - E_ext)). The field is solved once per step, after the first
// x half-sweep, and held fixed during the v-sweep.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slweno/diagnostics.hpp"
#include "slweno/errors.hpp"
#include "slweno/parallel.hpp"
#include "slweno/phase_grid.hpp"
#include "slweno/poisson_spectral.hpp"
#include "slweno/sl_advect.hpp"

namespace slweno {

enum class ModelKind { advection, rigid_rotation, vlasov_poisson };

/// External driver field E_ext = A_d(t) sin(k x - omega t).
struct DriveSpec {
  enum class Kind { none, keen_J, keen_A };
  Kind kind = Kind::none;
  double amplitude = 0.0;
  double omega = 0.0;
  double k = 0.0;

  /// Temporal envelope A_d(t).
  double envelope(double t) const noexcept {
    constexpr double pi = std::numbers::pi;
    switch (kind) {
      case Kind::none:
        return 0.0;
      case Kind::keen_J:
        if (t <= 0.0) return 0.0;
        if (t < 50.0) return amplitude * std::sin(t * pi / 100.0);
        if (t < 150.0) return amplitude;
        if (t < 200.0) return amplitude * std::cos((t - 150.0) * pi / 100.0);
        return 0.0;
      case Kind::keen_A:
        if (t <= 0.0) return 0.0;
        if (t < 60.0) return amplitude / (1.0 + std::exp(-40.0 * (t - 10.0)));
        return amplitude * (1.0 - 1.0 / (1.0 + std::exp(-40.0 * (t - 110.0))));
    }
    return 0.0;
  }

  double field(double x, double t) const noexcept {
    if (kind == Kind::none) return 0.0;
    return envelope(t) * std::sin(k * x - omega * t);
  }
};

/// One kinetic species: v-speed coupling q (a_v = q (E - E_ext)), its signed
/// contribution to the Poisson source, and its mass for the kinetic energy.
struct Species {
  std::string name = "f";
  double coupling = 1.0;
  double density_weight = 1.0;
  double mass = 1.0;
  Distribution f;
};

struct Model {
  ModelKind kind = ModelKind::vlasov_poisson;
  double background = 1.0;  // uniform neutralizing density in rho
  DriveSpec drive;
};

struct SimState {
  PhaseGrid grid;
  std::vector<Species> species;
  double t = 0.0;
};

struct StepPlan {
  double dt = 0.0;
  double cfl = 0.0;
  double alpha_x = 0.0;
  double alpha_v = 0.0;
};

// ---------------------------------------------------------------------------
// Sweeps. Lines are independent; each worker owns one LineWorkspace.

class SweepPool {
 public:
  explicit SweepPool(int workers = 1) : workers_(std::max(1, workers)), ws_(workers_) {}
  int workers() const noexcept { return workers_; }
  LineWorkspace& workspace(int w) { return ws_[static_cast<std::size_t>(w)]; }

 private:
  int workers_;
  std::vector<LineWorkspace> ws_;
};

/// Advects every x-line j with speed speeds[j] for time dt.
inline void sweep_x(Distribution& f, const PhaseGrid& grid, std::span<const double> speeds,
                    double dt, const AdvectOptions& opt, SweepPool& pool) {
  if (dt == 0.0) return;
  const Bounds b = f.bounds();
  parallel_for_blocks(static_cast<std::size_t>(grid.nv()), pool.workers(),
                      [&](std::size_t lo, std::size_t hi, int w) {
                        auto& ws = pool.workspace(w);
                        for (std::size_t j = lo; j < hi; ++j)
                          advect_line_inplace(f.x_line(static_cast<int>(j)), speeds[j], dt,
                                              grid.dx(), b, opt, ws);
                      });
}

/// Advects every v-line i with speed speeds[i] for time dt.
inline void sweep_v(Distribution& f, const PhaseGrid& grid, std::span<const double> speeds,
                    double dt, const AdvectOptions& opt, SweepPool& pool) {
  if (dt == 0.0) return;
  const Bounds b = f.bounds();
  parallel_for_blocks(static_cast<std::size_t>(grid.nx()), pool.workers(),
                      [&](std::size_t lo, std::size_t hi, int w) {
                        auto& ws = pool.workspace(w);
                        std::vector<double> line(static_cast<std::size_t>(grid.nv()));
                        for (std::size_t i = lo; i < hi; ++i) {
                          if (speeds[i] == 0.0) continue;
                          f.gather_v_line(static_cast<int>(i), line);
                          advect_line_inplace(line, speeds[i], dt, grid.dv(), b, opt, ws);
                          f.scatter_v_line(static_cast<int>(i), line);
                        }
                      });
}

/// a_i = coupling * (E_i - E_ext(x_i, t)).
inline void v_speeds(std::span<const double> E, double coupling, const DriveSpec& drive,
                     const Grid1D& gx, double t, std::span<double> out) {
  for (int i = 0; i < gx.size(); ++i)
    out[i] = coupling * (E[i] - drive.field(gx.center(i), t));
}

// ---------------------------------------------------------------------------

class VlasovDriver {
 public:
  VlasovDriver(Model model, AdvectOptions opt, const PhaseGrid& grid, int workers = 1)
      : model_(std::move(model)),
        opt_(opt),
        pool_(workers),
        poisson_(grid.nx(), grid.gx.length()),
        E_(static_cast<std::size_t>(grid.nx())),
        speeds_x_(static_cast<std::size_t>(grid.nv())),
        speeds_v_(static_cast<std::size_t>(grid.nx())) {}

  const Model& model() const noexcept { return model_; }
  const AdvectOptions& options() const noexcept { return opt_; }

  /// Self-consistent field of the current state (zero for non-Poisson models).
  std::vector<double> field(const SimState& s) {
    std::vector<double> E(static_cast<std::size_t>(s.grid.nx()), 0.0);
    if (model_.kind == ModelKind::vlasov_poisson) compute_field(s, E);
    return E;
  }

  /// Time step for the state at t^n:
  ///   advection: cfl dx / 2; rigid: cfl dx / (2 pi);
  ///   Vlasov: cfl / (alpha_x / dx + alpha_v / dv) with alpha_x = max |v_j|
  ///   and alpha_v = max |a_v(x_i, t^n)| over species.
  StepPlan plan(const SimState& s, double cfl) {
    StepPlan p;
    p.cfl = cfl;
    const auto& g = s.grid;
    switch (model_.kind) {
      case ModelKind::advection:
        p.alpha_x = 1.0;
        p.alpha_v = 1.0;
        p.dt = cfl * g.dx() / 2.0;
        break;
      case ModelKind::rigid_rotation:
        p.alpha_x = g.gv.max_abs_center();
        p.alpha_v = g.gx.max_abs_center();
        p.dt = cfl * g.dx() / (2.0 * std::numbers::pi);
        break;
      case ModelKind::vlasov_poisson: {
        compute_field(s, E_);
        p.alpha_x = g.gv.max_abs_center();
        for (const auto& sp : s.species) {
          v_speeds(E_, sp.coupling, model_.drive, g.gx, s.t, speeds_v_);
          for (double a : speeds_v_) p.alpha_v = std::max(p.alpha_v, std::abs(a));
        }
        p.dt = cfl / (p.alpha_x / g.dx() + p.alpha_v / g.dv());
        break;
      }
    }
    return p;
  }

  void sweep_x_all(SimState& s, double dt) {
    for (int j = 0; j < s.grid.nv(); ++j) {
      const double v = s.grid.gv.center(j);
      speeds_x_[j] = model_.kind == ModelKind::advection        ? 1.0
                     : model_.kind == ModelKind::rigid_rotation ? -v
                                                                : v;
    }
    for (auto& sp : s.species) sweep_x(sp.f, s.grid, speeds_x_, dt, opt_, pool_);
  }

  /// v-sweep over dt with the field evaluated from the current state and the
  /// drive at time t_drive.
  void sweep_v_all(SimState& s, double dt, double t_drive) {
    if (model_.kind == ModelKind::vlasov_poisson) {
      compute_field(s, E_);
      for (auto& sp : s.species) {
        v_speeds(E_, sp.coupling, model_.drive, s.grid.gx, t_drive, speeds_v_);
        sweep_v(sp.f, s.grid, speeds_v_, dt, opt_, pool_);
      }
      return;
    }
    for (int i = 0; i < s.grid.nx(); ++i)
      speeds_v_[i] = model_.kind == ModelKind::advection ? 1.0 : s.grid.gx.center(i);
    for (auto& sp : s.species) sweep_v(sp.f, s.grid, speeds_v_, dt, opt_, pool_);
  }

  /// x(dt/2) -> field -> v(dt), drive at t + dt/2 -> x(dt/2).
  void strang_step(SimState& s, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("strang_step: dt must be positive");
    sweep_x_all(s, 0.5 * dt);
    sweep_v_all(s, dt, s.t + 0.5 * dt);
    sweep_x_all(s, 0.5 * dt);
    s.t += dt;
  }

  DiagnosticsRecord record(const SimState& s) {
    const auto E = field(s);
    std::vector<SpeciesView> views;
    views.reserve(s.species.size());
    for (const auto& sp : s.species) views.push_back({&sp.f, sp.mass});
    return compute_record(s.t, s.grid, views, E, s.species.size() == 2);
  }

 private:
  void compute_field(const SimState& s, std::span<double> E) {
    std::vector<SpeciesDensity> dens;
    dens.reserve(s.species.size());
    for (const auto& sp : s.species) dens.push_back({&sp.f, sp.density_weight});
    const auto cd = density_from_species(dens, s.grid, model_.background);
    poisson_.solve(cd.rho, E);
  }

  Model model_;
  AdvectOptions opt_;
  SweepPool pool_;
  SpectralPoisson poisson_;
  std::vector<double> E_;
  std::vector<double> speeds_x_;
  std::vector<double> speeds_v_;
};

// ---------------------------------------------------------------------------
// Run loop.

struct RunSettings {
  double t_final = 0.0;
  double cfl = 0.8;
  int diag_stride = 1;
  std::vector<double> snapshot_times;
  /// When set, these step sizes are replayed verbatim instead of planning.
  std::optional<std::vector<double>> dt_schedule;
};

struct RunObserver {
  std::function<void(const DiagnosticsRecord&)> on_record;
  std::function<void(const SimState&)> on_snapshot;
  std::function<void(const StepPlan&)> on_plan;
};

struct RunResult {
  std::vector<double> dts;
  long long steps = 0;
};

namespace detail {

inline void check_finite(const SimState& s) {
  for (const auto& sp : s.species)
    for (double x : sp.f.values())
      if (!std::isfinite(x))
        throw NonFiniteState("non-finite value in species '" + sp.name + "' at t = " +
                             std::to_string(s.t));
}

// Relative closeness used to snap the clock onto target times.
inline bool reached(double t, double target) noexcept {
  return t >= target - 1e-12 * std::max(1.0, std::abs(target));
}

}  // namespace detail

/// Advances `s` to settings.t_final. Emits a record at t = 0, every
/// diag_stride steps and at the final time; snapshots whenever the clock
/// lands on a requested time (steps are shortened to hit them).
inline RunResult run(SimState& s, VlasovDriver& driver, const RunSettings& settings,
                     const RunObserver& obs = {}) {
  RunResult res;
  std::vector<double> snaps = settings.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  auto emit_snapshots = [&] {
    while (next_snap < snaps.size() && detail::reached(s.t, snaps[next_snap])) {
      if (obs.on_snapshot) obs.on_snapshot(s);
      ++next_snap;
    }
  };
  if (obs.on_record) obs.on_record(driver.record(s));
  emit_snapshots();
  const int stride = std::max(1, settings.diag_stride);
  bool last_recorded = true;
  while (!detail::reached(s.t, settings.t_final)) {
    double dt;
    if (settings.dt_schedule) {
      if (res.steps >= static_cast<long long>(settings.dt_schedule->size()))
        throw std::runtime_error("dt schedule exhausted before the final time");
      dt = (*settings.dt_schedule)[static_cast<std::size_t>(res.steps)];
    } else {
      const auto plan = driver.plan(s, settings.cfl);
      if (obs.on_plan) obs.on_plan(plan);
      dt = plan.dt;
      dt = std::min(dt, settings.t_final - s.t);
      if (next_snap < snaps.size()) dt = std::min(dt, snaps[next_snap] - s.t);
    }
    driver.strang_step(s, dt);
    if (detail::reached(s.t, settings.t_final)) s.t = std::max(s.t, settings.t_final);
    res.dts.push_back(dt);
    ++res.steps;
    detail::check_finite(s);
    last_recorded = res.steps % stride == 0;
    if (last_recorded && obs.on_record) obs.on_record(driver.record(s));
    emit_snapshots();
  }
  if (!last_recorded && obs.on_record) obs.on_record(driver.record(s));
  return res;
}

}  // namespace slweno
