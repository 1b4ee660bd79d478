#pragma once

// Scalar diagnostics of a phase-space state. All reductions run serially in a
// fixed order so records are bit-identical for any worker count.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slweno/errors.hpp"
#include "slweno/phase_grid.hpp"

namespace slweno {

inline constexpr double kEntropyFloor = 1e-30;
inline constexpr double kLogFourierFloor = -16.0;
inline constexpr double kDensityFloor = 1e-14;
inline constexpr int kLogFourierModes = 4;

/// Discrete L^p norm (sum |f|^p dx dv)^{1/p}, p in {1, 2}.
inline double lp_norm(const Distribution& f, const PhaseGrid& grid, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("lp_norm: p must be 1 or 2");
  double acc = 0.0;
  for (double x : f.values()) acc += p == 1 ? std::abs(x) : x * x;
  acc *= grid.cell_area();
  return p == 1 ? acc : std::sqrt(acc);
}

/// sum f dx dv (signed).
inline double mass(const Distribution& f, const PhaseGrid& grid) {
  double acc = 0.0;
  for (double x : f.values()) acc += x;
  return acc * grid.cell_area();
}

struct Energies {
  double kinetic = 0.0;
  double field = 0.0;
  double total = 0.0;
};

/// sum f v^2 dx dv (scaled by species mass) and sum E^2 dx.
inline double kinetic_energy(const Distribution& f, const PhaseGrid& grid, double species_mass = 1.0) {
  double acc = 0.0;
  for (int j = 0; j < grid.nv(); ++j) {
    const double v = grid.gv.center(j);
    double row = 0.0;
    for (double x : f.x_line(j)) row += x;
    acc += row * v * v;
  }
  return species_mass * acc * grid.cell_area();
}

inline double field_energy(std::span<const double> E, const PhaseGrid& grid) {
  double acc = 0.0;
  for (double e : E) acc += e * e;
  return acc * grid.dx();
}

inline Energies energies(const Distribution& f, std::span<const double> E, const PhaseGrid& grid) {
  Energies en;
  en.kinetic = kinetic_energy(f, grid);
  en.field = field_energy(E, grid);
  en.total = en.kinetic + en.field;
  return en;
}

struct EntropyResult {
  double value = 0.0;
  long long skipped = 0;  // cells with f <= floor (negative values land here)
};

/// sum f log f dx dv; cells at or below the floor contribute zero and are
/// counted when strictly negative.
inline EntropyResult entropy(const Distribution& f, const PhaseGrid& grid,
                             double floor = kEntropyFloor) {
  EntropyResult r;
  double acc = 0.0;
  for (double x : f.values()) {
    if (x > floor) {
      acc += x * std::log(x);
    } else if (x < 0.0) {
      ++r.skipped;
    }
  }
  r.value = acc * grid.cell_area();
  return r;
}

/// log10 of (1/L) |int E e^{i k n x} dx| with k = 2 pi / L, floored at -16.
inline double log_fourier_mode(std::span<const double> E, const Grid1D& gx, int n) {
  if (n < 1) throw std::invalid_argument("log_fourier_mode: n must be >= 1");
  const double k = 2.0 * std::numbers::pi / gx.length();
  double s = 0.0, c = 0.0;
  for (int i = 0; i < gx.size(); ++i) {
    const double x = gx.center(i);
    s += E[i] * std::sin(k * n * x);
    c += E[i] * std::cos(k * n * x);
  }
  s *= gx.dx();
  c *= gx.dx();
  const double mag = std::sqrt(s * s + c * c) / gx.length();
  if (!(mag > 0.0)) return kLogFourierFloor;
  return std::max(kLogFourierFloor, std::log10(mag));
}

struct FluidSpeedResult {
  double value = 0.0;
  int excluded = 0;  // x-cells skipped for vanishing density
};

/// |<u_i - u_e>_x| with u_s(x) = sum_j v_j f_s dv / sum_j f_s dv.
inline FluidSpeedResult fluid_speed_difference(const Distribution& f_ion,
                                               const Distribution& f_electron,
                                               const PhaseGrid& grid) {
  FluidSpeedResult r;
  const double dv = grid.dv();
  double acc = 0.0;
  int used = 0;
  for (int i = 0; i < grid.nx(); ++i) {
    double ni = 0.0, pi = 0.0, ne = 0.0, pe = 0.0;
    for (int j = 0; j < grid.nv(); ++j) {
      const double v = grid.gv.center(j);
      ni += f_ion(i, j) * dv;
      pi += v * f_ion(i, j) * dv;
      ne += f_electron(i, j) * dv;
      pe += v * f_electron(i, j) * dv;
    }
    if (ni < kDensityFloor || ne < kDensityFloor) {
      ++r.excluded;
      continue;
    }
    acc += pi / ni - pe / ne;
    ++used;
  }
  if (used == 0) throw DegenerateDensity("fluid_speed_difference: no cell with positive density");
  r.value = std::abs(acc / used);
  return r;
}

/// One time sample of every tracked quantity. Species sums use each
/// species' mass in the kinetic term.
struct DiagnosticsRecord {
  double t = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double kinetic_energy = 0.0;
  double field_energy = 0.0;
  double total_energy = 0.0;
  double entropy = 0.0;
  double e_l2 = 0.0;
  double e_max = 0.0;
  std::array<double, kLogFourierModes> log_fourier{};
  double fluid_speed_diff = std::numeric_limits<double>::quiet_NaN();
  double f_min = 0.0;
  double f_max = 0.0;
  std::vector<double> species_l1;
  long long entropy_skipped = 0;
};

struct SpeciesView {
  const Distribution* f = nullptr;
  double mass = 1.0;
};

/// Builds a record; with exactly two species the first is taken as ions and
/// the second as electrons for the fluid-speed difference.
inline DiagnosticsRecord compute_record(double t, const PhaseGrid& grid,
                                        std::span<const SpeciesView> species,
                                        std::span<const double> E, bool two_species) {
  DiagnosticsRecord r;
  r.t = t;
  double l2sq = 0.0;
  r.f_min = std::numeric_limits<double>::infinity();
  r.f_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : species) {
    const double l1 = lp_norm(*s.f, grid, 1);
    const double l2 = lp_norm(*s.f, grid, 2);
    r.species_l1.push_back(l1);
    r.l1 += l1;
    l2sq += l2 * l2;
    r.kinetic_energy += kinetic_energy(*s.f, grid, s.mass);
    const auto ent = entropy(*s.f, grid);
    r.entropy += ent.value;
    r.entropy_skipped += ent.skipped;
    const auto [mn, mx] = std::minmax_element(s.f->values().begin(), s.f->values().end());
    r.f_min = std::min(r.f_min, *mn);
    r.f_max = std::max(r.f_max, *mx);
  }
  r.l2 = std::sqrt(l2sq);
  r.field_energy = field_energy(E, grid);
  r.total_energy = r.kinetic_energy + r.field_energy;
  r.e_l2 = std::sqrt(r.field_energy);
  r.e_max = 0.0;
  for (double e : E) r.e_max = std::max(r.e_max, std::abs(e));
  for (int n = 1; n <= kLogFourierModes; ++n) r.log_fourier[n - 1] = log_fourier_mode(E, grid.gx, n);
  if (two_species && species.size() == 2)
    r.fluid_speed_diff = fluid_speed_difference(*species[0].f, *species[1].f, grid).value;
  return r;
}

struct PeakFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  int peaks = 0;
};

/// Least-squares slope of ln y through the local maxima of ln y whose times
/// fall in [t_lo, t_hi]. Oscillating field amplitudes grow or decay along
/// their envelope, so only the peaks are fitted.
inline PeakFit fit_log_peaks(std::span<const double> t, std::span<const double> y, double t_lo,
                             double t_hi) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_log_peaks: size mismatch");
  std::vector<double> px, py;
  for (std::size_t k = 1; k + 1 < y.size(); ++k) {
    if (!(y[k] > 0.0) || t[k] < t_lo || t[k] > t_hi) continue;
    if (y[k] > y[k - 1] && y[k] >= y[k + 1]) {
      px.push_back(t[k]);
      py.push_back(std::log(y[k]));
    }
  }
  PeakFit fit;
  fit.peaks = static_cast<int>(px.size());
  if (fit.peaks < 2) return fit;
  const double n = static_cast<double>(px.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) {
    mx += px[k];
    my += py[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) {
    sxy += (px[k] - mx) * (py[k] - my);
    sxx += (px[k] - mx) * (px[k] - mx);
  }
  fit.slope = sxy / sxx;
  return fit;
}

/// (Q(t) - Q(0)) / |Q(0)|.
inline double relative_deviation(double q, double q0) {
  if (q0 == 0.0) throw std::domain_error("relative_deviation: reference value is zero");
  return (q - q0) / std::abs(q0);
}

}  // namespace slweno
