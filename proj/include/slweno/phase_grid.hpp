#pragma once

// Uniform cell-centered phase-space grids with periodic topology in x and v,
// and the distribution container the solver advances.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "slweno/errors.hpp"

namespace slweno {

/// Smallest line length supported by the periodic 5th-order stencils.
inline constexpr int kMinCells = 8;

/// Periodic wrap of an arbitrary (possibly negative) index into [0, n).
constexpr int wrap_index(long long i, int n) noexcept {
  const long long r = i % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

/// One periodic axis: n cells of width dx on [lo, hi].
class Grid1D {
 public:
  Grid1D() = default;

  Grid1D(double lo, double hi, int n) : n_(n), lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw GridError("Grid1D: hi must exceed lo");
    if (n < kMinCells)
      throw GridError("Grid1D: grid too small (" + std::to_string(n) + " cells, need >= " +
                      std::to_string(kMinCells) + ")");
    dx_ = (hi - lo) / n;
    centers_.resize(static_cast<std::size_t>(n));
    // Offsets from the midpoint are exact multiples of dx/2, which makes a
    // grid symmetric about zero exactly symmetric in floating point.
    const double mid = 0.5 * (lo + hi);
    for (int i = 0; i < n; ++i) centers_[i] = mid + (i + 0.5 - 0.5 * n) * dx_;
  }

  int size() const noexcept { return n_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double dx() const noexcept { return dx_; }
  double center(int i) const noexcept { return centers_[static_cast<std::size_t>(i)]; }
  std::span<const double> centers() const noexcept { return centers_; }
  int wrap(long long i) const noexcept { return wrap_index(i, n_); }

  double max_abs_center() const noexcept {
    double m = 0.0;
    for (double c : centers_) m = std::max(m, c < 0 ? -c : c);
    return m;
  }

 private:
  int n_ = 0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double dx_ = 0.0;
  std::vector<double> centers_;
};

/// Tensor grid (x, v).
struct PhaseGrid {
  Grid1D gx;
  Grid1D gv;

  int nx() const noexcept { return gx.size(); }
  int nv() const noexcept { return gv.size(); }
  double dx() const noexcept { return gx.dx(); }
  double dv() const noexcept { return gv.dx(); }
  double cell_area() const noexcept { return gx.dx() * gv.dx(); }
};

/// Grid on [0, L] x [-vc, vc].
inline PhaseGrid make_phase_grid(double length, double vc, int nx, int nv) {
  if (!(length > 0.0)) throw GridError("make_phase_grid: L must be positive");
  if (!(vc > 0.0)) throw GridError("make_phase_grid: V_c must be positive");
  return PhaseGrid{Grid1D(0.0, length, nx), Grid1D(-vc, vc, nv)};
}

/// Grid on [x_lo, x_lo + L] x [-vc, vc] (rigid-body presets live on [-pi, pi]).
inline PhaseGrid make_phase_grid(double x_lo, double length, double vc, int nx, int nv) {
  if (!(length > 0.0)) throw GridError("make_phase_grid: L must be positive");
  if (!(vc > 0.0)) throw GridError("make_phase_grid: V_c must be positive");
  return PhaseGrid{Grid1D(x_lo, x_lo + length, nx), Grid1D(-vc, vc, nv)};
}

/// Global solution bounds [f_m, f_M].
struct Bounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  /// Machine-level slack used wherever bounds are checked.
  double tolerance() const noexcept {
    double s = 1.0;
    if (lo > -std::numeric_limits<double>::infinity()) s = std::max(s, lo < 0 ? -lo : lo);
    if (hi < std::numeric_limits<double>::infinity()) s = std::max(s, hi < 0 ? -hi : hi);
    return 1e-12 * s;
  }
};

/// Min and max over all samples. Empty input is a caller bug.
inline Bounds extract_bounds(std::span<const double> values) {
  if (values.empty()) throw GridError("extract_bounds: empty array");
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  return Bounds{*mn, *mx};
}

/// f(x_i, v_j) stored with x contiguous: index j * nx + i. x-lines are
/// contiguous spans; v-lines are gathered with stride nx.
class Distribution {
 public:
  Distribution() = default;
  Distribution(int nx, int nv, double fill = 0.0)
      : nx_(nx), nv_(nv), values_(static_cast<std::size_t>(nx) * nv, fill) {}

  int nx() const noexcept { return nx_; }
  int nv() const noexcept { return nv_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(int i, int j) noexcept { return values_[idx(i, j)]; }
  double operator()(int i, int j) const noexcept { return values_[idx(i, j)]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  std::span<double> x_line(int j) noexcept {
    return {values_.data() + static_cast<std::size_t>(j) * nx_, static_cast<std::size_t>(nx_)};
  }
  std::span<const double> x_line(int j) const noexcept {
    return {values_.data() + static_cast<std::size_t>(j) * nx_, static_cast<std::size_t>(nx_)};
  }

  void gather_v_line(int i, std::span<double> out) const noexcept {
    for (int j = 0; j < nv_; ++j) out[j] = values_[idx(i, j)];
  }
  void scatter_v_line(int i, std::span<const double> in) noexcept {
    for (int j = 0; j < nv_; ++j) values_[idx(i, j)] = in[j];
  }

  const Bounds& bounds() const noexcept { return bounds_; }
  void set_bounds(Bounds b) {
    if (b.lo > b.hi) throw GridError("Distribution: bounds with f_m > f_M");
    bounds_ = b;
  }
  /// Freezes [f_m, f_M] from the current values (call once on the initial data).
  void freeze_bounds() { set_bounds(extract_bounds(values_)); }

 private:
  std::size_t idx(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + static_cast<std::size_t>(i);
  }

  int nx_ = 0;
  int nv_ = 0;
  std::vector<double> values_;
  Bounds bounds_;
};

/// Samples fn(x, v) at every cell center.
template <class Fn>
Distribution sample(const PhaseGrid& grid, Fn&& fn) {
  Distribution f(grid.nx(), grid.nv());
  for (int j = 0; j < grid.nv(); ++j) {
    const double v = grid.gv.center(j);
    for (int i = 0; i < grid.nx(); ++i) f(i, j) = fn(grid.gx.center(i), v);
  }
  return f;
}

// Snapshot file: header "N_x N_v L V_c t", then N_v rows of N_x values.
inline void write_snapshot(std::ostream& os, const PhaseGrid& grid, const Distribution& f,
                           double t) {
  os << std::setprecision(17);
  os << grid.nx() << ' ' << grid.nv() << ' ' << grid.gx.length() << ' ' << grid.gv.hi() << ' '
     << t << '\n';
  for (int j = 0; j < grid.nv(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (i) os << ' ';
      os << f(i, j);
    }
    os << '\n';
  }
}

inline void write_snapshot(const std::string& path, const PhaseGrid& grid, const Distribution& f,
                           double t) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open snapshot file for writing: " + path);
  write_snapshot(os, grid, f, t);
  if (!os) throw std::runtime_error("write failed: " + path);
}

struct Snapshot {
  int nx = 0;
  int nv = 0;
  double length = 0.0;
  double vc = 0.0;
  double t = 0.0;
  Distribution f;
};

inline Snapshot read_snapshot(std::istream& is) {
  Snapshot s;
  if (!(is >> s.nx >> s.nv >> s.length >> s.vc >> s.t))
    throw std::runtime_error("snapshot: malformed header");
  s.f = Distribution(s.nx, s.nv);
  for (int j = 0; j < s.nv; ++j)
    for (int i = 0; i < s.nx; ++i)
      if (!(is >> s.f(i, j))) throw std::runtime_error("snapshot: truncated data");
  return s;
}

}  // namespace slweno
