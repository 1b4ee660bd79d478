#pragma once

// Semi-Lagrangian finite-difference flux reconstruction for u_t + a u_x = 0
// on a periodic line: the first-order monotone flux h_{i+1/2} and the
// fifth-order WENO flux H_{i+1/2}, including whole-cell shifts for |a|dt > dx.
//
// Interface i stands for x_{i+1/2}, i.e. between cells i and i+1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "slweno/phase_grid.hpp"

namespace slweno {

enum class Weights { nonlinear, linear };

struct WenoOptions {
  Weights weights = Weights::nonlinear;
  double epsilon = 1e-6;
};

/// A single line of point values advected with constant speed a over dt.
struct LineField {
  std::span<const double> u;
  double a = 0.0;
  double dt = 0.0;
  double dx = 1.0;
};

/// |a| dt = (cells + xi) dx with cells >= 0 and xi in [0, 1).
///
/// For a > 0 the foot of interface i is i* = i - cells, so that
/// x_i - a dt lies in (x_{i*-1}, x_{i*}]. For a < 0 the foot is i* = i + cells
/// and x_i + |a| dt lies in [x_{i*}, x_{i*+1}); an exact grid hit resolves to
/// xi = 0 with one more whole cell.
struct ShiftDecomposition {
  int direction = 0;  // sign(a)
  int cells = 0;
  double xi = 0.0;

  /// Signed whole-cell displacement of the characteristic foot.
  int shift() const noexcept { return direction * cells; }
  long long foot(long long i) const noexcept { return i - static_cast<long long>(shift()); }
};

inline ShiftDecomposition shift_decompose(double a, double dt, double dx) {
  ShiftDecomposition d;
  if (a == 0.0 || dt == 0.0) return d;
  d.direction = a > 0.0 ? 1 : -1;
  const double s = std::abs(a) * dt / dx;
  const double whole = std::floor(s);
  d.cells = static_cast<int>(whole);
  d.xi = s - whole;
  if (d.xi >= 1.0) {  // guards s just below an integer rounding up
    d.cells += 1;
    d.xi = 0.0;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Fifth-order kernel on one interface.
//
// Stencils are passed upwind-ordered: for a > 0 the five values are
// u_{i-2..i+2}; for a < 0 they are u_{i-1..i+3}. Candidate r uses stencil
// entries r-1 .. r+1 in both cases.

/// Per-line coefficients of the three third-order candidate fluxes (divided
/// by dx, including the direction sign) and the linear weights.
struct CandidateCoefficients {
  std::array<std::array<double, 3>, 3> c{};
  std::array<double, 3> gamma{};
  int direction = 1;
};

inline CandidateCoefficients candidate_coefficients(double xi, int direction) {
  const double x1 = xi;
  const double x2 = xi * xi;
  const double x3 = x2 * xi;
  CandidateCoefficients k;
  k.direction = direction;
  if (direction >= 0) {
    k.c[0] = {x3 / 6 - x2 / 2 + x1 / 3, -x3 / 3 + 1.5 * x2 - 7 * x1 / 6, x3 / 6 - x2 + 11 * x1 / 6};
    k.c[1] = {x3 / 6 - x1 / 6, -x3 / 3 + x2 / 2 + 5 * x1 / 6, x3 / 6 - x2 / 2 + x1 / 3};
    k.c[2] = {x3 / 6 + x2 / 2 + x1 / 3, -x3 / 3 - x2 / 2 + 5 * x1 / 6, x3 / 6 - x1 / 6};
    k.gamma = {0.1 + 0.15 * x1 + 0.05 * x2, 0.6 + 0.1 * x1 - 0.1 * x2,
               0.3 - 0.25 * x1 + 0.05 * x2};
  } else {
    // Mirror image of the a > 0 family about x_{i+1/2}, with the flux sign
    // flipped.
    k.c[0] = {-(x3 / 6 - x1 / 6), -(-x3 / 3 - x2 / 2 + 5 * x1 / 6), -(x3 / 6 + x2 / 2 + x1 / 3)};
    k.c[1] = {-(x3 / 6 - x2 / 2 + x1 / 3), -(-x3 / 3 + x2 / 2 + 5 * x1 / 6), -(x3 / 6 - x1 / 6)};
    k.c[2] = {-(x3 / 6 - x2 + 11 * x1 / 6), -(-x3 / 3 + 1.5 * x2 - 7 * x1 / 6),
              -(x3 / 6 - x2 / 2 + x1 / 3)};
    k.gamma = {0.3 - 0.25 * x1 + 0.05 * x2, 0.6 + 0.1 * x1 - 0.1 * x2,
               0.1 + 0.15 * x1 + 0.05 * x2};
  }
  return k;
}

/// Linear weights gamma_r(xi) for the given wind direction.
inline std::array<double, 3> linear_weights(double xi, int direction) {
  return candidate_coefficients(xi, direction).gamma;
}

/// Jiang-Shu indicators of the three candidate stencils; one formula serves
/// both wind directions because the stencil is upwind-ordered.
inline std::array<double, 3> smoothness_indicators(std::span<const double, 5> s) {
  auto sq = [](double z) { return z * z; };
  constexpr double c13 = 13.0 / 12.0;
  return {c13 * sq(s[0] - 2 * s[1] + s[2]) + 0.25 * sq(s[0] - 4 * s[1] + 3 * s[2]),
          c13 * sq(s[1] - 2 * s[2] + s[3]) + 0.25 * sq(s[1] - s[3]),
          c13 * sq(s[2] - 2 * s[3] + s[4]) + 0.25 * sq(3 * s[2] - 4 * s[3] + s[4])};
}

/// omega_r = gamma_r / (eps + beta_r)^2, normalized.
inline std::array<double, 3> nonlinear_weights(std::span<const double, 5> s,
                                               const std::array<double, 3>& gamma,
                                               double epsilon) {
  const auto beta = smoothness_indicators(s);
  std::array<double, 3> w{};
  double sum = 0.0;
  for (int r = 0; r < 3; ++r) {
    const double d = epsilon + beta[r];
    w[r] = gamma[r] / (d * d);
    sum += w[r];
  }
  for (auto& x : w) x /= sum;
  return w;
}

/// The three candidate fluxes H^(r) / dx on one stencil.
inline std::array<double, 3> candidate_fluxes(std::span<const double, 5> s,
                                              const CandidateCoefficients& k) {
  std::array<double, 3> out{};
  for (int r = 0; r < 3; ++r)
    out[r] = k.c[r][0] * s[r] + k.c[r][1] * s[r + 1] + k.c[r][2] * s[r + 2];
  return out;
}

/// Fractional WENO5 flux at one interface (fraction xi baked into k).
inline double fractional_flux(std::span<const double, 5> s, const CandidateCoefficients& k,
                              double dx, const WenoOptions& opt) {
  const auto cand = candidate_fluxes(s, k);
  const auto w = opt.weights == Weights::linear
                     ? k.gamma
                     : nonlinear_weights(s, k.gamma, opt.epsilon);
  return dx * (w[0] * cand[0] + w[1] * cand[1] + w[2] * cand[2]);
}

// ---------------------------------------------------------------------------
// Line-level fluxes.

namespace detail {

/// Upwind-ordered stencil around interface k with periodic wrap on the fly.
inline void load_stencil(std::span<const double> u, long long k, int direction,
                         std::array<double, 5>& s) noexcept {
  const int n = static_cast<int>(u.size());
  const long long first = direction >= 0 ? k - 2 : k - 1;
  if (first >= 0 && first + 4 < n) {
    const double* p = u.data() + first;
    s = {p[0], p[1], p[2], p[3], p[4]};
  } else {
    for (int r = 0; r < 5; ++r) s[r] = u[wrap_index(first + r, n)];
  }
}

/// Signed whole-cell flux for interface i: sum of dx*u_j over the cells the
/// characteristic crosses completely.
inline double whole_cell_sum(std::span<const double> u, long long i, const ShiftDecomposition& d,
                             double dx) noexcept {
  if (d.cells == 0) return 0.0;
  const int n = static_cast<int>(u.size());
  double acc = 0.0;
  if (d.direction > 0) {
    for (long long j = i - d.cells + 1; j <= i; ++j) acc += u[wrap_index(j, n)];
    return dx * acc;
  }
  for (long long j = i + 1; j <= i + d.cells; ++j) acc += u[wrap_index(j, n)];
  return -dx * acc;
}

}  // namespace detail

/// First-order monotone flux h_{i+1/2} for every interface.
inline void flux_first_order(const LineField& line, std::span<double> h) {
  const int n = static_cast<int>(line.u.size());
  const auto d = shift_decompose(line.a, line.dt, line.dx);
  if (d.direction == 0) {
    std::fill(h.begin(), h.end(), 0.0);
    return;
  }
  const double frac = d.xi * line.dx;
  for (int i = 0; i < n; ++i) {
    const long long foot = d.foot(i);
    const double whole = detail::whole_cell_sum(line.u, i, d, line.dx);
    h[i] = d.direction > 0 ? whole + frac * line.u[wrap_index(foot, n)]
                           : whole - frac * line.u[wrap_index(foot + 1, n)];
  }
}

inline std::vector<double> flux_first_order(const LineField& line) {
  std::vector<double> h(line.u.size());
  flux_first_order(line, h);
  return h;
}

/// Fractional fluxes G_k = H_{k+1/2}(xi) for every interface k (no whole-cell
/// part). All zero when xi == 0.
inline void fractional_fluxes(std::span<const double> u, const ShiftDecomposition& d, double dx,
                              const WenoOptions& opt, std::span<double> g) {
  const int n = static_cast<int>(u.size());
  if (d.direction == 0 || d.xi == 0.0) {
    std::fill(g.begin(), g.end(), 0.0);
    return;
  }
  const auto k = candidate_coefficients(d.xi, d.direction);
  std::array<double, 5> s{};
  for (int i = 0; i < n; ++i) {
    detail::load_stencil(u, i, d.direction, s);
    g[i] = fractional_flux(std::span<const double, 5>(s), k, dx, opt);
  }
}

/// Fifth-order SL WENO flux H_{i+1/2} for every interface. `scratch` must
/// hold u.size() values.
inline void flux_weno5(const LineField& line, const WenoOptions& opt, std::span<double> H,
                       std::span<double> scratch) {
  const int n = static_cast<int>(line.u.size());
  const auto d = shift_decompose(line.a, line.dt, line.dx);
  if (d.direction == 0) {
    std::fill(H.begin(), H.end(), 0.0);
    return;
  }
  if (d.cells == 0) {
    fractional_fluxes(line.u, d, line.dx, opt, H);
    return;
  }
  fractional_fluxes(line.u, d, line.dx, opt, scratch);
  for (int i = 0; i < n; ++i)
    H[i] = detail::whole_cell_sum(line.u, i, d, line.dx) + scratch[wrap_index(d.foot(i), n)];
}

inline std::vector<double> flux_weno5(const LineField& line, const WenoOptions& opt = {}) {
  std::vector<double> H(line.u.size()), scratch(line.u.size());
  flux_weno5(line, opt, H, scratch);
  return H;
}

}  // namespace slweno
