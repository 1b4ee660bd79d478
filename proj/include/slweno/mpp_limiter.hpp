#pragma once

// Parametrized maximum-principle-preserving flux limiter.
//
// Each high-order flux is pulled towards the monotone flux,
//   Htilde_{i+1/2} = theta_{i+1/2} (H_{i+1/2} - h_{i+1/2}) + h_{i+1/2},
// with theta chosen per interface as large as the case analysis on both
// neighbouring cells allows while keeping the conservative update inside
// [u_m, u_M].
//
// Indexing: interface i is x_{i+1/2}; for cell i, F_{i-1/2} = F[i-1] and
// F_{i+1/2} = F[i] (periodic).

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "slweno/errors.hpp"
#include "slweno/phase_grid.hpp"

namespace slweno {

struct LimiterInput {
  std::span<const double> u;
  std::span<const double> H;
  std::span<const double> h;
  double dx = 1.0;
  Bounds bounds;
};

/// Per-cell upper bounds on theta at the cell's left (minus) and right (plus)
/// interfaces, from the maximum-side and minimum-side constraints.
struct LimiterBounds {
  std::vector<double> max_minus, max_plus;
  std::vector<double> min_minus, min_plus;
};

struct FluxSet {
  std::vector<double> H;
  std::vector<double> h;
  std::vector<double> theta;
  std::vector<double> Htilde;
};

/// Lambda^M_{-1/2}, Lambda^M_{+1/2}, Lambda^m_{-1/2}, Lambda^m_{+1/2} of one cell.
struct CellLambdas {
  double max_minus = 1.0, max_plus = 1.0;
  double min_minus = 1.0, min_plus = 1.0;
};

namespace detail {

inline double unit_clamp(double x) noexcept { return std::clamp(x, 0.0, 1.0); }

inline bool finite_bound(double b) noexcept { return std::isfinite(b); }

/// Case analysis for one cell.
inline CellLambdas cell_lambdas(double gamma_max, double gamma_min, double f_minus,
                                double f_plus, bool use_max, bool use_min) noexcept {
  CellLambdas L;
  if (use_max) {
    if (f_minus <= 0.0 && f_plus >= 0.0) {
      // (a): inactive
    } else if (f_minus <= 0.0 && f_plus < 0.0) {
      L.max_plus = unit_clamp(std::min(1.0, gamma_max / (-f_plus)));
    } else if (f_minus > 0.0 && f_plus >= 0.0) {
      L.max_minus = unit_clamp(std::min(1.0, gamma_max / f_minus));
    } else if (!(f_minus - f_plus - gamma_max <= 0.0)) {
      const double b = unit_clamp(gamma_max / (f_minus - f_plus));
      L.max_minus = b;
      L.max_plus = b;
    }
  }
  if (use_min) {
    if (f_minus >= 0.0 && f_plus <= 0.0) {
      // (a): inactive
    } else if (f_minus >= 0.0 && f_plus > 0.0) {
      L.min_plus = unit_clamp(std::min(1.0, gamma_min / (-f_plus)));
    } else if (f_minus < 0.0 && f_plus <= 0.0) {
      L.min_minus = unit_clamp(std::min(1.0, gamma_min / f_minus));
    } else if (!(f_minus - f_plus - gamma_min >= 0.0)) {
      const double b = unit_clamp(gamma_min / (f_minus - f_plus));
      L.min_minus = b;
      L.min_plus = b;
    }
  }
  return L;
}

inline void check_monotone(double gamma_max, double gamma_min, int cell, double tol) {
  if (gamma_max < -tol)
    throw MonotoneViolation("monotone flux exceeds upper bound at cell " + std::to_string(cell),
                            cell, gamma_max);
  if (gamma_min > tol)
    throw MonotoneViolation("monotone flux undershoots lower bound at cell " +
                                std::to_string(cell),
                            cell, gamma_min);
}

}  // namespace detail

/// Gamma^M_i and Gamma^m_i for every cell; throws MonotoneViolation when the
/// monotone update itself leaves [u_m, u_M] beyond the bound tolerance.
inline void gamma_terms(const LimiterInput& in, std::span<double> gamma_max,
                        std::span<double> gamma_min) {
  const int n = static_cast<int>(in.u.size());
  const double tol = in.bounds.tolerance();
  const bool use_max = detail::finite_bound(in.bounds.hi);
  const bool use_min = detail::finite_bound(in.bounds.lo);
  for (int i = 0; i < n; ++i) {
    const double dh = (in.h[i] - in.h[wrap_index(i - 1, n)]) / in.dx;
    gamma_max[i] = in.bounds.hi - in.u[i] + dh;
    gamma_min[i] = in.bounds.lo - in.u[i] + dh;
    detail::check_monotone(use_max ? gamma_max[i] : 0.0, use_min ? gamma_min[i] : 0.0, i, tol);
  }
}

/// F_{i+1/2} = (H_{i+1/2} - h_{i+1/2}) / dx.
inline void flux_deviation(std::span<const double> H, std::span<const double> h, double dx,
                           std::span<double> F) {
  for (std::size_t i = 0; i < H.size(); ++i) F[i] = (H[i] - h[i]) / dx;
}

inline LimiterBounds lambda_bounds(std::span<const double> gamma_max,
                                   std::span<const double> gamma_min, std::span<const double> F,
                                   const Bounds& bounds) {
  const int n = static_cast<int>(F.size());
  LimiterBounds out;
  out.max_minus.resize(n);
  out.max_plus.resize(n);
  out.min_minus.resize(n);
  out.min_plus.resize(n);
  const bool use_max = detail::finite_bound(bounds.hi);
  const bool use_min = detail::finite_bound(bounds.lo);
  for (int i = 0; i < n; ++i) {
    const auto L = detail::cell_lambdas(gamma_max[i], gamma_min[i], F[wrap_index(i - 1, n)], F[i],
                                        use_max, use_min);
    out.max_minus[i] = L.max_minus;
    out.max_plus[i] = L.max_plus;
    out.min_minus[i] = L.min_minus;
    out.min_plus[i] = L.min_plus;
  }
  return out;
}

/// theta_{i+1/2} = min(Lambda_{+1/2, I_i}, Lambda_{-1/2, I_{i+1}}).
inline void theta(const LimiterBounds& b, std::span<double> out) {
  const int n = static_cast<int>(b.max_plus.size());
  for (int i = 0; i < n; ++i) {
    const int r = wrap_index(i + 1, n);
    const double right_of_cell = std::min(b.max_plus[i], b.min_plus[i]);
    const double left_of_next = std::min(b.max_minus[r], b.min_minus[r]);
    out[i] = std::min(right_of_cell, left_of_next);
  }
}

/// Staged pipeline: gamma_terms -> flux_deviation -> lambda_bounds -> theta.
inline FluxSet apply_limiter(const LimiterInput& in) {
  const std::size_t n = in.u.size();
  FluxSet fs;
  fs.H.assign(in.H.begin(), in.H.end());
  fs.h.assign(in.h.begin(), in.h.end());
  std::vector<double> gmax(n), gmin(n), F(n);
  gamma_terms(in, gmax, gmin);
  flux_deviation(in.H, in.h, in.dx, F);
  const auto lb = lambda_bounds(gmax, gmin, F, in.bounds);
  fs.theta.resize(n);
  theta(lb, fs.theta);
  fs.Htilde.resize(n);
  for (std::size_t i = 0; i < n; ++i) fs.Htilde[i] = fs.theta[i] * (fs.H[i] - fs.h[i]) + fs.h[i];
  return fs;
}

/// Allocation-free variant used in the sweeps; same arithmetic as
/// apply_limiter. `F`, `lam_minus`, `lam_plus` are scratch of length n.
inline void limit_fluxes(const LimiterInput& in, std::span<double> Htilde, std::span<double> F,
                         std::span<double> lam_minus, std::span<double> lam_plus) {
  const int n = static_cast<int>(in.u.size());
  const double tol = in.bounds.tolerance();
  const bool use_max = detail::finite_bound(in.bounds.hi);
  const bool use_min = detail::finite_bound(in.bounds.lo);
  flux_deviation(in.H, in.h, in.dx, F);
  for (int i = 0; i < n; ++i) {
    const int l = wrap_index(i - 1, n);
    const double dh = (in.h[i] - in.h[l]) / in.dx;
    const double gmax = in.bounds.hi - in.u[i] + dh;
    const double gmin = in.bounds.lo - in.u[i] + dh;
    detail::check_monotone(use_max ? gmax : 0.0, use_min ? gmin : 0.0, i, tol);
    const auto L = detail::cell_lambdas(gmax, gmin, F[l], F[i], use_max, use_min);
    lam_minus[i] = std::min(L.max_minus, L.min_minus);
    lam_plus[i] = std::min(L.max_plus, L.min_plus);
  }
  for (int i = 0; i < n; ++i) {
    const double th = std::min(lam_plus[i], lam_minus[wrap_index(i + 1, n)]);
    Htilde[i] = th * (in.H[i] - in.h[i]) + in.h[i];
  }
}

}  // namespace slweno
