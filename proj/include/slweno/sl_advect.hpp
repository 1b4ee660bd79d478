#pragma once

// One conservative semi-Lagrangian step of a periodic line:
//   u^{n+1}_i = u^n_i - (Htilde_{i+1/2} - Htilde_{i-1/2}) / dx.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "slweno/mpp_limiter.hpp"
#include "slweno/sl_weno.hpp"

namespace slweno {

struct AdvectOptions {
  bool limiter = true;
  WenoOptions weno;
};

/// Scratch buffers for one worker. Resized on demand, never shared.
struct LineWorkspace {
  std::vector<double> h, H, Htilde, g, F, lam_minus, lam_plus, line;

  void resize(std::size_t n) {
    if (h.size() == n) return;
    for (auto* v : {&h, &H, &Htilde, &g, &F, &lam_minus, &lam_plus, &line}) v->assign(n, 0.0);
  }
};

/// Advances line.u by line.dt into `out` (which may not alias line.u).
inline void advect_line(const LineField& line, const Bounds& bounds, const AdvectOptions& opt,
                        std::span<double> out, LineWorkspace& ws) {
  const std::size_t n = line.u.size();
  if (line.a == 0.0 || line.dt == 0.0) {
    std::copy(line.u.begin(), line.u.end(), out.begin());
    return;
  }
  ws.resize(n);
  flux_weno5(line, opt.weno, ws.H, ws.g);
  std::span<const double> flux = ws.H;
  if (opt.limiter) {
    flux_first_order(line, ws.h);
    limit_fluxes(LimiterInput{line.u, ws.H, ws.h, line.dx, bounds}, ws.Htilde, ws.F, ws.lam_minus,
                 ws.lam_plus);
    flux = ws.Htilde;
  }
  out[0] = line.u[0] - (flux[0] - flux[n - 1]) / line.dx;
  for (std::size_t i = 1; i < n; ++i) out[i] = line.u[i] - (flux[i] - flux[i - 1]) / line.dx;
}

inline std::vector<double> advect_line(const LineField& line, const Bounds& bounds,
                                       const AdvectOptions& opt) {
  std::vector<double> out(line.u.size());
  LineWorkspace ws;
  advect_line(line, bounds, opt, out, ws);
  return out;
}

/// In-place variant: advances u using the workspace's line buffer.
inline void advect_line_inplace(std::span<double> u, double a, double dt, double dx,
                                const Bounds& bounds, const AdvectOptions& opt,
                                LineWorkspace& ws) {
  if (a == 0.0 || dt == 0.0) return;
  ws.resize(u.size());
  std::copy(u.begin(), u.end(), ws.line.begin());
  advect_line(LineField{ws.line, a, dt, dx}, bounds, opt, u, ws);
}

}  // namespace slweno
