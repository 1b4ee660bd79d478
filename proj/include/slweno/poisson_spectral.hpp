#pragma once

// Periodic 1D Poisson solve -phi'' = rho, E = -phi', by discrete Fourier
// transform. phi_hat_0 = 0; E_hat_k = -i rho_hat_k / k; the Nyquist mode of an
// even-length grid carries no derivative and is dropped.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "slweno/errors.hpp"
#include "slweno/phase_grid.hpp"

namespace slweno {

/// rho_i = dv * sum_j w_s f_s(i, j) - background, mean-subtracted.
struct ChargeDensity {
  std::vector<double> rho;
  double background = 1.0;
};

struct SpeciesDensity {
  const Distribution* f = nullptr;
  double weight = 1.0;  // sign of the species' contribution to rho
};

/// Midpoint-rule density of several species, minus a uniform background,
/// then shifted to zero mean.
inline ChargeDensity density_from_species(std::span<const SpeciesDensity> species,
                                          const PhaseGrid& grid, double background) {
  ChargeDensity cd;
  cd.background = background;
  cd.rho.assign(static_cast<std::size_t>(grid.nx()), 0.0);
  const double dv = grid.dv();
  for (int i = 0; i < grid.nx(); ++i) {
    double total = 0.0;
    for (const auto& s : species) {
      double acc = 0.0;
      for (int j = 0; j < grid.nv(); ++j) acc += (*s.f)(i, j);
      total += s.weight * dv * acc;
    }
    cd.rho[i] = total - background;
  }
  double mean = 0.0;
  for (double r : cd.rho) mean += r;
  mean /= grid.nx();
  for (double& r : cd.rho) r -= mean;
  return cd;
}

inline ChargeDensity density_from_f(const Distribution& f, const PhaseGrid& grid,
                                    double background) {
  const SpeciesDensity one{&f, 1.0};
  return density_from_species(std::span<const SpeciesDensity>(&one, 1), grid, background);
}

/// Reusable solver for one grid size. Holds a twiddle table and a spectrum
/// buffer, so one instance must not be shared between concurrent callers.
class SpectralPoisson {
 public:
  SpectralPoisson(int n, double length) : n_(n), length_(length), twiddle_(n), spec_(n) {
    if (n < 2) throw GridError("SpectralPoisson: need at least 2 points");
    for (int q = 0; q < n; ++q) {
      const double ang = 2.0 * std::numbers::pi * q / n;
      twiddle_[q] = {std::cos(ang), std::sin(ang)};
    }
  }

  int size() const noexcept { return n_; }

  /// Writes E into `E` and returns the largest imaginary residue of the
  /// inverse transform.
  double solve(std::span<const double> rho, std::span<double> E) {
    check_neutral(rho);
    const double two_pi_over_l = 2.0 * std::numbers::pi / length_;
    spec_[0] = 0.0;
    for (int m = 1; m < n_; ++m) {
      const int mm = m <= n_ / 2 ? m : m - n_;
      if (2 * m == n_) {
        spec_[m] = 0.0;
        continue;
      }
      if (m > n_ / 2) {
        spec_[m] = std::conj(spec_[n_ - m]);
        continue;
      }
      std::complex<double> acc = 0.0;
      for (int i = 0; i < n_; ++i) {
        const auto& w = twiddle_[static_cast<std::size_t>((static_cast<long long>(m) * i) % n_)];
        acc += rho[i] * std::conj(w);
      }
      const double k = two_pi_over_l * mm;
      spec_[m] = std::complex<double>(0.0, -1.0) * acc / k;
    }
    double imag_residue = 0.0;
    for (int i = 0; i < n_; ++i) {
      std::complex<double> acc = 0.0;
      for (int m = 1; m < n_; ++m)
        acc += spec_[m] * twiddle_[static_cast<std::size_t>((static_cast<long long>(m) * i) % n_)];
      E[i] = acc.real() / n_;
      imag_residue = std::max(imag_residue, std::abs(acc.imag() / n_));
    }
    return imag_residue;
  }

  static void check_neutral(std::span<const double> rho) {
    double mean = 0.0, scale = 1.0;
    for (double r : rho) {
      mean += r;
      scale = std::max(scale, std::abs(r));
    }
    mean /= static_cast<double>(rho.size());
    if (std::abs(mean) > 1e-10 * scale)
      throw NonNeutral("Poisson source has non-zero mean " + std::to_string(mean));
  }

 private:
  int n_;
  double length_;
  std::vector<std::complex<double>> twiddle_;
  std::vector<std::complex<double>> spec_;
};

inline std::vector<double> solve_efield(std::span<const double> rho, double length) {
  SpectralPoisson solver(static_cast<int>(rho.size()), length);
  std::vector<double> E(rho.size());
  solver.solve(rho, E);
  return E;
}

inline std::vector<double> solve_efield(const ChargeDensity& cd, double length) {
  return solve_efield(cd.rho, length);
}

}  // namespace slweno
