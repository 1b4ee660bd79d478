#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "slweno/diagnostics.hpp"

using namespace slweno;

namespace {

constexpr double pi = std::numbers::pi;

double maxwellian(double v, double u = 0.0, double vth = 1.0) {
  return std::exp(-0.5 * (v - u) * (v - u) / (vth * vth)) / (vth * std::sqrt(2 * pi));
}

}  // namespace

TEST(LpNorm, ZeroAndUnitDensity) {
  const auto g = make_phase_grid(2 * pi, pi, 16, 16);
  EXPECT_EQ(lp_norm(Distribution(16, 16, 0.0), g, 1), 0.0);
  EXPECT_NEAR(lp_norm(Distribution(16, 16, 1.0), g, 1), 4 * pi * pi, 1e-12);
  EXPECT_NEAR(lp_norm(Distribution(16, 16, 1.0), g, 2), 2 * pi, 1e-12);
  EXPECT_THROW(lp_norm(Distribution(16, 16, 1.0), g, 3), std::invalid_argument);
}

TEST(LpNorm, WeakLandauDataHasUnitDensity) {
  // The midpoint rule integrates the periodic cosine exactly; the Gaussian
  // tail beyond 2 pi is below 1e-8.
  const auto g = make_phase_grid(4 * pi, 2 * pi, 32, 64);
  const auto f = sample(g, [](double x, double v) { return (1 + 0.01 * std::cos(0.5 * x)) * maxwellian(v); });
  EXPECT_NEAR(lp_norm(f, g, 1), 4 * pi, 4 * pi * 1e-8);
  EXPECT_NEAR(mass(f, g), lp_norm(f, g, 1), 1e-14);
}

TEST(Energies, FieldAndKineticOracles) {
  const auto g = make_phase_grid(2 * pi, 8.0, 64, 128);
  std::vector<double> E(64);
  for (int i = 0; i < 64; ++i) E[i] = std::sin(g.gx.center(i));
  EXPECT_NEAR(field_energy(E, g), pi, 1e-13);
  const auto zero = energies(Distribution(64, 128), std::vector<double>(64, 0.0), g);
  EXPECT_EQ(zero.total, 0.0);
  const auto f = sample(g, [](double, double v) { return maxwellian(v); });
  const auto en = energies(f, E, g);
  EXPECT_NEAR(en.kinetic, 2 * pi, 1e-9);
  EXPECT_NEAR(en.total, en.kinetic + en.field, 1e-14);
  EXPECT_NEAR(kinetic_energy(f, g, 1000.0), 1000.0 * en.kinetic, 1e-9);
}

TEST(Entropy, ConstantsAndNegativeCells) {
  const auto g = make_phase_grid(1.0, 1.0, 8, 8);  // measure 2
  EXPECT_EQ(entropy(Distribution(8, 8, 1.0), g).value, 0.0);
  EXPECT_NEAR(entropy(Distribution(8, 8, std::exp(1.0)), g).value, 2 * std::exp(1.0), 1e-13);
  Distribution f(8, 8, 1.0);
  f(3, 3) = -1e-6;
  f(4, 4) = 0.0;
  const auto r = entropy(f, g);
  EXPECT_EQ(r.skipped, 1);
  EXPECT_EQ(r.value, 0.0);
}

TEST(LogFourierMode, SingleModeAndFloor) {
  const auto g = make_phase_grid(2 * pi / 0.26, 8.0, 200, 16);
  const double k = 0.26;
  std::vector<double> E(200);
  for (int i = 0; i < 200; ++i) E[i] = std::sin(k * g.gx.center(i));
  EXPECT_NEAR(log_fourier_mode(E, g.gx, 1), std::log10(0.5), 1e-13);
  EXPECT_EQ(log_fourier_mode(E, g.gx, 2), kLogFourierFloor);
  EXPECT_EQ(log_fourier_mode(std::vector<double>(200, 0.0), g.gx, 1), kLogFourierFloor);
  EXPECT_THROW(log_fourier_mode(E, g.gx, 0), std::invalid_argument);
}

TEST(FluidSpeed, IdenticalSpeciesGiveZero) {
  const auto g = make_phase_grid(10.0, 8.0, 16, 64);
  const auto f = sample(g, [](double x, double v) { return (1 + 0.1 * std::sin(x)) * maxwellian(v, 0.3); });
  EXPECT_NEAR(fluid_speed_difference(f, f, g).value, 0.0, 1e-15);
}

TEST(FluidSpeed, DriftingElectronsAgainstIonsAtRest) {
  const auto g = make_phase_grid(2 * pi / 0.05, 8.0, 64, 256);
  const auto fi = sample(g, [](double, double v) { return maxwellian(v, 0.0, 1.0 / std::sqrt(1000.0)); });
  const auto fe = sample(g, [](double, double v) { return maxwellian(v, -2.0); });
  EXPECT_NEAR(fluid_speed_difference(fi, fe, g).value, 2.0, 1e-8);
}

TEST(FluidSpeed, MatchesDirectDoubleLoop) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  const auto g = make_phase_grid(3.0, 2.0, 12, 10);
  Distribution a(12, 10), b(12, 10);
  for (auto& x : a.values()) x = U(rng);
  for (auto& x : b.values()) x = U(rng);
  double acc = 0.0;
  for (int i = 0; i < 12; ++i) {
    double na = 0, pa = 0, nb = 0, pb = 0;
    for (int j = 0; j < 10; ++j) {
      const double v = -2.0 + (j + 0.5) * 0.4;
      na += a(i, j);
      pa += v * a(i, j);
      nb += b(i, j);
      pb += v * b(i, j);
    }
    acc += pa / na - pb / nb;
  }
  EXPECT_NEAR(fluid_speed_difference(a, b, g).value, std::abs(acc / 12), 1e-13);
}

TEST(FluidSpeed, DegenerateCellsExcludedOrRejected) {
  const auto g = make_phase_grid(1.0, 1.0, 8, 8);
  Distribution a(8, 8, 1.0), b(8, 8, 1.0);
  for (int j = 0; j < 8; ++j) b(2, j) = 0.0;
  EXPECT_EQ(fluid_speed_difference(a, b, g).excluded, 1);
  EXPECT_THROW(fluid_speed_difference(a, Distribution(8, 8, 0.0), g), DegenerateDensity);
}

TEST(Record, TwoSpeciesFieldsAndRelativeDeviation) {
  const auto g = make_phase_grid(1.0, 1.0, 8, 8);
  Distribution a(8, 8, 1.0), b(8, 8, 2.0);
  const SpeciesView sp[2] = {{&a, 10.0}, {&b, 1.0}};
  const std::vector<double> E(8, 0.0);
  const auto r = compute_record(0.5, g, sp, E, true);
  EXPECT_EQ(r.species_l1.size(), 2u);
  EXPECT_NEAR(r.l1, 6.0, 1e-14);
  EXPECT_EQ(r.f_min, 1.0);
  EXPECT_EQ(r.f_max, 2.0);
  EXPECT_NEAR(r.fluid_speed_diff, 0.0, 1e-15);
  const auto one = compute_record(0.5, g, std::span<const SpeciesView>(sp, 1), E, false);
  EXPECT_TRUE(std::isnan(one.fluid_speed_diff));
  EXPECT_NEAR(relative_deviation(1.1, 1.0), 0.1, 1e-15);
  EXPECT_NEAR(relative_deviation(-1.1, -1.0), -0.1, 1e-15);
  EXPECT_THROW(relative_deviation(1.0, 0.0), std::domain_error);
}

TEST(FitLogPeaks, RecoversEnvelopeRateOfDampedOscillation) {
  std::vector<double> t, y;
  for (int k = 0; k <= 4000; ++k) {
    t.push_back(0.01 * k);
    y.push_back(std::exp(-0.3 * t.back()) * std::abs(std::cos(1.4 * t.back())));
  }
  const auto fit = fit_log_peaks(t, y, 0.5, 40.0);
  EXPECT_GT(fit.peaks, 10);
  EXPECT_NEAR(fit.slope, -0.3, 1e-4);
  EXPECT_EQ(fit_log_peaks(t, y, 100.0, 200.0).peaks, 0);
  EXPECT_TRUE(std::isnan(fit_log_peaks(t, y, 100.0, 200.0).slope));
}
