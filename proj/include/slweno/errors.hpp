#pragma once

#include <stdexcept>
#include <string>

namespace slweno {

/// Invalid construction arguments (grid extents, counts, config values).
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The first-order monotone flux failed its own max/min principle check.
/// This points at a broken monotone flux, never at the limiter itself.
class MonotoneViolation : public std::runtime_error {
 public:
  MonotoneViolation(const std::string& what, int cell, double gamma)
      : std::runtime_error(what), cell_(cell), gamma_(gamma) {}
  int cell() const noexcept { return cell_; }
  double gamma() const noexcept { return gamma_; }

 private:
  int cell_;
  double gamma_;
};

/// Poisson source with a non-zero mean (no periodic solution exists).
class NonNeutral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every cell of a species has (numerically) vanishing density.
class DegenerateDensity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run produced NaN/Inf.
class NonFiniteState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slweno
