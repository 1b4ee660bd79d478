#pragma once

// CSV time series of DiagnosticsRecords. Relative columns are taken against
// the first record written; values print with 17 significant digits, so equal
// records give byte-identical files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slweno/diagnostics.hpp"

namespace slweno {

class SeriesWriter {
 public:
  /// `species_names` adds one l1_<name> column per species when two or more
  /// are present; `two_species` adds fluid_speed_diff.
  SeriesWriter(std::ostream& os, std::vector<std::string> species_names, bool two_species)
      : os_(os), names_(std::move(species_names)), two_species_(two_species) {}

  std::vector<std::string> columns() const {
    std::vector<std::string> c{"t",        "l1",           "l2",          "kinetic_energy",
                               "field_energy", "total_energy", "entropy", "e_l2",
                               "e_max"};
    for (int n = 1; n <= kLogFourierModes; ++n) c.push_back("log_fm" + std::to_string(n));
    for (const char* s : {"f_min", "f_max", "entropy_skipped", "rel_l1", "rel_l2", "rel_kinetic",
                          "rel_total_energy", "rel_entropy"})
      c.emplace_back(s);
    if (names_.size() > 1)
      for (const auto& n : names_) c.push_back("l1_" + n);
    if (two_species_) c.emplace_back("fluid_speed_diff");
    return c;
  }

  void write(const DiagnosticsRecord& r) {
    if (!first_) {
      first_ = r;
      const auto cols = columns();
      for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
      os_ << '\n';
    }
    const auto& r0 = *first_;
    std::vector<double> v{r.t, r.l1, r.l2, r.kinetic_energy, r.field_energy, r.total_energy,
                          r.entropy, r.e_l2, r.e_max};
    for (double m : r.log_fourier) v.push_back(m);
    v.push_back(r.f_min);
    v.push_back(r.f_max);
    v.push_back(static_cast<double>(r.entropy_skipped));
    v.push_back(rel(r.l1, r0.l1));
    v.push_back(rel(r.l2, r0.l2));
    v.push_back(rel(r.kinetic_energy, r0.kinetic_energy));
    v.push_back(rel(r.total_energy, r0.total_energy));
    v.push_back(rel(r.entropy, r0.entropy));
    if (names_.size() > 1)
      for (std::size_t s = 0; s < names_.size(); ++s)
        v.push_back(s < r.species_l1.size() ? r.species_l1[s] : std::nan(""));
    if (two_species_) v.push_back(r.fluid_speed_diff);
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      os_ << (i ? "," : "") << buf;
    }
    os_ << '\n';
    ++rows_;
  }

  std::size_t rows() const noexcept { return rows_; }

 private:
  // A zero reference leaves the relative deviation undefined; write NaN.
  static double rel(double q, double q0) {
    return q0 == 0.0 ? std::numeric_limits<double>::quiet_NaN() : relative_deviation(q, q0);
  }

  std::ostream& os_;
  std::vector<std::string> names_;
  bool two_species_;
  std::optional<DiagnosticsRecord> first_;
  std::size_t rows_ = 0;
};

/// Writes a whole record stream to `path`.
inline void emit_series(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                        const std::vector<std::string>& species_names, bool two_species) {
  if (records.empty()) throw std::invalid_argument("emit_series: no records");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open series file for writing: " + path);
  SeriesWriter w(os, species_names, two_species);
  for (const auto& r : records) w.write(r);
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace slweno
