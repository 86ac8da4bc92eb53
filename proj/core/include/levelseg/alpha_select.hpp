#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levelseg/solver.hpp"

namespace levelseg {

struct SweepOptions {
  /// Neighbouring c_out values within plateau_tol * (max u0 - min u0) are
  /// treated as the same plateau.
  double plateau_tol = 0.02;
  /// Worker count for the independent per-alpha runs; 0 = thread_limit().
  unsigned threads = 1;
  /// Keep the full per-alpha SegmentationResult in the report.
  bool keep_runs = true;
};

struct AlphaSweepEntry {
  double alpha = 0.0;
  double c_out = 0.0;  // mean of u0 where the final phi < 0
  std::size_t inside_area = 0;
  double energy_final = 0.0;
  bool degenerate = false;  // the run ended with an empty inside region
  bool in_plateau = false;
};

struct AlphaSweepReport {
  std::vector<AlphaSweepEntry> entries;  // sorted by alpha
  double chosen_alpha = 0.0;
  double plateau_lo = 0.0;
  double plateau_hi = 0.0;
  bool chosen_interpolated = false;  // midpoint is not one of the swept alphas
  std::vector<SegmentationResult> runs;  // parallel to entries when kept
};

/// Runs the modified model once per alpha from the same phi0 and picks alpha
/// from the longest run of neighbours with stable outside mean.
///
/// The plateau is the longest maximal run of consecutive non-degenerate
/// entries whose neighbouring c_out differ by less than the tolerance or are
/// equal up to round-off; ties go to the run with smaller alphas. The chosen
/// alpha is the plateau midpoint.
/// Throws if alphas are not strictly increasing in (0, 1], if fewer than three
/// are given, or if every run emptied its inside region.
AlphaSweepReport sweep_alpha(const ScalarField& u0, const ScalarField& phi0,
                             const EvolveParams& params,
                             const std::vector<double>& alphas,
                             const SweepOptions& options = {});

/// Plateau detection on already computed entries; fills in_plateau and the
/// chosen alpha fields of `report`.
void select_plateau(AlphaSweepReport& report, double tolerance);

/// CSV `alpha,c_out,inside_area,energy_final,in_plateau`.
void write_sweep_csv(std::ostream& out, const AlphaSweepReport& report);
std::string sweep_csv(const AlphaSweepReport& report);

/// One-line JSON {"chosen_alpha":..,"plateau_lo":..,"plateau_hi":..}.
std::string sweep_summary_json(const AlphaSweepReport& report);

}  // namespace levelseg
