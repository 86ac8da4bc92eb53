#include "levelseg/alpha_select.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "levelseg/parallel.hpp"

namespace levelseg {

AlphaSweepReport sweep_alpha(const ScalarField& u0, const ScalarField& phi0,
                             const EvolveParams& params,
                             const std::vector<double>& alphas,
                             const SweepOptions& options) {
  if (alphas.size() < 3) throw Error("sweep_alpha: need at least 3 alphas");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0 && alphas[k] <= 1.0)) {
      throw Error("sweep_alpha: every alpha must lie in (0, 1]");
    }
    if (k > 0 && !(alphas[k] > alphas[k - 1])) {
      throw Error("sweep_alpha: alphas must be strictly increasing");
    }
  }
  if (!(options.plateau_tol > 0.0)) {
    throw Error("sweep_alpha: plateau_tol must be positive");
  }

  std::vector<SegmentationResult> runs(alphas.size());
  parallel_for(
      alphas.size(),
      [&](std::size_t k) {
        EvolveParams p = params;
        p.alpha = alphas[k];
        runs[k] = evolve(ModelKind::kModified, u0, phi0, p);
      },
      options.threads);

  AlphaSweepReport report;
  bool all_degenerate = true;
  std::ostringstream diag;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const auto& r = runs[k];
    AlphaSweepEntry e;
    e.alpha = alphas[k];
    e.c_out = r.stats_final.c2;
    e.inside_area = r.stats_final.n_inside;
    e.energy_final = r.energy_trace.back().energy;
    e.degenerate = r.stats_final.inside_empty;
    all_degenerate = all_degenerate && e.degenerate;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "\n  alpha=%.4f inside_area=%zu stop=%s iterations=%d",
                  e.alpha, e.inside_area, to_string(r.stop_reason).c_str(),
                  r.iterations_run);
    diag << buf;
    report.entries.push_back(e);
  }
  if (all_degenerate) {
    throw Error("sweep_alpha: every run emptied its inside region:" +
                diag.str());
  }

  const double range = u0.max() - u0.min();
  select_plateau(report, options.plateau_tol * range);
  if (options.keep_runs) report.runs = std::move(runs);
  return report;
}

void select_plateau(AlphaSweepReport& report, double tolerance) {
  auto& e = report.entries;
  std::size_t best_lo = 0;
  std::size_t best_len = 0;
  std::size_t k = 0;
  while (k < e.size()) {
    if (e[k].degenerate) {
      ++k;
      continue;
    }
    std::size_t end = k;
    auto stable = [&](std::size_t i) {
      const double d = std::abs(e[i + 1].c_out - e[i].c_out);
      // Round-off between identical outside regions still counts as stable.
      const double floor = 1e-12 * std::max(1.0, std::abs(e[i].c_out));
      return d < tolerance || d <= floor;
    };
    while (end + 1 < e.size() && !e[end + 1].degenerate && stable(end)) {
      ++end;
    }
    const std::size_t len = end - k + 1;
    if (len > best_len) {  // strict: earlier (smaller alpha) runs win ties
      best_len = len;
      best_lo = k;
    }
    k = end + 1;
  }
  if (best_len == 0) throw Error("select_plateau: no non-degenerate entries");

  for (auto& entry : e) entry.in_plateau = false;
  for (std::size_t i = best_lo; i < best_lo + best_len; ++i) {
    e[i].in_plateau = true;
  }
  report.plateau_lo = e[best_lo].alpha;
  report.plateau_hi = e[best_lo + best_len - 1].alpha;
  report.chosen_alpha = 0.5 * (report.plateau_lo + report.plateau_hi);
  report.chosen_interpolated = true;
  for (std::size_t i = best_lo; i < best_lo + best_len; ++i) {
    if (std::abs(e[i].alpha - report.chosen_alpha) < 1e-12) {
      report.chosen_alpha = e[i].alpha;
      report.chosen_interpolated = false;
    }
  }
}

void write_sweep_csv(std::ostream& out, const AlphaSweepReport& report) {
  out << "alpha,c_out,inside_area,energy_final,in_plateau\n";
  char buf[160];
  for (const auto& e : report.entries) {
    std::snprintf(buf, sizeof buf, "%.6f,%.10f,%zu,%.10e,%d\n", e.alpha,
                  e.c_out, e.inside_area, e.energy_final, e.in_plateau ? 1 : 0);
    out << buf;
  }
}

std::string sweep_csv(const AlphaSweepReport& report) {
  std::ostringstream ss;
  write_sweep_csv(ss, report);
  return ss.str();
}

std::string sweep_summary_json(const AlphaSweepReport& report) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "{\"chosen_alpha\":%.6f,\"plateau_lo\":%.6f,\"plateau_hi\":%.6f}",
                report.chosen_alpha, report.plateau_lo, report.plateau_hi);
  return buf;
}

}  // namespace levelseg
