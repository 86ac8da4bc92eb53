#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levelseg/levelset.hpp"
#include "levelseg/models.hpp"

namespace levelseg {

enum class StopReason { kConverged, kMaxIters, kStalled };
std::string to_string(StopReason reason);

enum class TraceEvent { kStep, kReinit, kClamp };
std::string to_string(TraceEvent event);

struct TraceEntry {
  int iter = 0;
  double energy = 0.0;
  double inside_target = 0.0;   // c1 (Chan-Vese) or alpha M (modified)
  double outside_target = 0.0;  // c2
  TraceEvent event = TraceEvent::kStep;
};

struct SegmentationResult {
  ModelKind model = ModelKind::kChanVese;
  ScalarField phi_final;
  Mask mask;
  Contour contour;
  std::vector<TraceEntry> energy_trace;
  RegionStats stats_final;
  int iterations_run = 0;
  StopReason stop_reason = StopReason::kMaxIters;
  double dt_used = 0.0;
  bool dt_clamped = false;
};

/// Raised when phi stops being finite. Carries the run up to the last finite
/// iterate.
class EvolveError : public Error {
 public:
  EvolveError(const std::string& what, SegmentationResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const SegmentationResult& partial() const { return partial_; }

 private:
  SegmentationResult partial_;
};

/// Number of consecutive small relative energy changes that ends a run.
inline constexpr int kConvergenceWindow = 5;

/// Largest explicit step for the model, assuming intensities in [0, 1]:
///   region models: dt (4 mu / h^2 + max(lambda, 1) + |nu|) <= 0.9
///   geodesic:      dt <= 0.25 h^2
double stability_dt(const EvolveParams& params, ModelKind model,
                    double spacing = 1.0);

/// Explicit Euler gradient flow phi <- phi + dt * rhs from phi0.
///
/// Region statistics are refreshed before every step, phi is reinitialized
/// every `reinit_every` steps, and the energy is recorded after every step.
/// A run ends when the relative energy change stays below `stop_tol` for
/// kConvergenceWindow consecutive steps (converged), when the zero level set
/// has been absent for kConvergenceWindow consecutive steps (stalled), or at
/// `max_iters`. A user dt above `stability_dt` is clamped and the first trace
/// entry is tagged as a clamp event.
SegmentationResult evolve(ModelKind model, const ScalarField& u0,
                          const ScalarField& phi0, const EvolveParams& params);

/// Header `iter,energy,c1_or_alphaM,c2,event`; target columns are empty for
/// the geodesic model.
void write_trace_csv(std::ostream& out, const SegmentationResult& result);
std::string trace_csv(const SegmentationResult& result);

/// Fraction of non-reinit steps whose energy did not rise by more than
/// 1e-6 (|E| + 1) over the previous entry.
double descent_fraction(const std::vector<TraceEntry>& trace,
                        double slack_scale = 1e-6);

}  // namespace levelseg
