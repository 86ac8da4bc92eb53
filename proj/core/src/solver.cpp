#include "levelseg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "levelseg/stencil.hpp"

namespace levelseg {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged: return "converged";
    case StopReason::kMaxIters: return "max_iters";
    case StopReason::kStalled: return "stalled";
  }
  return "unknown";
}

std::string to_string(TraceEvent event) {
  switch (event) {
    case TraceEvent::kStep: return "step";
    case TraceEvent::kReinit: return "reinit";
    case TraceEvent::kClamp: return "clamp";
  }
  return "unknown";
}

double stability_dt(const EvolveParams& params, ModelKind model,
                    double spacing) {
  const double h2 = spacing * spacing;
  if (model == ModelKind::kGeodesic) return 0.25 * h2;
  const double data = (model == ModelKind::kChanVese
                           ? std::max(params.lambda, 1.0)
                           : 1.0) +
                      std::abs(params.nu);
  return 0.9 / (4.0 * params.mu / h2 + data);
}

namespace {

struct Snapshot {
  RegionStats stats;
  double energy = 0.0;
  double inside = 0.0;
  double outside = 0.0;
};

bool has_zero_crossing(const ScalarField& phi) {
  bool pos = false;
  bool neg = false;
  for (double v : phi.values()) {
    (v >= 0.0 ? pos : neg) = true;
    if (pos && neg) return true;
  }
  return false;
}

}  // namespace

SegmentationResult evolve(ModelKind model, const ScalarField& u0,
                          const ScalarField& phi0, const EvolveParams& params) {
  params.validate();
  require_same_shape(u0, phi0, "evolve");
  u0.require_finite("evolve (image)");
  phi0.require_finite("evolve (initial phi)");

  SegmentationResult result;
  result.model = model;
  const double bound = stability_dt(params, model, phi0.spacing());
  result.dt_used = params.dt > 0.0 ? std::min(params.dt, bound) : bound;
  result.dt_clamped = params.dt > bound;
  const double dt = result.dt_used;

  const bool geodesic = model == ModelKind::kGeodesic;
  EdgeMap edges;
  if (geodesic) edges = make_edge_map(u0);

  auto snapshot = [&](const ScalarField& phi) {
    Snapshot s;
    s.stats = region_averages(u0, phi);
    if (geodesic) {
      s.energy = energy_geodesic(edges, phi, params);
    } else {
      s.inside = inside_target(model, s.stats, params);
      s.outside = s.stats.c2;
      const double w = model == ModelKind::kChanVese ? params.lambda : 1.0;
      s.energy = region_energy(u0, phi, s.inside, s.outside, w, params);
    }
    return s;
  };
  auto record = [&](int iter, const Snapshot& s, TraceEvent ev) {
    result.energy_trace.push_back({iter, s.energy, s.inside, s.outside, ev});
  };

  ScalarField phi = phi0;
  Snapshot current = snapshot(phi);
  record(0, current,
         result.dt_clamped ? TraceEvent::kClamp : TraceEvent::kStep);

  auto finish = [&](StopReason reason, int iters) {
    result.phi_final = phi;
    result.mask = mask_inside(phi);
    result.contour = extract_contour(phi);
    result.stats_final = current.stats;
    result.iterations_run = iters;
    result.stop_reason = reason;
    return result;
  };

  int quiet = 0;
  int vanished = 0;
  for (int it = 1; it <= params.max_iters; ++it) {
    const ScalarField rhs =
        geodesic ? geodesic_rhs(edges, phi)
                 : region_rhs(u0, phi, current.inside, current.outside,
                              model == ModelKind::kChanVese ? params.lambda
                                                            : 1.0,
                              params);
    ScalarField next = phi;
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += dt * rhs[i];
    if (!next.all_finite()) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "evolve: phi became non-finite at iteration %d (dt=%g)", it,
                    dt);
      finish(StopReason::kMaxIters, it - 1);
      throw EvolveError(buf, result);
    }
    phi = std::move(next);

    TraceEvent event = TraceEvent::kStep;
    if (params.reinit_every > 0 && it % params.reinit_every == 0) {
      phi = reinitialize(phi, params.reinit_sweeps);
      event = TraceEvent::kReinit;
    }

    const double previous = current.energy;
    current = snapshot(phi);
    record(it, current, event);

    const double change =
        std::abs(current.energy - previous) / (std::abs(previous) + 1e-12);
    quiet = change < params.stop_tol ? quiet + 1 : 0;
    vanished = has_zero_crossing(phi) ? 0 : vanished + 1;
    if (quiet >= kConvergenceWindow) return finish(StopReason::kConverged, it);
    if (vanished >= kConvergenceWindow) return finish(StopReason::kStalled, it);
  }
  return finish(StopReason::kMaxIters, params.max_iters);
}

void write_trace_csv(std::ostream& out, const SegmentationResult& result) {
  out << "iter,energy,c1_or_alphaM,c2,event\n";
  const bool geodesic = result.model == ModelKind::kGeodesic;
  char buf[160];
  for (const auto& e : result.energy_trace) {
    if (geodesic) {
      std::snprintf(buf, sizeof buf, "%d,%.10e,,,%s\n", e.iter, e.energy,
                    to_string(e.event).c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%d,%.10e,%.10f,%.10f,%s\n", e.iter,
                    e.energy, e.inside_target, e.outside_target,
                    to_string(e.event).c_str());
    }
    out << buf;
  }
}

std::string trace_csv(const SegmentationResult& result) {
  std::ostringstream ss;
  write_trace_csv(ss, result);
  return ss.str();
}

double descent_fraction(const std::vector<TraceEntry>& trace,
                        double slack_scale) {
  int steps = 0;
  int descending = 0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k].event == TraceEvent::kReinit) continue;
    ++steps;
    const double prev = trace[k - 1].energy;
    if (trace[k].energy <= prev + slack_scale * (std::abs(prev) + 1.0)) {
      ++descending;
    }
  }
  return steps == 0 ? 1.0 : static_cast<double>(descending) / steps;
}

}  // namespace levelseg
