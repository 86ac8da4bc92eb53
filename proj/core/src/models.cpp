#include "levelseg/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levelseg/stencil.hpp"

namespace levelseg {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGeodesic: return "geodesic";
    case ModelKind::kChanVese: return "chan-vese";
    case ModelKind::kModified: return "modified";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "geodesic") return ModelKind::kGeodesic;
  if (name == "chan-vese" || name == "chan_vese") return ModelKind::kChanVese;
  if (name == "modified") return ModelKind::kModified;
  throw Error("unknown model '" + name + "'");
}

std::vector<std::string> EvolveParams::violations() const {
  std::vector<std::string> out;
  auto check = [&out](bool ok, const char* msg) {
    if (!ok) out.emplace_back(msg);
  };
  check(std::isfinite(mu) && mu >= 0.0, "mu must be finite and >= 0");
  check(std::isfinite(nu), "nu must be finite");
  check(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
  check(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  check(std::isfinite(eps) && eps > 0.0, "eps must be > 0");
  check(std::isfinite(dt), "dt must be finite (<= 0 selects the stable step)");
  check(max_iters >= 0, "max_iters must be >= 0");
  check(stop_tol >= 0.0, "stop_tol must be >= 0");
  check(reinit_every >= 0, "reinit_every must be >= 0 (0 disables)");
  check(reinit_sweeps >= 0, "reinit_sweeps must be >= 0");
  return out;
}

void EvolveParams::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::ostringstream ss;
  ss << "invalid parameters:";
  for (const auto& m : v) ss << "\n  - " << m;
  throw Error(ss.str());
}

RegionStats region_averages(const ScalarField& u0, const ScalarField& phi) {
  require_same_shape(u0, phi, "region_averages");
  RegionStats s;
  double sum_in = 0.0;
  double sum_out = 0.0;
  s.max_intensity = u0[0];
  s.min_intensity = u0[0];
  for (std::size_t i = 0; i < u0.size(); ++i) {
    const double v = u0[i];
    if (phi[i] >= 0.0) {
      sum_in += v;
      ++s.n_inside;
    } else {
      sum_out += v;
      ++s.n_outside;
    }
    s.max_intensity = std::max(s.max_intensity, v);
    s.min_intensity = std::min(s.min_intensity, v);
  }
  const double global = (sum_in + sum_out) / static_cast<double>(u0.size());
  s.inside_empty = s.n_inside == 0;
  s.outside_empty = s.n_outside == 0;
  s.c1 = s.inside_empty ? global : sum_in / static_cast<double>(s.n_inside);
  s.c2 = s.outside_empty ? global : sum_out / static_cast<double>(s.n_outside);
  return s;
}

EdgeMap make_edge_map(const ScalarField& u0) {
  u0.require_finite("make_edge_map");
  const ScalarField smooth = gaussian_smooth(u0);
  ScalarField g = gradient_magnitude(smooth);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = edge_detector(g[i]);
  EdgeMap edges{g, gradient(g)};
  return edges;
}

ScalarField geodesic_rhs(const EdgeMap& edges, const ScalarField& phi) {
  require_same_shape(edges.g, phi, "geodesic_rhs");
  const ScalarField kappa = curvature(phi);
  const VectorField grad = gradient(phi);
  ScalarField out(phi.width(), phi.height(), 0.0, phi.spacing());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double norm = std::hypot(grad.dx[i], grad.dy[i]);
    out[i] = edges.g[i] * kappa[i] * norm + edges.grad_g.dx[i] * grad.dx[i] +
             edges.grad_g.dy[i] * grad.dy[i];
  }
  return out;
}

ScalarField geodesic_rhs(const ScalarField& u0, const ScalarField& phi,
                         const EvolveParams& /*params*/) {
  require_same_shape(u0, phi, "geodesic_rhs");
  return geodesic_rhs(make_edge_map(u0), phi);
}

ScalarField region_rhs(const ScalarField& u0, const ScalarField& phi,
                       double inside_target, double outside_target,
                       double inside_weight, const EvolveParams& params) {
  require_same_shape(u0, phi, "region_rhs");
  const ScalarField kappa = curvature(phi);
  ScalarField out(phi.width(), phi.height(), 0.0, phi.spacing());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double din = u0[i] - inside_target;
    const double dout = u0[i] - outside_target;
    const double force = params.mu * kappa[i] - params.nu -
                         inside_weight * din * din + dout * dout;
    out[i] = delta_eps(phi[i], params.eps) * force;
  }
  return out;
}

ScalarField chan_vese_rhs(const ScalarField& u0, const ScalarField& phi,
                          const RegionStats& stats,
                          const EvolveParams& params) {
  return region_rhs(u0, phi, stats.c1, stats.c2, params.lambda, params);
}

ScalarField modified_rhs(const ScalarField& u0, const ScalarField& phi,
                         const RegionStats& stats, const EvolveParams& params) {
  return region_rhs(u0, phi, params.alpha * stats.max_intensity, stats.c2, 1.0,
                    params);
}

double region_energy(const ScalarField& u0, const ScalarField& phi,
                     double inside_target, double outside_target,
                     double inside_weight, const EvolveParams& params) {
  require_same_shape(u0, phi, "region_energy");
  const VectorField grad = gradient(phi);
  const double cell = phi.spacing() * phi.spacing();
  double total = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) {
    const double heav = heaviside_eps(phi[i], params.eps);
    const double din = u0[i] - inside_target;
    const double dout = u0[i] - outside_target;
    const double length =
        delta_eps(phi[i], params.eps) * std::hypot(grad.dx[i], grad.dy[i]);
    total += inside_weight * din * din * heav + dout * dout * (1.0 - heav) +
             params.mu * length + params.nu * heav;
  }
  return total * cell;
}

double energy_chan_vese(const ScalarField& u0, const ScalarField& phi,
                        const RegionStats& stats, const EvolveParams& params) {
  return region_energy(u0, phi, stats.c1, stats.c2, params.lambda, params);
}

double energy_modified(const ScalarField& u0, const ScalarField& phi,
                       const RegionStats& stats, const EvolveParams& params) {
  return region_energy(u0, phi, params.alpha * stats.max_intensity, stats.c2,
                       1.0, params);
}

double energy_geodesic(const EdgeMap& edges, const ScalarField& phi,
                       const EvolveParams& params) {
  require_same_shape(edges.g, phi, "energy_geodesic");
  const VectorField grad = gradient(phi);
  double total = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    total += edges.g[i] * delta_eps(phi[i], params.eps) *
             std::hypot(grad.dx[i], grad.dy[i]);
  }
  return total * phi.spacing() * phi.spacing();
}

double inside_target(ModelKind kind, const RegionStats& stats,
                     const EvolveParams& params) {
  switch (kind) {
    case ModelKind::kChanVese: return stats.c1;
    case ModelKind::kModified: return params.alpha * stats.max_intensity;
    case ModelKind::kGeodesic: break;
  }
  throw Error("inside_target: geodesic model has no region targets");
}

}  // namespace levelseg
