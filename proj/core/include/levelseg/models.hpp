#pragma once

#include <string>
#include <vector>

#include "levelseg/scalar_field.hpp"

namespace levelseg {

enum class ModelKind { kGeodesic, kChanVese, kModified };

std::string to_string(ModelKind kind);
/// Accepts "geodesic", "chan-vese"/"chan_vese" and "modified".
ModelKind parse_model_kind(const std::string& name);

/// Gray-level range that region weights are quoted in.
inline constexpr double kGrayLevels = 255.0;

/// Converts a length or area weight quoted against 8-bit gray levels into the
/// units of images normalized to [0, 1].
constexpr double gray_level_weight(double weight) {
  return weight / (kGrayLevels * kGrayLevels);
}

/// Model and stepping parameters. `mu` and `nu` are in normalized-intensity
/// units; use `gray_level_weight` to convert 8-bit values.
struct EvolveParams {
  double mu = gray_level_weight(5.0);
  double nu = 0.0;
  double lambda = 1.0;
  double alpha = 0.7;
  double eps = 1.0;
  double dt = 0.0;  // <= 0 selects stability_dt
  int max_iters = 2000;
  double stop_tol = 1e-5;
  int reinit_every = 25;
  int reinit_sweeps = 10;

  /// Every violated invariant, one message each. Empty when valid.
  std::vector<std::string> violations() const;
  /// Throws `Error` listing all violations.
  void validate() const;
};

struct RegionStats {
  double c1 = 0.0;  // mean of u0 where phi >= 0
  double c2 = 0.0;  // mean of u0 where phi < 0
  std::size_t n_inside = 0;
  std::size_t n_outside = 0;
  bool inside_empty = false;   // c1 fell back to the global mean
  bool outside_empty = false;  // c2 fell back to the global mean
  double max_intensity = 0.0;  // M
  double min_intensity = 0.0;
};

RegionStats region_averages(const ScalarField& u0, const ScalarField& phi);

/// Edge indicator and its gradient for the geodesic model, computed once per
/// image: g = 1/(1 + |grad (G * u0)|^2) with G the 5x5 sigma = 1 Gaussian.
struct EdgeMap {
  ScalarField g;
  VectorField grad_g;
};

EdgeMap make_edge_map(const ScalarField& u0);

/// g kappa |grad phi| + <grad g, grad phi>.
ScalarField geodesic_rhs(const EdgeMap& edges, const ScalarField& phi);
ScalarField geodesic_rhs(const ScalarField& u0, const ScalarField& phi,
                         const EvolveParams& params);

/// delta_eps(phi) (mu kappa - nu - w (u0 - a)^2 + (u0 - b)^2), the shared
/// kernel of both region models with inside target `a`, outside target `b`
/// and inside weight `w`.
ScalarField region_rhs(const ScalarField& u0, const ScalarField& phi,
                       double inside_target, double outside_target,
                       double inside_weight, const EvolveParams& params);

/// Region kernel with a = c1, b = c2 and w = lambda.
ScalarField chan_vese_rhs(const ScalarField& u0, const ScalarField& phi,
                          const RegionStats& stats, const EvolveParams& params);

/// Region kernel with a = alpha M, b = c2 and w = 1.
ScalarField modified_rhs(const ScalarField& u0, const ScalarField& phi,
                         const RegionStats& stats, const EvolveParams& params);

/// Discrete region energy
///   h^2 sum [w (u0-a)^2 H + (u0-b)^2 (1-H) + mu delta |grad phi| + nu H]
/// with H, delta the eps-regularized pair.
double region_energy(const ScalarField& u0, const ScalarField& phi,
                     double inside_target, double outside_target,
                     double inside_weight, const EvolveParams& params);

double energy_chan_vese(const ScalarField& u0, const ScalarField& phi,
                        const RegionStats& stats, const EvolveParams& params);
double energy_modified(const ScalarField& u0, const ScalarField& phi,
                       const RegionStats& stats, const EvolveParams& params);

/// Weighted length h^2 sum g delta_eps(phi) |grad phi|.
double energy_geodesic(const EdgeMap& edges, const ScalarField& phi,
                       const EvolveParams& params);

/// Inside target used by a region model: c1 for Chan-Vese, alpha M for the
/// modified model.
double inside_target(ModelKind kind, const RegionStats& stats,
                     const EvolveParams& params);

}  // namespace levelseg
