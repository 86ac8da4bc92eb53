#pragma once

#include <cmath>
#include <numbers>

#include "levelseg/scalar_field.hpp"

namespace levelseg {

/// Guard added under the curvature denominator so flat regions stay finite.
inline constexpr double kCurvatureEta = 1e-8;

/// Central differences inside, one-sided differences on the border rows and
/// columns, both divided by the grid spacing.
VectorField gradient(const ScalarField& f);

/// Per-pixel |grad f| using `gradient`.
ScalarField gradient_magnitude(const ScalarField& f);

/// Edge indicator g(z) = 1 / (1 + z^2). Equals 1 at z = 0 and decays to 0.
inline double edge_detector(double z) { return 1.0 / (1.0 + z * z); }

/// Mean curvature div(grad phi / |grad phi|) of the level sets of `phi`.
///
/// Uses the nine-point second-order stencil
///   (phi_xx phi_y^2 - 2 phi_x phi_y phi_xy + phi_yy phi_x^2)
///     / (phi_x^2 + phi_y^2 + eta)^(3/2)
/// with mirrored ghost values at the border (zero normal derivative), and
/// clamps the result to +-1/spacing.
ScalarField curvature(const ScalarField& phi, double eta = kCurvatureEta);

/// Curvature at a single pixel; same stencil and clamp as `curvature`.
double curvature_at(const ScalarField& phi, int x, int y,
                    double eta = kCurvatureEta);

/// Smoothed Heaviside 1/2 (1 + (2/pi) atan(z/eps)).
inline double heaviside_eps(double z, double eps) {
  return 0.5 * (1.0 + (2.0 / std::numbers::pi) * std::atan(z / eps));
}

/// Derivative of `heaviside_eps`: (1/pi) eps / (eps^2 + z^2).
inline double delta_eps(double z, double eps) {
  return (eps / std::numbers::pi) / (eps * eps + z * z);
}

/// Separable Gaussian blur with a (2*radius+1)-tap normalized kernel and
/// mirrored borders. The defaults give the 5x5, sigma = 1 kernel.
ScalarField gaussian_smooth(const ScalarField& f, double sigma = 1.0,
                            int radius = 2);

}  // namespace levelseg
