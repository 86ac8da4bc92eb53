#include "levelseg/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace levelseg {

VectorField gradient(const ScalarField& f) {
  const int w = f.width();
  const int h = f.height();
  if (w < 3 || h < 3) throw Error("gradient: field must be at least 3x3");
  const double inv = 1.0 / f.spacing();

  VectorField g;
  g.width = w;
  g.height = h;
  g.dx.resize(f.size());
  g.dy.resize(f.size());

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = f.index(x, y);
      if (x == 0) {
        g.dx[i] = (f(1, y) - f(0, y)) * inv;
      } else if (x == w - 1) {
        g.dx[i] = (f(w - 1, y) - f(w - 2, y)) * inv;
      } else {
        g.dx[i] = 0.5 * (f(x + 1, y) - f(x - 1, y)) * inv;
      }
      if (y == 0) {
        g.dy[i] = (f(x, 1) - f(x, 0)) * inv;
      } else if (y == h - 1) {
        g.dy[i] = (f(x, h - 1) - f(x, h - 2)) * inv;
      } else {
        g.dy[i] = 0.5 * (f(x, y + 1) - f(x, y - 1)) * inv;
      }
    }
  }
  return g;
}

ScalarField gradient_magnitude(const ScalarField& f) {
  const VectorField g = gradient(f);
  ScalarField out(f.width(), f.height(), 0.0, f.spacing());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::hypot(g.dx[i], g.dy[i]);
  }
  return out;
}

double curvature_at(const ScalarField& phi, int x, int y, double eta) {
  const double h = phi.spacing();
  const double c = phi(x, y);
  const double e = phi.clamped(x + 1, y);
  const double wv = phi.clamped(x - 1, y);
  const double n = phi.clamped(x, y - 1);
  const double s = phi.clamped(x, y + 1);

  const double px = 0.5 * (e - wv) / h;
  const double py = 0.5 * (s - n) / h;
  const double pxx = (e - 2.0 * c + wv) / (h * h);
  const double pyy = (s - 2.0 * c + n) / (h * h);
  const double pxy = 0.25 *
                     (phi.clamped(x + 1, y + 1) - phi.clamped(x - 1, y + 1) -
                      phi.clamped(x + 1, y - 1) + phi.clamped(x - 1, y - 1)) /
                     (h * h);

  const double num = pxx * py * py - 2.0 * px * py * pxy + pyy * px * px;
  const double den = std::pow(px * px + py * py + eta, 1.5);
  const double bound = 1.0 / h;
  return std::clamp(num / den, -bound, bound);
}

ScalarField curvature(const ScalarField& phi, double eta) {
  phi.require_finite("curvature");
  if (!(eta > 0.0)) throw Error("curvature: eta must be positive");
  ScalarField out(phi.width(), phi.height(), 0.0, phi.spacing());
  for (int y = 0; y < phi.height(); ++y) {
    for (int x = 0; x < phi.width(); ++x) {
      out(x, y) = curvature_at(phi, x, y, eta);
    }
  }
  return out;
}

ScalarField gaussian_smooth(const ScalarField& f, double sigma, int radius) {
  if (!(sigma > 0.0) || radius < 1) {
    throw Error("gaussian_smooth: sigma and radius must be positive");
  }
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
    total += kernel[k + radius];
  }
  for (double& v : kernel) v /= total;

  ScalarField tmp(f.width(), f.height(), 0.0, f.spacing());
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * f.clamped(x + k, y);
      }
      tmp(x, y) = acc;
    }
  }
  ScalarField out(f.width(), f.height(), 0.0, f.spacing());
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * tmp.clamped(x, y + k);
      }
      out(x, y) = acc;
    }
  }
  return out;
}

}  // namespace levelseg
