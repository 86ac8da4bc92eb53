#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "levelseg/scalar_field.hpp"

namespace levelseg {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// One polyline of the zero level set. Closed loops repeat no vertex; the
/// closing edge runs from the last vertex back to the first. Chains that
/// leave through the image border are open.
struct ContourLoop {
  std::vector<Point> vertices;
  bool closed = true;
};

struct Contour {
  std::vector<ContourLoop> loops;

  bool empty() const { return loops.empty(); }
  std::size_t vertex_count() const;
};

struct CircleShape {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
};

/// nx by ny circles centred on the cells of a uniform nx by ny partition.
struct CircleGridShape {
  int nx = 4;
  int ny = 4;
  double radius = 0.0;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1] in pixel coordinates.
struct RectShape {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
};

using InitShape = std::variant<CircleShape, CircleGridShape, RectShape>;

/// Minimum clearance between any initial shape and the image border.
inline constexpr double kInitMargin = 2.0;

/// 4x4 circles of radius min(width, height) / 10, centred in equal cells of
/// the pixel-centre extent. The radius shrinks on grids too small for the
/// border margin.
InitShape default_init_shape(int width, int height);

/// Parses "circle:CX,CY,R", "grid:NX,NY,R" or "rect:X0,Y0,X1,Y1".
InitShape parse_init_shape(const std::string& text);
std::string to_string(const InitShape& shape);

/// Throws if any part of `shape` is closer than kInitMargin to the border.
void validate_init_shape(const InitShape& shape, int width, int height);

/// Signed distance to the shape boundary, positive inside. Circle grids take
/// the pointwise maximum of the per-circle distances.
ScalarField signed_distance(const InitShape& shape, int width, int height,
                            double spacing = 1.0);

/// Relaxes phi toward |grad phi| = 1 with the upwind sign(phi0)(1 - |grad phi|)
/// iteration, pinning the zero crossing with a subcell distance estimate in
/// the cells adjacent to the interface.
ScalarField reinitialize(const ScalarField& phi, int iterations);

/// Marching squares on the pixel-centre lattice; vertices are linear
/// interpolants along cell edges. Returns an empty contour when phi has no
/// sign change. Fragments with fewer than three vertices are dropped.
Contour extract_contour(const ScalarField& phi);

/// 1 where phi >= 0.
Mask mask_inside(const ScalarField& phi);

/// Shortest distance from `p` to any edge of `contour`.
double distance_to_contour(const Point& p, const Contour& contour);

/// Symmetric Hausdorff distance between the polylines of two contours,
/// measured from vertices to edges. Infinite if exactly one is empty.
double hausdorff_distance(const Contour& a, const Contour& b);

/// Largest deviation of any vertex from the circle |p - c| = r.
double max_circle_deviation(const Contour& contour, double cx, double cy,
                            double r);

/// CSV with header `loop_id,vertex_id,x,y`, coordinates to 4 decimals.
void write_contour_csv(std::ostream& out, const Contour& contour);
std::string contour_csv(const Contour& contour);

}  // namespace levelseg
