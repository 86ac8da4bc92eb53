#include "levelseg/levelset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace levelseg {

namespace {

std::vector<double> parse_numbers(const std::string& body,
                                  const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("init shape '" + text + "': bad number '" + item + "'");
    }
  }
  return out;
}

std::vector<CircleShape> grid_circles(const CircleGridShape& g, int width,
                                      int height) {
  std::vector<CircleShape> circles;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      circles.push_back({(i + 0.5) * (width - 1) / g.nx,
                         (j + 0.5) * (height - 1) / g.ny, g.radius});
    }
  }
  return circles;
}

void check_circle(const CircleShape& c, int width, int height) {
  if (!(c.radius > 0.0)) throw Error("init circle radius must be positive");
  if (c.cx - c.radius < kInitMargin || c.cy - c.radius < kInitMargin ||
      c.cx + c.radius > width - 1 - kInitMargin ||
      c.cy + c.radius > height - 1 - kInitMargin) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "init circle (%.2f, %.2f, r=%.2f) violates the %.0f px "
                  "border margin of a %dx%d grid",
                  c.cx, c.cy, c.radius, kInitMargin, width, height);
    throw Error(buf);
  }
}

double circle_sdf(const CircleShape& c, double x, double y) {
  return c.radius - std::hypot(x - c.cx, y - c.cy);
}

double rect_sdf(const RectShape& r, double x, double y) {
  const double dx = std::max(r.x0 - x, x - r.x1);
  const double dy = std::max(r.y0 - y, y - r.y1);
  if (dx <= 0.0 && dy <= 0.0) return -std::max(dx, dy);
  return -std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  }
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

double directed_hausdorff(const Contour& from, const Contour& to) {
  double worst = 0.0;
  for (const auto& loop : from.loops) {
    for (const auto& p : loop.vertices) {
      worst = std::max(worst, distance_to_contour(p, to));
    }
  }
  return worst;
}

// Neighbour value with off-grid points extrapolated linearly, so a distance
// field keeps its slope across the border.
double extrapolated(const ScalarField& f, int x, int y, int dx, int dy) {
  const int w = f.width();
  const int h = f.height();
  const int xn = x + dx;
  const int yn = y + dy;
  if (xn >= 0 && xn < w && yn >= 0 && yn < h) return f(xn, yn);
  const int xm = x - dx;
  const int ym = y - dy;
  if (xm >= 0 && xm < w && ym >= 0 && ym < h) return 2 * f(x, y) - f(xm, ym);
  return f(x, y);
}

}  // namespace

std::size_t Contour::vertex_count() const {
  std::size_t n = 0;
  for (const auto& l : loops) n += l.vertices.size();
  return n;
}

InitShape default_init_shape(int width, int height) {
  // Small grids shrink the radius so every circle keeps the border margin.
  const double cell = std::min((width - 1) / 8.0, (height - 1) / 8.0);
  return CircleGridShape{
      4, 4, std::min(std::min(width, height) / 10.0, cell - kInitMargin)};
}

InitShape parse_init_shape(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error("init shape '" + text + "': expected kind:values");
  }
  const std::string kind = text.substr(0, colon);
  const auto v = parse_numbers(text.substr(colon + 1), text);
  if (kind == "circle" && v.size() == 3) {
    if (!(v[2] > 0.0)) throw Error("init shape '" + text + "': radius must be positive");
    return CircleShape{v[0], v[1], v[2]};
  }
  if (kind == "grid" && v.size() == 3) {
    if (v[0] < 1 || v[1] < 1 || v[0] != std::floor(v[0]) ||
        v[1] != std::floor(v[1])) {
      throw Error("init shape '" + text + "': grid counts must be integers >= 1");
    }
    if (!(v[2] > 0.0)) throw Error("init shape '" + text + "': radius must be positive");
    return CircleGridShape{static_cast<int>(v[0]), static_cast<int>(v[1]), v[2]};
  }
  if (kind == "rect" && v.size() == 4) {
    if (!(v[2] > v[0]) || !(v[3] > v[1])) {
      throw Error("init shape '" + text + "': rect needs X1 > X0 and Y1 > Y0");
    }
    return RectShape{v[0], v[1], v[2], v[3]};
  }
  throw Error("init shape '" + text +
              "': expected circle:CX,CY,R | grid:NX,NY,R | rect:X0,Y0,X1,Y1");
}

std::string to_string(const InitShape& shape) {
  char buf[128];
  if (const auto* c = std::get_if<CircleShape>(&shape)) {
    std::snprintf(buf, sizeof buf, "circle:%g,%g,%g", c->cx, c->cy, c->radius);
  } else if (const auto* g = std::get_if<CircleGridShape>(&shape)) {
    std::snprintf(buf, sizeof buf, "grid:%d,%d,%g", g->nx, g->ny, g->radius);
  } else {
    const auto& r = std::get<RectShape>(shape);
    std::snprintf(buf, sizeof buf, "rect:%g,%g,%g,%g", r.x0, r.y0, r.x1, r.y1);
  }
  return buf;
}

void validate_init_shape(const InitShape& shape, int width, int height) {
  if (const auto* c = std::get_if<CircleShape>(&shape)) {
    check_circle(*c, width, height);
  } else if (const auto* g = std::get_if<CircleGridShape>(&shape)) {
    if (g->nx < 1 || g->ny < 1) throw Error("init grid counts must be >= 1");
    for (const auto& c : grid_circles(*g, width, height)) {
      check_circle(c, width, height);
    }
  } else {
    const auto& r = std::get<RectShape>(shape);
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) {
      throw Error("init rect must have x1 > x0 and y1 > y0");
    }
    if (r.x0 < kInitMargin || r.y0 < kInitMargin ||
        r.x1 > width - 1 - kInitMargin || r.y1 > height - 1 - kInitMargin) {
      throw Error("init rect violates the border margin");
    }
  }
}

ScalarField signed_distance(const InitShape& shape, int width, int height,
                            double spacing) {
  validate_init_shape(shape, width, height);
  ScalarField phi(width, height, 0.0, spacing);
  std::vector<CircleShape> circles;
  if (const auto* c = std::get_if<CircleShape>(&shape)) circles = {*c};
  if (const auto* g = std::get_if<CircleGridShape>(&shape)) {
    circles = grid_circles(*g, width, height);
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double d;
      if (const auto* r = std::get_if<RectShape>(&shape)) {
        d = rect_sdf(*r, x, y);
      } else {
        d = -std::numeric_limits<double>::infinity();
        for (const auto& c : circles) d = std::max(d, circle_sdf(c, x, y));
      }
      phi(x, y) = d * spacing;
    }
  }
  return phi;
}

ScalarField reinitialize(const ScalarField& phi0, int iterations) {
  phi0.require_finite("reinitialize");
  if (iterations < 0) throw Error("reinitialize: negative iteration count");
  const int w = phi0.width();
  const int h = phi0.height();
  const double hs = phi0.spacing();
  const double dt = 0.5 * hs;

  // Cells next to the interface get a subcell target distance so the zero
  // crossing does not drift.
  std::vector<double> target(phi0.size(), 0.0);
  std::vector<std::uint8_t> near(phi0.size(), 0);
  std::vector<double> sign(phi0.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = phi0.index(x, y);
      const double c = phi0[i];
      sign[i] = c / std::sqrt(c * c + hs * hs);
      const double e = extrapolated(phi0, x, y, 1, 0);
      const double wv = extrapolated(phi0, x, y, -1, 0);
      const double s = extrapolated(phi0, x, y, 0, 1);
      const double n = extrapolated(phi0, x, y, 0, -1);
      const bool crosses = (c >= 0) != (e >= 0) || (c >= 0) != (wv >= 0) ||
                           (c >= 0) != (s >= 0) || (c >= 0) != (n >= 0);
      if (!crosses) continue;
      const double central =
          std::hypot(0.5 * (e - wv), 0.5 * (s - n)) / hs;
      const double slope =
          std::max({central, std::abs(e - c) / hs, std::abs(c - wv) / hs,
                    std::abs(s - c) / hs, std::abs(c - n) / hs, 1e-12});
      near[i] = 1;
      target[i] = c / slope;
    }
  }

  ScalarField phi = phi0;
  ScalarField next = phi0;
  for (int it = 0; it < iterations; ++it) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = phi.index(x, y);
        const double c = phi[i];
        if (near[i]) {
          const double sg = phi0[i] > 0 ? 1.0 : (phi0[i] < 0 ? -1.0 : 0.0);
          next[i] = c - (dt / hs) * (sg * std::abs(c) - target[i]);
          continue;
        }
        const double wn = extrapolated(phi, x, y, -1, 0);
        const double en = extrapolated(phi, x, y, 1, 0);
        const double nn = extrapolated(phi, x, y, 0, -1);
        const double sn = extrapolated(phi, x, y, 0, 1);
        const double a = (c - wn) / hs;   // backward x
        const double b = (en - c) / hs;   // forward x
        const double cc = (c - nn) / hs;  // backward y
        const double d = (sn - c) / hs;   // forward y
        double grad;
        if (phi0[i] > 0) {
          const double gx = std::max(std::pow(std::max(a, 0.0), 2),
                                     std::pow(std::min(b, 0.0), 2));
          const double gy = std::max(std::pow(std::max(cc, 0.0), 2),
                                     std::pow(std::min(d, 0.0), 2));
          grad = std::sqrt(gx + gy);
        } else {
          const double gx = std::max(std::pow(std::min(a, 0.0), 2),
                                     std::pow(std::max(b, 0.0), 2));
          const double gy = std::max(std::pow(std::min(cc, 0.0), 2),
                                     std::pow(std::max(d, 0.0), 2));
          grad = std::sqrt(gx + gy);
        }
        next[i] = c - dt * sign[i] * (grad - 1.0);
      }
    }
    std::swap(phi, next);
  }
  return phi;
}

Contour extract_contour(const ScalarField& phi) {
  phi.require_finite("extract_contour");
  const int w = phi.width();
  const int h = phi.height();

  // Edge ids: 2*(y*w + x) for the edge (x,y)-(x+1,y), +1 for (x,y)-(x,y+1).
  auto hedge = [w](int x, int y) {
    return 2 * (static_cast<long long>(y) * w + x);
  };
  auto vedge = [w](int x, int y) {
    return 2 * (static_cast<long long>(y) * w + x) + 1;
  };
  auto crossing = [&phi](int xa, int ya, int xb, int yb) {
    const double fa = phi(xa, ya);
    const double fb = phi(xb, yb);
    const double t = fa / (fa - fb);
    return Point{xa + t * (xb - xa), ya + t * (yb - ya)};
  };

  std::unordered_map<long long, Point> points;
  std::unordered_map<long long, long long> next;  // entry edge -> exit edge
  std::unordered_map<long long, int> incoming;

  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      // Perimeter walk a(x,y) -> b(x+1,y) -> c(x+1,y+1) -> d(x,y+1) -> a.
      const std::array<std::array<int, 2>, 4> corner = {
          {{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}}};
      const std::array<long long, 4> edge = {hedge(x, y), vedge(x + 1, y),
                                             hedge(x, y + 1), vedge(x, y)};
      std::array<bool, 4> in{};
      int n_in = 0;
      for (int k = 0; k < 4; ++k) {
        in[k] = phi(corner[k][0], corner[k][1]) >= 0.0;
        n_in += in[k];
      }
      if (n_in == 0 || n_in == 4) continue;

      // Crossings in perimeter order, tagged as entry (out -> in) or exit.
      std::array<int, 4> order{};
      std::array<bool, 4> is_entry{};
      int nc = 0;
      for (int k = 0; k < 4; ++k) {
        const int k2 = (k + 1) % 4;
        if (in[k] == in[k2]) continue;
        const auto& p = corner[k];
        const auto& q = corner[k2];
        if (!points.count(edge[k])) {
          // Interpolate from the lower-indexed endpoint so neighbouring
          // cells produce bit-identical vertices.
          const bool forward = (p[1] < q[1]) || (p[1] == q[1] && p[0] < q[0]);
          points[edge[k]] = forward ? crossing(p[0], p[1], q[0], q[1])
                                    : crossing(q[0], q[1], p[0], p[1]);
        }
        order[nc] = k;
        is_entry[nc] = !in[k];
        ++nc;
      }

      bool pair_with_previous = false;
      if (nc == 4) {
        double centre = 0.0;
        for (const auto& c : corner) centre += phi(c[0], c[1]);
        pair_with_previous = centre * 0.25 >= 0.0;
      }
      for (int m = 0; m < nc; ++m) {
        if (!is_entry[m]) continue;
        const int partner =
            pair_with_previous ? (m + nc - 1) % nc : (m + 1) % nc;
        next[edge[order[m]]] = edge[order[partner]];
        ++incoming[edge[order[partner]]];
      }
    }
  }

  Contour contour;
  std::unordered_map<long long, bool> used;
  auto walk = [&](long long start, bool open) {
    ContourLoop loop;
    loop.closed = !open;
    long long cur = start;
    while (true) {
      loop.vertices.push_back(points.at(cur));
      used[cur] = true;
      auto it = next.find(cur);
      if (it == next.end()) break;
      cur = it->second;
      if (cur == start) break;
      if (used.count(cur)) break;
    }
    if (loop.vertices.size() >= 3) contour.loops.push_back(std::move(loop));
  };

  // Deterministic traversal: sort the start candidates by edge id.
  std::vector<long long> starts;
  starts.reserve(next.size());
  for (const auto& kv : next) starts.push_back(kv.first);
  std::sort(starts.begin(), starts.end());
  for (long long s : starts) {
    if (!incoming.count(s) && !used.count(s)) walk(s, true);
  }
  for (long long s : starts) {
    if (!used.count(s)) walk(s, false);
  }
  return contour;
}

Mask mask_inside(const ScalarField& phi) {
  Mask m(phi.width(), phi.height());
  for (std::size_t i = 0; i < phi.size(); ++i) m.bits[i] = phi[i] >= 0.0;
  return m;
}

double distance_to_contour(const Point& p, const Contour& contour) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& loop : contour.loops) {
    const auto& v = loop.vertices;
    const std::size_t n = v.size();
    if (n == 1) best = std::min(best, std::hypot(p.x - v[0].x, p.y - v[0].y));
    const std::size_t edges = loop.closed ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
      best = std::min(best, point_segment_distance(p, v[i], v[(i + 1) % n]));
    }
  }
  return best;
}

double hausdorff_distance(const Contour& a, const Contour& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double max_circle_deviation(const Contour& contour, double cx, double cy,
                            double r) {
  double worst = 0.0;
  for (const auto& loop : contour.loops) {
    for (const auto& p : loop.vertices) {
      worst = std::max(worst, std::abs(std::hypot(p.x - cx, p.y - cy) - r));
    }
  }
  return worst;
}

void write_contour_csv(std::ostream& out, const Contour& contour) {
  out << "loop_id,vertex_id,x,y\n";
  char buf[96];
  for (std::size_t l = 0; l < contour.loops.size(); ++l) {
    const auto& v = contour.loops[l].vertices;
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.4f,%.4f\n", l, k, v[k].x,
                    v[k].y);
      out << buf;
    }
  }
}

std::string contour_csv(const Contour& contour) {
  std::ostringstream ss;
  write_contour_csv(ss, contour);
  return ss.str();
}

}  // namespace levelseg
