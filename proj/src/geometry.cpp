#include "linetess/geometry.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace linetess {

namespace {

// Clipping classifies vertices by signed offset with this relative
// tolerance. It is far below kGeomTol so that cells with inradius ~1e-8
// (the smallest cells at rho ~ 1e4) keep their true combinatorics.
constexpr double kClipTol = 1e-12;

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;
  return theta;
}

double clip_tolerance(const Line& line, Point keep) {
  return kClipTol * std::max({1.0, std::abs(line.t), norm(keep)});
}

}  // namespace

Line line_through(Point a, Point b) {
  const Point d = b - a;
  const double len = norm(d);
  if (len == 0.0) throw DegenerateError("line_through: coincident points");
  Point n{-d.y / len, d.x / len};
  double t = dot(n, a);
  if (t < 0.0) {
    n = -1.0 * n;
    t = -t;
  }
  return {wrap_angle(std::atan2(n.y, n.x)), t};
}

Point intersect(const Line& a, const Line& b) {
  const double ca = std::cos(a.theta), sa = std::sin(a.theta);
  const double cb = std::cos(b.theta), sb = std::sin(b.theta);
  const double det = ca * sb - sa * cb;
  if (std::abs(det) < kParallelTol) {
    throw DegenerateError("intersect: parallel lines");
  }
  return {(a.t * sb - b.t * sa) / det, (ca * b.t - cb * a.t) / det};
}

double Triangle::area() const {
  return 0.5 * cross(vertices[1] - vertices[0], vertices[2] - vertices[0]);
}

namespace {

double coordinate_scale(const std::array<Point, 3>& v) {
  double scale = 0.0;
  for (Point p : v) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  return scale;
}

}  // namespace

Triangle triangle_of_triple(const Line& a, const Line& b, const Line& c,
                            std::array<int, 3> ids) {
  Triangle tri;
  tri.lines = {a, b, c};
  tri.line_ids = ids;
  tri.vertices = {intersect(b, c), intersect(a, c), intersect(a, b)};
  double area = tri.area();
  if (area < 0.0) {
    std::swap(tri.vertices[1], tri.vertices[2]);
    std::swap(tri.lines[1], tri.lines[2]);
    std::swap(tri.line_ids[1], tri.line_ids[2]);
    area = -area;
  }
  const double perimeter = norm(tri.vertices[1] - tri.vertices[2]) +
                           norm(tri.vertices[0] - tri.vertices[2]) +
                           norm(tri.vertices[0] - tri.vertices[1]);
  if (degenerate_triangle(area, perimeter, coordinate_scale(tri.vertices))) {
    throw DegenerateError("triangle_of_triple: degenerate triangle");
  }
  return tri;
}

double Inball::max_residual() const {
  return *std::max_element(tangency_residuals.begin(),
                           tangency_residuals.end());
}

Inball incircle_of_triangle(const Triangle& tri) {
  const auto& v = tri.vertices;
  const double a = norm(v[1] - v[2]);
  const double b = norm(v[0] - v[2]);
  const double c = norm(v[0] - v[1]);
  const double perimeter = a + b + c;
  const double area = std::abs(tri.area());
  if (degenerate_triangle(area, perimeter, coordinate_scale(v))) {
    throw DegenerateError("incircle_of_triangle: degenerate triangle");
  }
  Inball ball;
  ball.center = (1.0 / perimeter) * (a * v[0] + b * v[1] + c * v[2]);
  ball.radius = 2.0 * area / perimeter;
  ball.triple = tri.line_ids;
  for (int i = 0; i < 3; ++i) {
    ball.tangency_residuals[i] =
        std::abs(distance(tri.lines[i], ball.center) - ball.radius);
  }
  return ball;
}

double polygon_area(std::span<const Point> poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * twice;
}

bool is_convex(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = poly[(i + 1) % n] - poly[i];
    const Point e2 = poly[(i + 2) % n] - poly[(i + 1) % n];
    const double scale = norm(e1) * norm(e2);
    if (cross(e1, e2) < -kClipTol * std::max(1.0, scale)) return false;
  }
  return true;
}

Polygon canonical(Polygon poly) {
  if (poly.empty()) return poly;
  auto smallest = std::min_element(
      poly.begin(), poly.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
      });
  std::rotate(poly.begin(), smallest, poly.end());
  return poly;
}

Polygon regular_polygon(int sides, double circumradius) {
  Polygon poly;
  poly.reserve(static_cast<std::size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    const double a = kTwoPi * i / sides;
    poly.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
  }
  return poly;
}

LabeledPolygon label_boundary(const Polygon& poly) {
  return {poly, std::vector<int>(poly.size(), kBoundaryEdge)};
}

LabeledPolygon clip_halfplane(const LabeledPolygon& poly, const Line& line,
                              int line_id, Point keep) {
  const double side = offset(line, keep) <= 0.0 ? 1.0 : -1.0;
  const double tol = clip_tolerance(line, keep);
  const std::size_t n = poly.vertices.size();

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = side * offset(line, poly.vertices[i]);
  }

  LabeledPolygon out;
  out.vertices.reserve(n + 1);
  out.edge_lines.reserve(n + 1);
  auto emit = [&out](Point p, int label) {
    out.vertices.push_back(p);
    out.edge_lines.push_back(label);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Point p = poly.vertices[i];
    const Point q = poly.vertices[j];
    const double wp = w[i], wq = w[j];
    const int label = poly.edge_lines[i];
    if (wp <= tol) {
      const bool on_line = wp >= -tol;
      if (wq > tol) {
        if (on_line) {
          emit(p, line_id);
        } else {
          emit(p, label);
          emit(p + (wp / (wp - wq)) * (q - p), line_id);
        }
      } else {
        emit(p, label);
      }
    } else if (wq < -tol) {
      emit(p + (wp / (wp - wq)) * (q - p), label);
    }
  }
  if (out.vertices.size() < 3) return {};
  return out;
}

Polygon clip_halfplane(const Polygon& poly, const Line& line, Point keep) {
  return clip_halfplane(label_boundary(poly), line, kBoundaryEdge, keep)
      .vertices;
}

Inball polygon_inball(const LabeledPolygon& poly) {
  struct Edge {
    Point normal;  // outward unit normal
    double level;  // <normal, x> <= level inside
    int label;
  };
  std::vector<Edge> edges;
  const std::size_t n = poly.vertices.size();
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly.vertices[i];
    const Point b = poly.vertices[(i + 1) % n];
    scale = std::max(scale, norm(a));
    const Point e = b - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    const Point outward{e.y / len, -e.x / len};
    edges.push_back({outward, dot(outward, a), poly.edge_lines[i]});
  }

  Inball best;
  best.radius = -1.0;
  const double tol = kGeomTol * scale;
  const std::size_t m = edges.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        // Solve <n, z> + r = level for the three edges.
        const Edge& e1 = edges[i];
        const Edge& e2 = edges[j];
        const Edge& e3 = edges[k];
        const double det =
            e1.normal.x * (e2.normal.y - e3.normal.y) -
            e1.normal.y * (e2.normal.x - e3.normal.x) +
            (e2.normal.x * e3.normal.y - e3.normal.x * e2.normal.y);
        if (std::abs(det) < kParallelTol) continue;
        const double dx = e1.level * (e2.normal.y - e3.normal.y) -
                          e1.normal.y * (e2.level - e3.level) +
                          (e2.level * e3.normal.y - e3.level * e2.normal.y);
        const double dy = e1.normal.x * (e2.level - e3.level) -
                          e1.level * (e2.normal.x - e3.normal.x) +
                          (e2.normal.x * e3.level - e3.normal.x * e2.level);
        const double dr =
            e1.normal.x * (e2.normal.y * e3.level - e3.normal.y * e2.level) -
            e1.normal.y * (e2.normal.x * e3.level - e3.normal.x * e2.level) +
            e1.level * (e2.normal.x * e3.normal.y - e3.normal.x * e2.normal.y);
        const Point z{dx / det, dy / det};
        const double r = dr / det;
        if (!(r > 0.0) || r <= best.radius) continue;
        const bool feasible = std::all_of(
            edges.begin(), edges.end(), [&](const Edge& e) {
              return e.level - dot(e.normal, z) >= r - tol;
            });
        if (!feasible) continue;
        best.center = z;
        best.radius = r;
        best.triple = {e1.label, e2.label, e3.label};
        const std::array<const Edge*, 3> tri{&e1, &e2, &e3};
        for (int s = 0; s < 3; ++s) {
          best.tangency_residuals[s] =
              std::abs(tri[s]->level - dot(tri[s]->normal, z) - r);
        }
      }
    }
  }
  if (best.radius < 0.0) {
    throw DegenerateError("polygon_inball: no feasible inscribed disc");
  }
  return best;
}

bool Cell::touches_boundary() const {
  return std::find(edge_lines.begin(), edge_lines.end(), kBoundaryEdge) !=
         edge_lines.end();
}

Cell cell_of_point(Point p, std::span<const Line> lines,
                   const Polygon& bound) {
  LabeledPolygon poly = label_boundary(bound);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (distance(lines[i], p) < clip_tolerance(lines[i], p)) {
      throw PointOnLineError("cell_of_point: point lies on line " +
                             std::to_string(i));
    }
    poly = clip_halfplane(poly, lines[i], static_cast<int>(i), p);
    if (poly.vertices.empty()) {
      throw DegenerateError("cell_of_point: point outside bounding polygon");
    }
  }
  Cell cell;
  cell.inball = polygon_inball(poly);
  cell.vertices = std::move(poly.vertices);
  cell.edge_lines = std::move(poly.edge_lines);
  return cell;
}

int vertex_count(const Cell& cell) {
  return static_cast<int>(cell.vertices.size());
}

}  // namespace linetess
