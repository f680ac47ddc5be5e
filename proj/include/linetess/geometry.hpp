#pragma once

// Planar primitives: lines in normal form, triangles cut out by three lines,
// their incircles, convex polygon clipping and cell reconstruction.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "linetess/errors.hpp"

namespace linetess {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// General-position tolerances.
inline constexpr double kParallelTol = 1e-12;  // on |sin(theta_i - theta_j)|
inline constexpr double kAreaTol = 1e-12;
inline constexpr double kGeomTol = 1e-9;  // multiplied by max(1, scale)

/// A triangle counts as degenerate when it is too flat (area against the
/// squared perimeter) or too small to be told apart from rounding noise in
/// its vertex coordinates (inradius against the coordinate scale).
inline bool degenerate_triangle(double area, double perimeter, double scale) {
  return !(area > kAreaTol * perimeter * perimeter) ||
         !(2.0 * area > kAreaTol * std::max(1.0, scale) * perimeter);
}

/// Edge label for polygon edges that come from the bounding polygon rather
/// than from a sampled line.
inline constexpr int kBoundaryEdge = -1;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// The line {x : <x, u(theta)> = t} with u(theta) = (cos theta, sin theta).
/// Sampled lines have t > 0 and theta in [0, 2 pi).
struct Line {
  double theta = 0.0;
  double t = 0.0;

  Point normal() const { return {std::cos(theta), std::sin(theta)}; }
  /// Unit vector along the line, normal rotated by +pi/2.
  Point direction() const { return {-std::sin(theta), std::cos(theta)}; }
};

/// Line through two distinct points, returned in normal form with t >= 0.
Line line_through(Point a, Point b);

/// <p, u> - t. Negative on the origin side when t > 0.
inline double offset(const Line& line, Point p) {
  return dot(p, line.normal()) - line.t;
}

/// Euclidean distance from p to the line.
inline double distance(const Line& line, Point p) {
  return std::abs(offset(line, p));
}

/// Intersection of two lines. Throws DegenerateError when parallel.
Point intersect(const Line& a, const Line& b);

struct Triangle {
  std::array<Point, 3> vertices;  // counter-clockwise
  std::array<Line, 3> lines;      // lines[i] supports the edge opposite vertices[i]
  std::array<int, 3> line_ids{0, 1, 2};

  double area() const;
};

/// The triangle bounded by three lines in general position.
Triangle triangle_of_triple(const Line& a, const Line& b, const Line& c,
                            std::array<int, 3> ids = {0, 1, 2});

struct InballFlags {
  bool incentre_in_window = false;
  bool triangle_in_guard = false;
  bool empty = false;
  bool boundary_safe = false;
};

struct Inball {
  Point center;
  double radius = 0.0;
  std::array<int, 3> triple{0, 1, 2};
  std::array<double, 3> tangency_residuals{};
  InballFlags flags;

  double max_residual() const;
};

/// Incircle by the barycentric incentre formula; residuals are measured
/// against the triangle's generating lines.
Inball incircle_of_triangle(const Triangle& triangle);

/// Convex polygon, vertices counter-clockwise.
using Polygon = std::vector<Point>;

double polygon_area(std::span<const Point> poly);
bool is_convex(std::span<const Point> poly);
/// Rotates the vertex list so the lexicographically smallest vertex is first.
Polygon canonical(Polygon poly);
Polygon regular_polygon(int sides, double circumradius);

/// poly intersected with the closed half-plane bounded by `line` that
/// contains `keep`.
Polygon clip_halfplane(const Polygon& poly, const Line& line, Point keep);

/// Convex polygon with a label per edge; edge i runs from vertices[i] to
/// vertices[i + 1].
struct LabeledPolygon {
  std::vector<Point> vertices;
  std::vector<int> edge_lines;
};

LabeledPolygon label_boundary(const Polygon& poly);
LabeledPolygon clip_halfplane(const LabeledPolygon& poly, const Line& line,
                              int line_id, Point keep);

/// Largest disc inside a convex polygon, found by solving every triple of
/// supporting edge lines for an equidistant centre and keeping the largest
/// feasible one. Triple entries are edge labels.
Inball polygon_inball(const LabeledPolygon& poly);

struct Cell {
  std::vector<Point> vertices;  // counter-clockwise
  std::vector<int> edge_lines;  // line index or kBoundaryEdge
  Inball inball;

  bool touches_boundary() const;
};

/// The cell of the arrangement (restricted to `bound`) containing p.
Cell cell_of_point(Point p, std::span<const Line> lines, const Polygon& bound);

int vertex_count(const Cell& cell);

}  // namespace linetess
