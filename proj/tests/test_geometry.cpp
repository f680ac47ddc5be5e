#include <doctest.h>

#include <algorithm>
#include <random>

#include "linetess/geometry.hpp"
#include "oracles.hpp"

using namespace linetess;

namespace {

const Line kRight{0.0, 1.0};
const Line kUpperLeft{2.0 * kPi / 3.0, 1.0};
const Line kLowerLeft{4.0 * kPi / 3.0, 1.0};

Polygon unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

bool same_vertex_set(const Polygon& a, const Polygon& b, double tol) {
  if (a.size() != b.size()) return false;
  for (Point p : a) {
    const bool found = std::any_of(b.begin(), b.end(), [&](Point q) {
      return norm(p - q) < tol;
    });
    if (!found) return false;
  }
  return true;
}

Triangle random_triangle(std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (;;) {
    const Point a{u(eng), u(eng)}, b{u(eng), u(eng)}, c{u(eng), u(eng)};
    if (std::abs(cross(b - a, c - a)) < 1.0) continue;
    return triangle_of_triple(line_through(b, c), line_through(c, a),
                              line_through(a, b));
  }
}

}  // namespace

TEST_CASE("distance to a line") {
  CHECK(distance({0.0, 1.0}, {0, 0}) == doctest::Approx(1.0));
  CHECK(distance({0.0, 1.0}, {1, 5}) == doctest::Approx(0.0));
  CHECK(distance({kPi / 2, 2.0}, {7, -1}) == doctest::Approx(3.0));
}

TEST_CASE("line_through returns normal form with t >= 0") {
  const Line l = line_through({1, 3}, {5, 3});
  CHECK(l.t == doctest::Approx(3.0));
  CHECK(distance(l, {1, 3}) < 1e-12);
  CHECK(distance(l, {-4, 3}) < 1e-12);
  CHECK(l.theta >= 0.0);
  CHECK(l.theta < kTwoPi);
}

TEST_CASE("symmetric triple gives the equilateral triangle around the unit disc") {
  const Triangle tri = triangle_of_triple(kRight, kUpperLeft, kLowerLeft);
  for (Point v : tri.vertices) CHECK(norm(v) == doctest::Approx(2.0));
  CHECK(tri.area() > 0.0);
  const Inball b = incircle_of_triangle(tri);
  CHECK(norm(b.center) < 1e-12);
  CHECK(b.radius == doctest::Approx(1.0));
}

TEST_CASE("parallel lines are degenerate") {
  CHECK_THROWS_AS(triangle_of_triple({0.0, 1.0}, {0.0, 2.0}, {1.0, 1.0}),
                  DegenerateError);
  CHECK_THROWS_AS(intersect({0.0, 1.0}, {kPi, 1.0}), DegenerateError);
}

TEST_CASE("concurrent lines are degenerate") {
  // three lines through (1, 0)
  CHECK_THROWS_AS(triangle_of_triple(line_through({1, 0}, {1, 1}),
                                     line_through({1, 0}, {2, 1}),
                                     line_through({1, 0}, {3, 1})),
                  DegenerateError);
}

TEST_CASE("3-4-5 triangle is recovered from its edge lines") {
  const Point A{0, 0}, B{4, 0}, C{0, 3};
  const Triangle tri = triangle_of_triple(line_through(B, C), line_through(C, A),
                                          line_through(A, B));
  CHECK(norm(tri.vertices[0] - A) < 1e-9);
  CHECK(norm(tri.vertices[1] - B) < 1e-9);
  CHECK(norm(tri.vertices[2] - C) < 1e-9);
  CHECK(cross(tri.vertices[1] - tri.vertices[0],
              tri.vertices[2] - tri.vertices[0]) > 0.0);

  const Inball b = incircle_of_triangle(tri);
  CHECK(b.center.x == doctest::Approx(1.0));
  CHECK(b.center.y == doctest::Approx(1.0));
  CHECK(b.radius == doctest::Approx(1.0));

  const auto [z, r] = oracle::chebyshev_grid({A, B, C});
  CHECK(norm(z - b.center) < 1e-7);
  CHECK(r == doctest::Approx(b.radius).epsilon(1e-9));
}

TEST_CASE("vertices lie on their edge lines and residuals vanish") {
  std::mt19937_64 eng(11);
  for (int n = 0; n < 200; ++n) {
    const Triangle tri = random_triangle(eng);
    for (int i = 0; i < 3; ++i) {
      // vertex i is opposite line i, so it lies on the other two
      for (int j = 0; j < 3; ++j) {
        if (j != i) CHECK(distance(tri.lines[j], tri.vertices[i]) < 1e-9);
      }
    }
    const Inball b = incircle_of_triangle(tri);
    CHECK(b.max_residual() <= 1e-9 * std::max(1.0, b.radius));
    CHECK(oracle::depth({tri.vertices.begin(), tri.vertices.end()}, b.center) >
          0.0);
  }
}

TEST_CASE("incircle agrees with the grid-search Chebyshev centre") {
  std::mt19937_64 eng(12);
  for (int n = 0; n < 30; ++n) {
    const Triangle tri = random_triangle(eng);
    const Inball b = incircle_of_triangle(tri);
    const auto [z, r] =
        oracle::chebyshev_grid({tri.vertices.begin(), tri.vertices.end()});
    CHECK(norm(z - b.center) < 1e-6);
    CHECK(std::abs(r - b.radius) < 1e-9 * std::max(1.0, b.radius));
  }
}

TEST_CASE("incircle is invariant under permutation and rigid motion") {
  std::mt19937_64 eng(13);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 100; ++n) {
    const Triangle tri = random_triangle(eng);
    const Inball ref = incircle_of_triangle(tri);
    const auto& L = tri.lines;

    const Inball perm =
        incircle_of_triangle(triangle_of_triple(L[2], L[0], L[1]));
    CHECK(norm(perm.center - ref.center) < 1e-9);
    CHECK(perm.radius == doctest::Approx(ref.radius).epsilon(1e-12));

    const double angle = u(eng);
    const Point shift{u(eng), u(eng)};
    const Inball moved = incircle_of_triangle(
        triangle_of_triple(oracle::rotated_shifted(L[0], angle, shift),
                           oracle::rotated_shifted(L[1], angle, shift),
                           oracle::rotated_shifted(L[2], angle, shift)));
    const Point expected = oracle::rotate(ref.center, angle) + shift;
    CHECK(norm(moved.center - expected) < 1e-9);
    CHECK(std::abs(moved.radius - ref.radius) < 1e-9);
  }
}

TEST_CASE("incircle scales with the triangle") {
  const Point A{0, 0}, B{4, 0}, C{0, 3};
  for (double s : {1e-3, 0.5, 7.0, 1e3}) {
    const Triangle tri =
        triangle_of_triple(line_through(s * B, s * C), line_through(s * C, A),
                           line_through(A, s * B));
    const Inball b = incircle_of_triangle(tri);
    CHECK(b.radius == doctest::Approx(s));
    CHECK(norm(b.center - Point{s, s}) < 1e-9 * std::max(1.0, s));
  }
}

TEST_CASE("clipping a half-plane") {
  SUBCASE("unit square, x = 0.5") {
    const Polygon half = clip_halfplane(unit_square(), {0.0, 0.5}, {0, 0});
    CHECK(polygon_area(half) == doctest::Approx(0.5));
    CHECK(is_convex(half));
  }
  SUBCASE("line missing the polygon") {
    const Polygon same = clip_halfplane(unit_square(), {0.0, 5.0}, {0.5, 0.5});
    CHECK(same_vertex_set(same, unit_square(), 1e-12));
  }
  SUBCASE("own edge line is idempotent") {
    const Polygon same = clip_halfplane(unit_square(), {0.0, 1.0}, {0.5, 0.5});
    CHECK(same_vertex_set(same, unit_square(), 1e-9));
    CHECK(polygon_area(same) == doctest::Approx(1.0));
  }
  SUBCASE("keep on the far side of a missing line empties the polygon") {
    const Polygon none = clip_halfplane(unit_square(), {0.0, 5.0}, {6, 0});
    CHECK(none.empty());
  }
}

TEST_CASE("clipping never grows area and is order independent") {
  std::mt19937_64 eng(14);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> dist(0.05, 3.0);
  for (int n = 0; n < 100; ++n) {
    std::vector<Line> lines;
    for (int k = 0; k < 6; ++k) lines.push_back({angle(eng), dist(eng)});
    const Point keep{0, 0};
    Polygon forward = regular_polygon(16, 4.0);
    for (const Line& l : lines) {
      const double before = polygon_area(forward);
      forward = clip_halfplane(forward, l, keep);
      CHECK(polygon_area(forward) <= before + 1e-12);
    }
    std::shuffle(lines.begin(), lines.end(), eng);
    Polygon shuffled = regular_polygon(16, 4.0);
    for (const Line& l : lines) shuffled = clip_halfplane(shuffled, l, keep);
    CHECK(same_vertex_set(canonical(forward), canonical(shuffled), 1e-9));
    CHECK(is_convex(forward));
  }
}

TEST_CASE("canonical starts at the lexicographically smallest vertex") {
  const Polygon p = canonical({{1, 1}, {0, 1}, {0, 0}, {1, 0}});
  CHECK(p[0] == Point{0, 0});
  CHECK(p[1] == Point{1, 0});
}

TEST_CASE("cell_of_point") {
  SUBCASE("no lines returns the bound") {
    const Cell c = cell_of_point({0.5, 0.5}, {}, unit_square());
    CHECK(vertex_count(c) == 4);
    CHECK(c.touches_boundary());
    CHECK(c.inball.radius == doctest::Approx(0.5));
  }
  SUBCASE("one line keeps the half containing p") {
    const std::vector<Line> lines{{0.0, 0.25}};
    const Cell c = cell_of_point({0.75, 0.5}, lines, unit_square());
    CHECK(polygon_area(c.vertices) == doctest::Approx(0.75));
    CHECK(std::count(c.edge_lines.begin(), c.edge_lines.end(), 0) == 1);
  }
  SUBCASE("three tangent lines give the equilateral cell") {
    const std::vector<Line> lines{kRight, kUpperLeft, kLowerLeft};
    const Cell c = cell_of_point({0, 0}, lines, regular_polygon(64, 50.0));
    CHECK(vertex_count(c) == 3);
    CHECK_FALSE(c.touches_boundary());
    CHECK(norm(c.inball.center) < 1e-9);
    CHECK(c.inball.radius == doctest::Approx(1.0));
  }
  SUBCASE("a corner cut turns the triangle into a quadrilateral") {
    // the equilateral cell has vertices (-2, 0), (1, -sqrt 3), (1, sqrt 3);
    // x = -1.5 cuts the first one off, x = -2.5 misses the cell
    const Polygon tri{{-2, 0}, {1, -std::sqrt(3.0)}, {1, std::sqrt(3.0)}};
    for (double t : {1.5, 2.5}) {
      const Line corner{kPi, t};
      const std::vector<Line> lines{kRight, kUpperLeft, kLowerLeft, corner};
      const Cell c = cell_of_point({0, 0}, lines, regular_polygon(64, 50.0));
      const Polygon expected = clip_halfplane(tri, corner, {0, 0});
      CHECK(vertex_count(c) == static_cast<int>(expected.size()));
      CHECK(vertex_count(c) == (t < 2.0 ? 4 : 3));
    }
  }
  SUBCASE("point on a line is rejected") {
    const std::vector<Line> lines{{0.0, 0.5}};
    CHECK_THROWS_AS(cell_of_point({0.5, 0.2}, lines, unit_square()),
                    PointOnLineError);
  }
}

TEST_CASE("cell inball matches brute force and grid oracles") {
  std::mt19937_64 eng(15);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> dist(0.05, 2.0);
  for (int n = 0; n < 40; ++n) {
    std::vector<Line> lines;
    for (int k = 0; k < 7; ++k) lines.push_back({angle(eng), dist(eng)});
    const Point p{0, 0};
    const Cell c = cell_of_point(p, lines, regular_polygon(32, 10.0));
    CHECK(is_convex(c.vertices));
    CHECK(oracle::depth(c.vertices, p) > 0.0);
    // a grid point is feasible, so its depth bounds the inradius from below
    const auto [z, r] = oracle::chebyshev_grid(c.vertices);
    CHECK(c.inball.radius >= r - 1e-12);
    CHECK(c.inball.radius <= r + 1e-7);
    CHECK(oracle::depth(c.vertices, c.inball.center) ==
          doctest::Approx(c.inball.radius).epsilon(1e-9));
  }
}
