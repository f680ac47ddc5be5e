#include "linetess/tessellation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <ostream>

#include "linetess/version.hpp"

namespace linetess {

double window_radius(double rho) {
  if (!(rho > 0.0)) throw DomainError("window_radius: rho must be positive");
  return std::sqrt(rho / kPi);
}

double guard_q(double rho) {
  if (!(rho >= 1.0)) throw DomainError("guard_q: rho must be >= 1");
  const double root = std::sqrt(rho) + std::sqrt(std::sqrt(rho));
  return root * root;
}

double max_law_margin(double rho) {
  if (!(rho > 0.0)) throw DomainError("max_law_margin: rho must be positive");
  return (std::log(rho) + 20.0) / kTwoPi;
}

namespace {

// Pairwise intersections and their coordinates along each line, so that a
// triple's side lengths are differences of precomputed abscissae.
class PairTable {
 public:
  explicit PairTable(std::span<const Line> lines) : n_(lines.size()) {
    cos_.resize(n_);
    sin_.resize(n_);
    t_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      cos_[i] = std::cos(lines[i].theta);
      sin_[i] = std::sin(lines[i].theta);
      t_[i] = lines[i].t;
    }
    points_.resize(n_ * n_);
    along_.resize(n_ * n_);
    valid_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double det = cos_[i] * sin_[j] - sin_[i] * cos_[j];
        if (std::abs(det) < kParallelTol) continue;
        const Point p{(t_[i] * sin_[j] - t_[j] * sin_[i]) / det,
                      (cos_[i] * t_[j] - cos_[j] * t_[i]) / det};
        points_[i * n_ + j] = points_[j * n_ + i] = p;
        valid_[i * n_ + j] = valid_[j * n_ + i] = 1;
        // direction of line i is (-sin, cos)
        along_[i * n_ + j] = -sin_[i] * p.x + cos_[i] * p.y;
        along_[j * n_ + i] = -sin_[j] * p.x + cos_[j] * p.y;
      }
    }
  }

  bool valid(std::size_t i, std::size_t j) const { return valid_[i * n_ + j]; }
  Point point(std::size_t i, std::size_t j) const {
    return points_[i * n_ + j];
  }
  /// Abscissa of (line i) ∩ (line j) along line i.
  double along(std::size_t i, std::size_t j) const {
    return along_[i * n_ + j];
  }

  bool misses_open_disc(Point z, double r, std::size_t i, std::size_t j,
                        std::size_t k) const {
    const double reach = r - kGeomTol * std::max(1.0, r);
    for (std::size_t l = 0; l < n_; ++l) {
      if (std::abs(cos_[l] * z.x + sin_[l] * z.y - t_[l]) < reach &&
          l != i && l != j && l != k) {
        return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  std::vector<double> cos_, sin_, t_;
  std::vector<Point> points_;
  std::vector<double> along_;
  std::vector<unsigned char> valid_;
};

std::vector<const InballRecord*> select(
    const TessellationSummary& s, bool (*keep)(const InballRecord&)) {
  std::vector<const InballRecord*> out;
  for (const auto& rec : s.records) {
    if (keep(rec)) out.push_back(&rec);
  }
  return out;
}

const InballRecord* kth_smallest(std::vector<const InballRecord*> recs, int r,
                                 const char* what) {
  if (r < 1 || recs.size() < static_cast<std::size_t>(r)) {
    throw NotEnoughRecordsError(fmt::format(
        "{}: need {} records, have {}", what, r, recs.size()));
  }
  auto nth = recs.begin() + (r - 1);
  std::nth_element(recs.begin(), nth, recs.end(),
                   [](const InballRecord* a, const InballRecord* b) {
                     return a->inball.radius < b->inball.radius;
                   });
  return *nth;
}

}  // namespace

TessellationSummary enumerate_inballs(const LineSample& sample, double rho,
                                      const EnumerationOptions& options) {
  const double q = guard_q(rho);
  const double guard_radius = window_radius(q);
  const double win = window_radius(rho);
  if (sample.sampling_radius < guard_radius * (1.0 - 1e-12)) {
    throw InsufficientWindowError(fmt::format(
        "enumerate_inballs: sampling radius {} below guard window radius {}",
        sample.sampling_radius, guard_radius));
  }

  TessellationSummary summary;
  summary.rho = rho;
  summary.q_rho = q;
  summary.sampling_radius = sample.sampling_radius;
  summary.seed = sample.seed;
  summary.stream_id = sample.stream_id;
  summary.nonempty_radius_cap = options.nonempty_radius_cap;

  const auto& lines = sample.lines;
  const std::size_t n = lines.size();
  const PairTable table(lines);
  const double win2 = win * win;
  const double guard2 = guard_radius * guard_radius;
  auto& counts = summary.counts;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ij_ok = table.valid(i, j);
      const Point c_vertex = ij_ok ? table.point(i, j) : Point{};
      for (std::size_t k = j + 1; k < n; ++k) {
        ++counts.triples_considered;
        if (!ij_ok || !table.valid(i, k) || !table.valid(j, k)) {
          ++counts.degenerate_skipped;
          continue;
        }
        const Point a_vertex = table.point(j, k);  // opposite line i
        const Point b_vertex = table.point(i, k);  // opposite line j
        const double a = std::abs(table.along(i, k) - table.along(i, j));
        const double b = std::abs(table.along(j, k) - table.along(j, i));
        const double c = std::abs(table.along(k, j) - table.along(k, i));
        const double perimeter = a + b + c;
        const double twice_area =
            std::abs(cross(b_vertex - a_vertex, c_vertex - a_vertex));
        const double scale = std::max(
            {std::abs(a_vertex.x), std::abs(a_vertex.y), std::abs(b_vertex.x),
             std::abs(b_vertex.y), std::abs(c_vertex.x), std::abs(c_vertex.y)});
        if (degenerate_triangle(0.5 * twice_area, perimeter, scale)) {
          ++counts.degenerate_skipped;
          continue;
        }
        const Point z = (1.0 / perimeter) *
                        (a * a_vertex + b * b_vertex + c * c_vertex);
        if (dot(z, z) > win2) continue;
        const double radius = twice_area / perimeter;

        const bool empty = table.misses_open_disc(z, radius, i, j, k);
        if (!empty && radius > options.nonempty_radius_cap) {
          ++counts.nonempty_dropped;
          continue;
        }

        InballRecord rec;
        const std::array<int, 3> ids{static_cast<int>(i), static_cast<int>(j),
                                     static_cast<int>(k)};
        try {
          rec.triangle = triangle_of_triple(lines[i], lines[j], lines[k], ids);
          rec.inball = incircle_of_triangle(rec.triangle);
        } catch (const DegenerateError&) {
          ++counts.degenerate_skipped;
          continue;
        }
        if (empty) ++counts.empty_inballs;
        rec.inball.triple = ids;
        auto& flags = rec.inball.flags;
        flags.incentre_in_window = true;
        flags.triangle_in_guard = std::all_of(
            rec.triangle.vertices.begin(), rec.triangle.vertices.end(),
            [guard2](Point v) { return dot(v, v) <= guard2; });
        flags.empty = empty;
        flags.boundary_safe = norm(rec.inball.center) + rec.inball.radius <=
                              sample.sampling_radius;
        summary.records.push_back(rec);
      }
    }
  }
  return summary;
}

double triangle_min_inradius(const TessellationSummary& s, int r) {
  const auto* rec = kth_smallest(
      select(s,
             [](const InballRecord& x) {
               return x.inball.flags.triangle_in_guard;
             }),
      r, "triangle_min_inradius");
  // Records above the retention cap were dropped, so an order statistic
  // beyond the cap may not be the true one.
  if (rec->inball.radius > s.nonempty_radius_cap &&
      s.counts.nonempty_dropped > 0) {
    throw NotEnoughRecordsError(
        "triangle_min_inradius: order statistic exceeds retention cap");
  }
  return rec->inball.radius;
}

double guarded_cell_min_inradius(const TessellationSummary& s, int r) {
  return kth_smallest(select(s,
                             [](const InballRecord& x) {
                               return x.inball.flags.empty &&
                                      x.inball.flags.triangle_in_guard;
                             }),
                      r, "guarded_cell_min_inradius")
      ->inball.radius;
}

double min_inradius(const TessellationSummary& s, int r) {
  return kth_smallest(
             select(s, [](const InballRecord& x) { return x.inball.flags.empty; }),
             r, "min_inradius")
      ->inball.radius;
}

MaxInradius max_inradius(const TessellationSummary& s, int r) {
  auto cells =
      select(s, [](const InballRecord& x) { return x.inball.flags.empty; });
  if (r < 1 || cells.size() < static_cast<std::size_t>(r)) {
    throw NotEnoughRecordsError(fmt::format(
        "max_inradius: need {} cells, have {}", r, cells.size()));
  }
  std::partial_sort(cells.begin(), cells.begin() + r, cells.end(),
                    [](const InballRecord* a, const InballRecord* b) {
                      return a->inball.radius > b->inball.radius;
                    });
  MaxInradius out;
  out.value = cells[static_cast<std::size_t>(r - 1)]->inball.radius;
  out.trustworthy = std::all_of(
      cells.begin(), cells.begin() + r,
      [](const InballRecord* x) { return x->inball.flags.boundary_safe; });
  return out;
}

std::vector<double> cell_inradii(const TessellationSummary& s) {
  std::vector<double> radii;
  for (const auto& rec : s.records) {
    if (rec.inball.flags.empty && rec.inball.flags.boundary_safe) {
      radii.push_back(rec.inball.radius);
    }
  }
  return radii;
}

std::vector<const InballRecord*> smallest_cells(const TessellationSummary& s,
                                                int r) {
  auto cells =
      select(s, [](const InballRecord& x) { return x.inball.flags.empty; });
  if (r < 1 || cells.size() < static_cast<std::size_t>(r)) {
    throw NotEnoughRecordsError(fmt::format(
        "smallest_cells: need {} cells, have {}", r, cells.size()));
  }
  std::partial_sort(cells.begin(), cells.begin() + r, cells.end(),
                    [](const InballRecord* a, const InballRecord* b) {
                      return a->inball.radius < b->inball.radius;
                    });
  cells.resize(static_cast<std::size_t>(r));
  return cells;
}

std::vector<int> smallest_cell_shapes(const TessellationSummary& s,
                                      const LineSample& sample, int r) {
  const Polygon bound = regular_polygon(64, s.sampling_radius);
  std::vector<int> shapes;
  for (const InballRecord* rec : smallest_cells(s, r)) {
    shapes.push_back(
        vertex_count(cell_of_point(rec->inball.center, sample.lines, bound)));
  }
  return shapes;
}

void write_summary_json(const TessellationSummary& s, std::ostream& out,
                        bool include_nonempty) {
  out << fmt::format(
      "{{\"version\":\"{}\",\"rho\":{:.17g},\"q_rho\":{:.17g},\"R_sim\":{:.17g},\"seed\":{},"
      "\"stream_id\":{},\"counts\":{{\"triples_considered\":{},"
      "\"degenerate_skipped\":{},\"empty_inballs\":{}}},\"records\":[",
      kVersion, s.rho, s.q_rho, s.sampling_radius, s.seed, s.stream_id,
      s.counts.triples_considered, s.counts.degenerate_skipped,
      s.counts.empty_inballs);
  bool first = true;
  for (const auto& rec : s.records) {
    const auto& b = rec.inball;
    if (!b.flags.empty && !include_nonempty) continue;
    out << (first ? "" : ",");
    first = false;
    out << fmt::format(
        "{{\"z\":[{:.17g},{:.17g}],\"r\":{:.17g},\"triple\":[{},{},{}],"
        "\"flags\":{{\"incentre_in_W_rho\":{},\"triangle_in_W_q\":{},"
        "\"empty\":{},\"boundary_safe\":{}}}}}",
        b.center.x, b.center.y, b.radius, b.triple[0], b.triple[1],
        b.triple[2], b.flags.incentre_in_window, b.flags.triangle_in_guard,
        b.flags.empty, b.flags.boundary_safe);
  }
  out << "]}\n";
}

}  // namespace linetess
