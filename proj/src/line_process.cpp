#include "linetess/line_process.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "linetess/quadrature.hpp"

namespace linetess {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32),
                    0x6c696e65u};
  engine_.seed(seq);
}

LineSample sample_lines(double sampling_radius, RngStream& rng) {
  if (!(sampling_radius > 0.0)) {
    throw DomainError("sample_lines: sampling radius must be positive");
  }
  LineSample sample;
  sample.sampling_radius = sampling_radius;
  sample.seed = rng.seed();
  sample.stream_id = rng.stream_id();

  auto& engine = rng.engine();
  std::poisson_distribution<long> count(kTwoPi * sampling_radius);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long n = count(engine);
  sample.lines.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double theta = kTwoPi * unit(engine);
    double u = unit(engine);
    while (u == 0.0) u = unit(engine);  // t = 0 has measure zero
    sample.lines.push_back({theta, sampling_radius * u});
  }
  return sample;
}

LineSample sample_lines(double sampling_radius, std::uint64_t seed,
                        std::uint64_t stream_id) {
  RngStream rng(seed, stream_id);
  return sample_lines(sampling_radius, rng);
}

double phi_disc(double r) {
  if (r < 0.0) throw DomainError("phi_disc: negative radius");
  return kTwoPi * r;
}

double f_two_discs(double r1, double r2, double h) {
  if (!(r2 > 0.0) || r2 > r1) {
    throw DomainError("f_two_discs: requires r1 >= r2 > 0");
  }
  if (!(h > r1 + r2)) {
    throw DomainError("f_two_discs: discs must be disjoint (h > r1 + r2)");
  }
  const double s = (r1 + r2) / h;
  const double d = (r1 - r2) / h;
  return (r1 + r2) * std::asin(s) - (r1 - r2) * std::asin(d) -
         h * (std::sqrt(1.0 - d * d) - std::sqrt(1.0 - s * s));
}

double phi_pair(const DiscSet& discs) {
  if (discs.size() != 2) {
    throw DomainError("phi_pair: expects exactly two discs");
  }
  double r1 = discs[0].radius;
  double r2 = discs[1].radius;
  if (r2 > r1) std::swap(r1, r2);
  const double h = norm(discs[1].center - discs[0].center);
  return kTwoPi * (r1 + r2) - 2.0 * f_two_discs(r1, r2, h);
}

namespace {

// Length of the union of [c_i - r_i, c_i + r_i] with c_i = <z_i, u(theta)>.
// Integrating over theta in [0, pi) and t in R covers every line once,
// which is the same measure as theta in [0, 2 pi), t >= 0.
class UnionLength {
 public:
  explicit UnionLength(const DiscSet& discs) : discs_(discs) {
    intervals_.resize(discs.size());
  }

  double operator()(double theta) {
    const Point u{std::cos(theta), std::sin(theta)};
    for (std::size_t i = 0; i < discs_.size(); ++i) {
      const double c = dot(discs_[i].center, u);
      intervals_[i] = {c - discs_[i].radius, c + discs_[i].radius};
    }
    std::sort(intervals_.begin(), intervals_.end());
    double total = 0.0;
    double lo = intervals_[0].first;
    double hi = intervals_[0].second;
    for (std::size_t i = 1; i < intervals_.size(); ++i) {
      if (intervals_[i].first > hi) {
        total += hi - lo;
        lo = intervals_[i].first;
        hi = intervals_[i].second;
      } else {
        hi = std::max(hi, intervals_[i].second);
      }
    }
    return total + (hi - lo);
  }

 private:
  const DiscSet& discs_;
  std::vector<std::pair<double, double>> intervals_;
};

std::vector<double> kink_angles(const DiscSet& discs) {
  std::vector<double> angles{0.0, kPi};
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const Point d = discs[j].center - discs[i].center;
      const double dist = norm(d);
      if (dist == 0.0) continue;
      const double alpha = std::atan2(d.y, d.x);
      const double ri = discs[i].radius, rj = discs[j].radius;
      for (double level : {ri + rj, ri - rj}) {
        if (std::abs(level) > dist) continue;
        const double spread = std::acos(level / dist);
        for (double theta : {alpha + spread, alpha - spread}) {
          double folded = std::fmod(theta, kPi);
          if (folded < 0.0) folded += kPi;
          angles.push_back(folded);
        }
      }
    }
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  return angles;
}

}  // namespace

double phi_union_quadrature(const DiscSet& discs, double abs_tol) {
  if (discs.empty()) {
    throw DomainError("phi_union_quadrature: empty disc set");
  }
  for (const Disc& d : discs) {
    if (!(d.radius > 0.0)) {
      throw DomainError("phi_union_quadrature: radii must be positive");
    }
  }
  UnionLength length(discs);
  const std::vector<double> cuts = kink_angles(discs);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    total += adaptive_simpson(length, a, b, abs_tol * (b - a) / kPi);
  }
  return total;
}

bool SeparationReport::all_hold() const {
  return union_holds &&
         std::all_of(pairs.begin(), pairs.end(), [](const PairBoundCheck& p) {
           return p.far_holds && p.close_holds;
         });
}

SeparationReport check_separation_bounds(const DiscSet& discs, double v,
                                         double eps) {
  if (discs.empty()) throw DomainError("check_separation_bounds: no discs");
  if (!(v > 0.0) || !(eps > 0.0)) {
    throw DomainError("check_separation_bounds: v and eps must be positive");
  }
  double big = 0.0;
  double sum = 0.0;
  for (const Disc& d : discs) {
    if (!(d.radius > v)) {
      throw DomainError("check_separation_bounds: every radius must exceed v");
    }
    big = std::max(big, d.radius);
    sum += d.radius;
  }

  SeparationReport report;
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      double r1 = discs[i].radius, r2 = discs[j].radius;
      if (r2 > r1) std::swap(r1, r2);
      const double h = norm(discs[j].center - discs[i].center);
      if (!(h > r1 + r2)) {
        throw DomainError("check_separation_bounds: discs overlap");
      }
      PairBoundCheck check;
      check.i = i;
      check.j = j;
      check.intersection = 2.0 * f_two_discs(r1, r2, h);
      // The far-pair bound only makes sense once 2 / R^2 is a sine value.
      check.far_applies = h > big * big * big && big * big >= 2.0;
      if (check.far_applies) {
        check.far_bound = 8.0 * big * std::asin(2.0 / (big * big));
        check.far_holds = check.intersection <= check.far_bound;
      }
      check.close_applies = big <= (1.0 + eps) * v;
      if (check.close_applies) {
        check.close_bound = kTwoPi * r2 - (4.0 - eps * kPi) * v;
        check.close_holds = check.intersection <= check.close_bound;
      }
      report.pairs.push_back(check);
    }
  }

  report.phi_union = phi_union_quadrature(discs);
  report.lower = kTwoPi * big;
  report.upper = kTwoPi * sum;
  const double slack = 1e-7 * std::max(1.0, report.upper);
  report.union_holds = report.lower <= report.phi_union + slack &&
                       report.phi_union <= report.upper + slack;
  return report;
}

double miss_frequency(const DiscSet& discs, std::size_t samples,
                      std::uint64_t seed) {
  if (discs.empty() || samples == 0) {
    throw DomainError("miss_frequency: need discs and at least one sample");
  }
  double cover = 0.0;
  for (const Disc& d : discs) cover = std::max(cover, norm(d.center) + d.radius);

  RngStream rng(seed, 0);
  std::size_t misses = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const LineSample sample = sample_lines(cover, rng);
    const bool hit = std::any_of(
        sample.lines.begin(), sample.lines.end(), [&](const Line& line) {
          return std::any_of(discs.begin(), discs.end(), [&](const Disc& d) {
            return distance(line, d.center) <= d.radius;
          });
        });
    if (!hit) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(samples);
}

void write_lines_csv(const LineSample& sample, std::ostream& out) {
  out << "theta,t\n";
  for (const Line& line : sample.lines) {
    out << fmt::format("{:.17g},{:.17g}\n", line.theta, line.t);
  }
}

std::vector<Line> read_lines_csv(std::istream& in) {
  std::string row;
  if (!std::getline(in, row) || row != "theta,t") {
    throw IoError("read_lines_csv: missing `theta,t` header");
  }
  std::vector<Line> lines;
  while (std::getline(in, row)) {
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos) {
      throw IoError("read_lines_csv: malformed row `" + row + "`");
    }
    try {
      lines.push_back({std::stod(row.substr(0, comma)),
                       std::stod(row.substr(comma + 1))});
    } catch (const std::exception&) {
      throw IoError("read_lines_csv: malformed row `" + row + "`");
    }
  }
  return lines;
}

nlohmann::json sample_metadata(const LineSample& sample) {
  return {{"seed", sample.seed},
          {"stream_id", sample.stream_id},
          {"R_sim", sample.sampling_radius},
          {"count", sample.lines.size()}};
}

}  // namespace linetess
