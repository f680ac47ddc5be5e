#include "linetess/measure_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "linetess/errors.hpp"
#include "linetess/line_process.hpp"

namespace linetess {

nlohmann::json MeasureCheckReport::to_json() const {
  return {{"check", check},         {"seed", seed},
          {"cases", cases},         {"failures", failures},
          {"max_deviation", max_deviation}, {"tolerance", tolerance},
          {"pass", pass()}};
}

namespace {

Point random_point(std::mt19937_64& eng, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  const double x = u(eng);
  return {x, u(eng)};
}

Point at_distance(Point from, double h, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const double a = angle(eng);
  return from + Point{h * std::cos(a), h * std::sin(a)};
}

}  // namespace

MeasureCheckReport check_crofton(std::uint64_t seed, std::size_t cases,
                                 double tolerance) {
  MeasureCheckReport rep{"crofton", seed, cases, 0, 0.0, tolerance};
  RngStream rng(seed, 0);
  auto& eng = rng.engine();
  std::uniform_real_distribution<double> radius(0.01, 100.0);
  for (std::size_t c = 0; c < cases; ++c) {
    const double r = radius(eng);
    const DiscSet d{{random_point(eng, 50.0), r}};
    const double dev = std::abs(phi_union_quadrature(d) - phi_disc(r));
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (!(dev < tolerance)) ++rep.failures;
  }
  return rep;
}

MeasureCheckReport check_two_disc(std::uint64_t seed, std::size_t pairs,
                                  std::size_t chains, double tolerance) {
  MeasureCheckReport rep{"two-disc", seed, pairs + chains, 0, 0.0, tolerance};
  RngStream rng(seed, 1);
  auto& eng = rng.engine();
  std::uniform_real_distribution<double> radius(0.05, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_radii = [&] {
    double r1 = radius(eng), r2 = radius(eng);
    if (r2 > r1) std::swap(r1, r2);
    return std::pair{r1, r2};
  };
  // gap spread over several decades, from nearly touching to far apart
  auto draw_gap = [&](double scale) {
    return scale * std::pow(10.0, -3.0 + 5.0 * unit(eng));
  };

  for (std::size_t c = 0; c < pairs; ++c) {
    const auto [r1, r2] = draw_radii();
    const double h = r1 + r2 + draw_gap(r1);
    const Point z1 = random_point(eng, 20.0);
    const DiscSet d{{z1, r1}, {at_distance(z1, h, eng), r2}};
    const double closed = phi_disc(r1) + phi_disc(r2) -
                          2.0 * f_two_discs(r1, r2, h);
    const double dev = std::abs(phi_union_quadrature(d, 1e-10) - closed);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (!(dev < tolerance)) ++rep.failures;
  }

  for (std::size_t c = 0; c < chains; ++c) {
    const auto [r1, r2] = draw_radii();
    std::vector<double> hs;
    for (int k = 0; k < 20; ++k) hs.push_back(r1 + r2 + draw_gap(r1));
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    double prev = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (double h : hs) {
      const double f = f_two_discs(r1, r2, h);
      ok = ok && f > 0.0 && f < prev;
      prev = f;
    }
    if (!ok) ++rep.failures;
  }
  return rep;
}

MeasureCheckReport check_bounds(std::uint64_t seed, double eps,
                                std::size_t cases) {
  MeasureCheckReport rep{"bounds", seed, cases, 0,
                         -std::numeric_limits<double>::infinity(), 0.0};
  RngStream rng(seed, 2);
  auto& eng = rng.engine();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> level(2.0, 20.0);

  auto track = [&rep](double lhs, double bound) {
    rep.max_deviation = std::max(rep.max_deviation, lhs - bound);
  };

  for (std::size_t c = 0; c < cases; ++c) {
    const double v = level(eng);
    DiscSet discs;
    const bool close = c % 2 == 0;
    const std::size_t k = 2 + c % 3;
    for (std::size_t i = 0; i < k; ++i) {
      const double r = close ? v * (1.0 + eps * (0.001 + 0.999 * unit(eng)))
                             : v * (1.0 + 2.0 * unit(eng)) + 1e-9;
      discs.push_back({{}, r});
    }
    double big = 0.0;
    for (const auto& d : discs) big = std::max(big, d.radius);
    // centres advance in x, so every pair is at least one step apart;
    // close steps cluster near touching
    std::uniform_real_distribution<double> jitter(-big, big);
    double x = 0.0;
    for (auto& d : discs) {
      d.center = {x, jitter(eng)};
      const double u = unit(eng);
      x += close ? 2.0 * big * (1.0 + 1e-6 + 0.5 * u * u * u)
                 : big * big * big * (1.0 + u) + 2.0 * big;
    }
    const SeparationReport sep = check_separation_bounds(discs, v, eps);
    for (const auto& p : sep.pairs) {
      if (p.far_applies) track(p.intersection, p.far_bound);
      if (p.close_applies) track(p.intersection, p.close_bound);
    }
    track(sep.lower, sep.phi_union + 1e-8);
    track(sep.phi_union, sep.upper + 1e-8);
    if (!sep.all_hold()) ++rep.failures;
  }
  return rep;
}

MeasureCheckReport run_measure_check(std::string_view name,
                                     std::uint64_t seed) {
  if (name == "crofton") return check_crofton(seed);
  if (name == "two-disc") return check_two_disc(seed);
  if (name == "bounds") return check_bounds(seed);
  throw DomainError("unknown measure check: " + std::string(name));
}

}  // namespace linetess
