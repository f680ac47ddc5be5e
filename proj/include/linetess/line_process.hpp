#pragma once

// Isotropic Poisson line process restricted to a disc, and the hitting
// measure phi(A) = E #{lines meeting A} for discs and unions of discs.
//
// Normalisation: lines H(u, t) = {<x, u> = t} with t >= 0 and u uniform on the
// circle of total mass 2 pi, so a disc of radius r is hit by 2 pi r lines on
// average.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linetess/geometry.hpp"

namespace linetess {

/// Reproducible random stream keyed by (seed, stream_id). Two streams with
/// different keys are statistically independent; the same key always
/// produces the same sequence.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::mt19937_64& engine() { return engine_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

struct LineSample {
  double sampling_radius = 0.0;
  std::vector<Line> lines;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Poisson(2 pi R) lines with theta ~ U[0, 2 pi) and t ~ U(0, R].
LineSample sample_lines(double sampling_radius, RngStream& rng);
LineSample sample_lines(double sampling_radius, std::uint64_t seed,
                        std::uint64_t stream_id);

struct Disc {
  Point center;
  double radius = 0.0;
};

using DiscSet = std::vector<Disc>;

/// Crofton: phi(B(z, r)) = 2 pi r.
double phi_disc(double r);

/// Half the measure of lines hitting two disjoint discs with radii
/// r1 >= r2 and centre distance h > r1 + r2.
double f_two_discs(double r1, double r2, double h);

/// phi of the union of two disjoint discs: 2 pi (r1 + r2) - 2 f.
double phi_pair(const DiscSet& discs);

/// phi of an arbitrary union of discs by adaptive Simpson over the direction.
/// For each direction the hit set in t is an exact union of intervals; the
/// direction range is split at every angle where two interval endpoints
/// coincide so the integrand is smooth on each piece.
double phi_union_quadrature(const DiscSet& discs, double abs_tol = 1e-8);

struct PairBoundCheck {
  std::size_t i = 0, j = 0;
  double intersection = 0.0;  // 2 f(r1, r2, h)
  bool far_applies = false;   // h > R^3
  double far_bound = 0.0;     // 8 R arcsin(2 / R^2)
  bool far_holds = true;
  bool close_applies = false;  // R <= (1 + eps) v
  double close_bound = 0.0;    // 2 pi r2 - (4 - eps pi) v
  bool close_holds = true;
};

struct SeparationReport {
  std::vector<PairBoundCheck> pairs;
  double phi_union = 0.0;
  double lower = 0.0;  // max_i 2 pi r_i
  double upper = 0.0;  // 2 pi sum_i r_i
  bool union_holds = true;

  bool all_hold() const;
};

/// Evaluates the explicit two-disc and union bounds for discs whose radii
/// all exceed the threshold v.
SeparationReport check_separation_bounds(const DiscSet& discs, double v,
                                         double eps);

/// Fraction of `samples` independent line samples (in the smallest origin
/// disc covering the union) that miss every disc. Converges to exp(-phi).
double miss_frequency(const DiscSet& discs, std::size_t samples,
                      std::uint64_t seed);

/// CSV with header `theta,t`, 17 significant digits per value.
void write_lines_csv(const LineSample& sample, std::ostream& out);
std::vector<Line> read_lines_csv(std::istream& in);
/// Sidecar metadata `{seed, stream_id, R_sim, count}`.
nlohmann::json sample_metadata(const LineSample& sample);

}  // namespace linetess
