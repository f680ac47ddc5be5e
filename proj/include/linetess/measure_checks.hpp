#pragma once

// Seeded verification suites for the hitting measure: Crofton for single
// discs, the two-disc closed form and the separation bounds.

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace linetess {

struct MeasureCheckReport {
  std::string check;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;

  bool pass() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// |phi_union_quadrature(B(z, r)) - 2 pi r| over random r in (0.01, 100).
MeasureCheckReport check_crofton(std::uint64_t seed, std::size_t cases = 100,
                                 double tolerance = 1e-8);

/// |quadrature - 2 f| over random disjoint pairs, plus strict decrease and
/// positivity of f along random chains h_1 < h_2 < ... (a chain with a
/// non-decreasing step counts as a failure).
MeasureCheckReport check_two_disc(std::uint64_t seed, std::size_t pairs = 200,
                                  std::size_t chains = 200,
                                  double tolerance = 1e-7);

/// Random disc sets with radii above v in both the far (h > R^3) and the
/// close (R <= (1 + eps) v) regimes; every applicable inequality must hold.
/// max_deviation is the largest (lhs - bound), negative when all hold.
MeasureCheckReport check_bounds(std::uint64_t seed, double eps = 0.1,
                                std::size_t cases = 200);

/// Dispatch on "crofton", "two-disc" or "bounds"; DomainError otherwise.
MeasureCheckReport run_measure_check(std::string_view name,
                                     std::uint64_t seed);

}  // namespace linetess
