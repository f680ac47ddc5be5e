#pragma once

// Cell inballs of the Poisson line tessellation, found through triples of
// lines: a disc tangent to three lines and met by no other line is exactly
// the inball of one bounded cell.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "linetess/geometry.hpp"
#include "linetess/line_process.hpp"

namespace linetess {

/// Radius of W_rho, the origin-centred disc of area rho.
double window_radius(double rho);

/// Guard window size q(rho) = (rho^(1/2) + rho^(1/4))^2.
double guard_q(double rho);

/// Extra sampling margin for large-inradius work: (log rho + 20) / (2 pi).
double max_law_margin(double rho);

struct InballRecord {
  Inball inball;
  Triangle triangle;
  std::optional<Cell> cell;
};

struct EnumerationCounts {
  std::uint64_t triples_considered = 0;
  std::uint64_t degenerate_skipped = 0;
  std::uint64_t empty_inballs = 0;
  std::uint64_t nonempty_dropped = 0;  // above the retention cap
};

struct EnumerationOptions {
  /// Non-empty inballs with a larger radius are counted but not stored.
  /// Empty inballs are always stored.
  double nonempty_radius_cap = std::numeric_limits<double>::infinity();
};

struct TessellationSummary {
  double rho = 0.0;
  double q_rho = 0.0;
  double sampling_radius = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  double nonempty_radius_cap = std::numeric_limits<double>::infinity();
  std::vector<InballRecord> records;  // incentre in W_rho, ordered by triple
  EnumerationCounts counts;
};

/// Runs over every unordered triple of sampled lines and keeps the inballs
/// whose incentre lies in W_rho. Throws InsufficientWindowError when the
/// sampling disc does not cover W_q(rho).
TessellationSummary enumerate_inballs(const LineSample& sample, double rho,
                                      const EnumerationOptions& options = {});

/// r-th smallest inradius over triples with triangle inside W_q(rho),
/// emptiness not required.
double triangle_min_inradius(const TessellationSummary& s, int r);

/// As triangle_min_inradius, restricted to empty inballs (actual cells).
double guarded_cell_min_inradius(const TessellationSummary& s, int r);

/// r-th smallest inradius over cells with incentre in W_rho.
double min_inradius(const TessellationSummary& s, int r);

struct MaxInradius {
  double value = 0.0;
  /// Every record in the top r is boundary safe, i.e. no unsampled line
  /// can cut its inball.
  bool trustworthy = false;
};

/// r-th largest inradius over cells with incentre in W_rho.
MaxInradius max_inradius(const TessellationSummary& s, int r);

/// Inradii of empty, boundary-safe inballs with incentre in W_rho.
std::vector<double> cell_inradii(const TessellationSummary& s);

/// Vertex counts of the cells achieving the r smallest inradii, reconstructed
/// by clipping a regular 64-gon inscribed in the sampling disc.
std::vector<int> smallest_cell_shapes(const TessellationSummary& s,
                                      const LineSample& sample, int r);

/// Records (in `s`) of the r smallest empty inballs with incentre in W_rho.
std::vector<const InballRecord*> smallest_cells(const TessellationSummary& s,
                                                int r);

/// JSON export `{rho, q_rho, R_sim, seed, records: [{z, r, triple, flags}]}`
/// with 17 significant digits. Non-empty records are skipped unless
/// `include_nonempty` is set.
void write_summary_json(const TessellationSummary& s, std::ostream& out,
                        bool include_nonempty = false);

}  // namespace linetess
