#pragma once

// Replication harness: each experiment draws independent line samples,
// reduces every replication to a few statistics and compares the
// empirical frequencies with the limit laws.
//
// Replication k of an experiment uses RNG stream k (offset by the grid index
// for multi-rho experiments) and results are merged in replication order,
// so the output does not depend on the number of workers.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "linetess/version.hpp"

namespace linetess {

enum class ExperimentKind {
  MinLaw,
  MaxLaw,
  TypicalCell,
  TriangleShape,
  SmallTriangleCount,
  PoissonMoments,
};

std::string_view to_string(ExperimentKind kind);
/// Throws DomainError for unknown names.
ExperimentKind parse_experiment_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::MinLaw;
  /// One value, except for TriangleShape which takes an ascending grid.
  std::vector<double> rho;
  int replications = 1;
  std::vector<double> t_grid{0.0};
  int r = 1;
  std::uint64_t seed = 0;
  int workers = 1;

  void validate() const;
};

struct Estimate {
  double t = 0.0;  // rho for TriangleShape rows
  double empirical = 0.0;
  double theoretical = 0.0;
  double std_error = 0.0;
  std::size_t n_valid = 0;
  std::size_t excluded = 0;
  std::string series;  // moment order for PoissonMoments, empty otherwise
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<Estimate> estimates;
  std::map<std::string, double> diagnostics;
  double runtime_seconds = 0.0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentResult run_min_law(const ExperimentConfig& cfg);
ExperimentResult run_max_law(const ExperimentConfig& cfg);
ExperimentResult run_typical_cell(const ExperimentConfig& cfg);
ExperimentResult run_triangle_shape(const ExperimentConfig& cfg);
ExperimentResult run_small_triangle_count(const ExperimentConfig& cfg);
ExperimentResult run_poisson_moments(const ExperimentConfig& cfg);

struct LargeInradiusResults {
  ExperimentResult max_law;
  ExperimentResult poisson_moments;
};

/// Max law and exceedance moments computed from one set of replications.
/// Each part is identical to what run_max_law / run_poisson_moments return
/// for the same config.
LargeInradiusResults run_max_law_and_moments(const ExperimentConfig& cfg);

/// Sampling radius used by an experiment kind at a given rho.
double experiment_sampling_radius(ExperimentKind kind, double rho);

/// Config echo (without worker count or timing) plus estimates.
nlohmann::json to_json(const ExperimentResult& result);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// `t,empirical,theoretical,stderr,n_valid`, with a trailing `series`
/// column for PoissonMoments.
void write_csv(const ExperimentResult& result, std::ostream& out);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Tolerance checks used by `experiment --assert`.
std::vector<Verdict> assess(const ExperimentResult& result);

}  // namespace linetess
