#include "linetess/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "linetess/extremes.hpp"
#include "linetess/line_process.hpp"
#include "linetess/tessellation.hpp"

namespace linetess {

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::MinLaw, "min_law"},
    {ExperimentKind::MaxLaw, "max_law"},
    {ExperimentKind::TypicalCell, "typical_cell"},
    {ExperimentKind::TriangleShape, "triangle_shape"},
    {ExperimentKind::SmallTriangleCount, "small_triangle_count"},
    {ExperimentKind::PoissonMoments, "poisson_moments"},
};

// Runs fn(k) for k in [0, n) on up to `workers` threads; slot k of the
// result holds replication k whatever the schedule.
template <typename Fn>
auto run_replications(std::size_t n, int workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Out = decltype(fn(std::size_t{}));
  std::vector<Out> out(n);
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k) out[k] = fn(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        out[k] = fn(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double binomial_se(double p, std::size_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  double variance = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) out.mean += x;
  out.mean /= n;
  if (xs.size() > 1) {
    for (double x : xs) out.variance += (x - out.mean) * (x - out.mean);
    out.variance /= n - 1.0;
  }
  out.se = std::sqrt(out.variance / n);
  return out;
}

std::string key(std::string_view name, double t) {
  return fmt::format("{}@t={}", name, t);
}

ExperimentResult start(const ExperimentConfig& cfg, ExperimentKind kind) {
  cfg.validate();
  if (cfg.kind != kind) {
    throw DomainError(fmt::format("experiment kind mismatch: expected {}",
                                  to_string(kind)));
  }
  ExperimentResult result;
  result.config = cfg;
  return result;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         begin_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point begin_ =
      std::chrono::steady_clock::now();
};

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw DomainError(fmt::format("unknown experiment kind `{}`", name));
}

void ExperimentConfig::validate() const {
  if (rho.empty()) throw DomainError("experiment: rho grid is empty");
  for (double x : rho) {
    if (!(x >= 1.0)) throw DomainError("experiment: rho must be >= 1");
  }
  if (kind != ExperimentKind::TriangleShape && rho.size() != 1) {
    throw DomainError("experiment: only triangle_shape takes several rho");
  }
  if (replications < 1) throw DomainError("experiment: replications < 1");
  if (t_grid.empty()) throw DomainError("experiment: t grid is empty");
  if (r < 1) throw DomainError("experiment: r must be >= 1");
  if (workers < 1) throw DomainError("experiment: workers must be >= 1");
  if (kind == ExperimentKind::MinLaw ||
      kind == ExperimentKind::SmallTriangleCount ||
      kind == ExperimentKind::TypicalCell) {
    for (double t : t_grid) {
      if (t < 0.0) throw DomainError("experiment: t must be >= 0 for this kind");
    }
  }
}

double experiment_sampling_radius(ExperimentKind kind, double rho) {
  const double guard = window_radius(guard_q(rho));
  switch (kind) {
    case ExperimentKind::MaxLaw:
    case ExperimentKind::TypicalCell:
    case ExperimentKind::PoissonMoments:
      return std::max(guard, window_radius(rho) + max_law_margin(rho));
    default:
      return guard;
  }
}

ExperimentResult run_min_law(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentResult result = start(cfg, ExperimentKind::MinLaw);
  const double rho = cfg.rho.front();
  const double radius = experiment_sampling_radius(cfg.kind, rho);
  EnumerationOptions options;
  options.nonempty_radius_cap = 50.0 / rho;

  struct Outcome {
    std::optional<double> m;
    bool chain_checked = false;
    bool chain_ok = true;
    bool m_ne_cellmin = false;
    bool tr_ne_cellmin = false;
    std::size_t lines = 0;
  };
  const auto outcomes = run_replications(
      static_cast<std::size_t>(cfg.replications), cfg.workers,
      [&](std::size_t k) {
        Outcome o;
        const LineSample sample = sample_lines(radius, cfg.seed, k);
        o.lines = sample.lines.size();
        const TessellationSummary s = enumerate_inballs(sample, rho, options);
        try {
          o.m = min_inradius(s, cfg.r);
        } catch (const NotEnoughRecordsError&) {
          return o;
        }
        try {
          const double cell = guarded_cell_min_inradius(s, cfg.r);
          const double tri = triangle_min_inradius(s, cfg.r);
          o.chain_checked = true;
          o.chain_ok = tri <= cell && *o.m <= cell;
          o.m_ne_cellmin = *o.m != cell;
          o.tr_ne_cellmin = tri != cell;
        } catch (const NotEnoughRecordsError&) {
        }
        return o;
      });

  std::size_t valid = 0, checked = 0, violations = 0, m_ne = 0, tr_ne = 0;
  double lines = 0.0;
  for (const auto& o : outcomes) {
    lines += static_cast<double>(o.lines);
    if (!o.m) continue;
    ++valid;
    if (o.chain_checked) {
      ++checked;
      if (!o.chain_ok) ++violations;
      if (o.m_ne_cellmin) ++m_ne;
      if (o.tr_ne_cellmin) ++tr_ne;
    }
  }
  const std::size_t excluded = outcomes.size() - valid;
  for (double t : cfg.t_grid) {
    const double level = t / (2.0 * kPi * kPi * rho);
    std::size_t hits = 0;
    for (const auto& o : outcomes) {
      if (o.m && *o.m >= level) ++hits;
    }
    const double p = valid ? static_cast<double>(hits) / valid : 0.0;
    result.estimates.push_back({t, p, limit_survival_min(t, cfg.r),
                                binomial_se(p, valid), valid, excluded, {}});
  }
  auto& d = result.diagnostics;
  d["sampling_radius"] = radius;
  d["mean_lines"] = lines / static_cast<double>(outcomes.size());
  d["chain_checked"] = static_cast<double>(checked);
  d["chain_violations"] = static_cast<double>(violations);
  d["m_ne_cellmin_fraction"] =
      checked ? static_cast<double>(m_ne) / checked : 0.0;
  d["trmin_ne_cellmin_fraction"] =
      checked ? static_cast<double>(tr_ne) / checked : 0.0;
  result.runtime_seconds = clock.seconds();
  return result;
}

namespace {

// Empty inballs above the lowest threshold of interest, for the
// large-inradius experiments.
struct LargeCells {
  std::optional<MaxInradius> max;
  std::vector<std::pair<double, bool>> large;  // radius, boundary safe
};

std::vector<LargeCells> collect_large_cells(const ExperimentConfig& cfg) {
  const double rho = cfg.rho.front();
  const double radius = experiment_sampling_radius(ExperimentKind::MaxLaw, rho);
  double lowest = std::numeric_limits<double>::infinity();
  for (double t : cfg.t_grid) lowest = std::min(lowest, threshold_v(rho, t).v);
  EnumerationOptions options;
  options.nonempty_radius_cap = 0.0;
  return run_replications(
      static_cast<std::size_t>(cfg.replications), cfg.workers,
      [&](std::size_t k) {
        LargeCells out;
        const TessellationSummary s =
            enumerate_inballs(sample_lines(radius, cfg.seed, k), rho, options);
        try {
          out.max = max_inradius(s, cfg.r);
        } catch (const NotEnoughRecordsError&) {
        }
        for (const auto& rec : s.records) {
          if (rec.inball.flags.empty && rec.inball.radius > lowest) {
            out.large.emplace_back(rec.inball.radius,
                                   rec.inball.flags.boundary_safe);
          }
        }
        return out;
      });
}

}  // namespace

namespace {

ExperimentResult summarize_max_law(const ExperimentConfig& cfg,
                                   const std::vector<LargeCells>& outcomes) {
  ExperimentResult result;
  result.config = cfg;
  result.config.kind = ExperimentKind::MaxLaw;
  const double rho = cfg.rho.front();
  std::size_t valid = 0;
  for (const auto& o : outcomes) {
    if (o.max && o.max->trustworthy) ++valid;
  }
  const std::size_t excluded = outcomes.size() - valid;
  for (double t : cfg.t_grid) {
    const double v = threshold_v(rho, t).v;
    std::size_t below = 0;
    for (const auto& o : outcomes) {
      if (o.max && o.max->trustworthy && o.max->value <= v) ++below;
    }
    const double p = valid ? static_cast<double>(below) / valid : 0.0;
    result.estimates.push_back({t, p, limit_cdf_max(t, cfg.r),
                                binomial_se(p, valid), valid, excluded, {}});
  }
  result.diagnostics["sampling_radius"] =
      experiment_sampling_radius(ExperimentKind::MaxLaw, rho);
  result.diagnostics["untrustworthy"] = static_cast<double>(excluded);
  return result;
}

ExperimentResult summarize_moments(const ExperimentConfig& cfg,
                                   const std::vector<LargeCells>& outcomes) {
  ExperimentResult result;
  result.config = cfg;
  result.config.kind = ExperimentKind::PoissonMoments;
  const double rho = cfg.rho.front();
  for (double t : cfg.t_grid) {
    const Threshold th = threshold_v(rho, t);
    std::vector<double> counts;
    std::size_t excluded = 0;
    for (const auto& o : outcomes) {
      std::size_t u = 0;
      bool safe = true;
      for (const auto& [radius, boundary_safe] : o.large) {
        if (radius > th.v) {
          ++u;
          safe = safe && boundary_safe;
        }
      }
      if (!safe) {
        ++excluded;
        continue;
      }
      counts.push_back(static_cast<double>(u));
    }
    for (int n = 1; n <= 3; ++n) {
      std::vector<double> powers;
      powers.reserve(counts.size());
      for (double u : counts) powers.push_back(std::pow(u, n));
      const MeanSe m = mean_se(powers);
      result.estimates.push_back({t, m.mean, poisson_moment(n, th.tau), m.se,
                                  counts.size(), excluded,
                                  fmt::format("moment_{}", n)});
    }
    const MeanSe first = mean_se(counts);
    result.diagnostics[key("mean_exceedances", t)] = first.mean;
    result.diagnostics[key("variance_exceedances", t)] = first.variance;
    result.diagnostics[key("dispersion", t)] =
        first.mean > 0.0 ? first.variance / first.mean : 0.0;
  }
  result.diagnostics["sampling_radius"] =
      experiment_sampling_radius(ExperimentKind::PoissonMoments, rho);
  return result;
}

}  // namespace

ExperimentResult run_max_law(const ExperimentConfig& cfg) {
  Stopwatch clock;
  start(cfg, ExperimentKind::MaxLaw);
  ExperimentResult result = summarize_max_law(cfg, collect_large_cells(cfg));
  result.runtime_seconds = clock.seconds();
  return result;
}

ExperimentResult run_poisson_moments(const ExperimentConfig& cfg) {
  Stopwatch clock;
  start(cfg, ExperimentKind::PoissonMoments);
  ExperimentResult result = summarize_moments(cfg, collect_large_cells(cfg));
  result.runtime_seconds = clock.seconds();
  return result;
}

LargeInradiusResults run_max_law_and_moments(const ExperimentConfig& cfg) {
  Stopwatch clock;
  if (cfg.kind != ExperimentKind::MaxLaw &&
      cfg.kind != ExperimentKind::PoissonMoments) {
    throw DomainError("run_max_law_and_moments: kind must be max_law or "
                      "poisson_moments");
  }
  cfg.validate();
  const auto outcomes = collect_large_cells(cfg);
  LargeInradiusResults out{summarize_max_law(cfg, outcomes),
                           summarize_moments(cfg, outcomes)};
  out.max_law.runtime_seconds = out.poisson_moments.runtime_seconds =
      clock.seconds();
  return out;
}

ExperimentResult run_typical_cell(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentResult result = start(cfg, ExperimentKind::TypicalCell);
  const double rho = cfg.rho.front();
  const double radius = experiment_sampling_radius(cfg.kind, rho);
  EnumerationOptions options;
  options.nonempty_radius_cap = 0.0;

  struct Outcome {
    std::vector<double> radii;
    std::uint64_t cells = 0;
  };
  const auto outcomes = run_replications(
      static_cast<std::size_t>(cfg.replications), cfg.workers,
      [&](std::size_t k) {
        const TessellationSummary s =
            enumerate_inballs(sample_lines(radius, cfg.seed, k), rho, options);
        return Outcome{cell_inradii(s), s.counts.empty_inballs};
      });

  std::vector<double> pool;
  std::uint64_t cells = 0;
  double smallest_pool = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    pool.insert(pool.end(), o.radii.begin(), o.radii.end());
    cells += o.cells;
    smallest_pool = std::min(smallest_pool, static_cast<double>(o.radii.size()));
  }
  if (pool.empty()) throw EmptySampleError("typical_cell: no cells pooled");

  for (double v : cfg.t_grid) {
    const double below = static_cast<double>(
        std::count_if(pool.begin(), pool.end(), [v](double x) { return x <= v; }));
    const double p = below / static_cast<double>(pool.size());
    result.estimates.push_back({v, p, typical_inradius_cdf(v),
                                binomial_se(p, pool.size()), pool.size(), 0,
                                {}});
  }
  auto& d = result.diagnostics;
  d["ks_distance"] = ks_distance(pool, typical_inradius_cdf);
  d["cell_intensity"] =
      static_cast<double>(cells) / (rho * static_cast<double>(cfg.replications));
  d["cell_intensity_rel_error"] = d["cell_intensity"] / kPi - 1.0;
  auto mid = pool.begin() + static_cast<std::ptrdiff_t>(pool.size() / 2);
  std::nth_element(pool.begin(), mid, pool.end());
  d["median_inradius"] = *mid;
  d["pool_size"] = static_cast<double>(pool.size());
  d["first_replication_pool"] = static_cast<double>(outcomes.front().radii.size());
  d["smallest_replication_pool"] = smallest_pool;
  d["sampling_radius"] = radius;
  result.runtime_seconds = clock.seconds();
  return result;
}

ExperimentResult run_triangle_shape(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentResult result = start(cfg, ExperimentKind::TriangleShape);
  EnumerationOptions options;
  options.nonempty_radius_cap = 0.0;

  for (std::size_t g = 0; g < cfg.rho.size(); ++g) {
    const double rho = cfg.rho[g];
    const double radius = experiment_sampling_radius(cfg.kind, rho);
    // 0 = excluded, 1 = some non-triangle, 2 = all triangles
    const auto outcomes = run_replications(
        static_cast<std::size_t>(cfg.replications), cfg.workers,
        [&](std::size_t k) -> int {
          const std::uint64_t stream = (std::uint64_t{g} << 32) | k;
          const LineSample sample = sample_lines(radius, cfg.seed, stream);
          const TessellationSummary s = enumerate_inballs(sample, rho, options);
          try {
            for (const InballRecord* rec : smallest_cells(s, cfg.r)) {
              if (!rec->inball.flags.boundary_safe) return 0;
            }
            const auto shapes = smallest_cell_shapes(s, sample, cfg.r);
            return std::all_of(shapes.begin(), shapes.end(),
                               [](int n) { return n == 3; })
                       ? 2
                       : 1;
          } catch (const NotEnoughRecordsError&) {
            return 0;
          } catch (const PointOnLineError&) {
            return 0;
          }
        });
    const auto valid = static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(), [](int o) { return o > 0; }));
    const auto triangles = static_cast<std::size_t>(
        std::count(outcomes.begin(), outcomes.end(), 2));
    const double p = valid ? static_cast<double>(triangles) / valid : 0.0;
    result.estimates.push_back({rho, p, 1.0, binomial_se(p, valid), valid,
                                outcomes.size() - valid, {}});
  }
  result.runtime_seconds = clock.seconds();
  return result;
}

ExperimentResult run_small_triangle_count(const ExperimentConfig& cfg) {
  Stopwatch clock;
  ExperimentResult result = start(cfg, ExperimentKind::SmallTriangleCount);
  const double rho = cfg.rho.front();
  const double radius = experiment_sampling_radius(cfg.kind, rho);
  const double t_max = *std::max_element(cfg.t_grid.begin(), cfg.t_grid.end());
  EnumerationOptions options;
  options.nonempty_radius_cap = t_max / rho;

  const auto outcomes = run_replications(
      static_cast<std::size_t>(cfg.replications), cfg.workers,
      [&](std::size_t k) {
        const TessellationSummary s =
            enumerate_inballs(sample_lines(radius, cfg.seed, k), rho, options);
        std::vector<double> counts;
        for (double t : cfg.t_grid) {
          const double level = t / rho;
          counts.push_back(static_cast<double>(std::count_if(
              s.records.begin(), s.records.end(), [level](const InballRecord& x) {
                return x.inball.flags.triangle_in_guard &&
                       x.inball.radius < level;
              })));
        }
        return counts;
      });

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
    const double t = cfg.t_grid[i];
    std::vector<double> column;
    for (const auto& o : outcomes) column.push_back(o[i]);
    const MeanSe m = mean_se(column);
    result.estimates.push_back(
        {t, m.mean, 2.0 * kPi * kPi * t, m.se, column.size(), 0, {}});
    num += t * m.mean;
    den += t * t;
  }
  if (den > 0.0) {
    result.diagnostics["fitted_slope"] = num / den;
    result.diagnostics["fitted_slope_rel_error"] =
        num / den / (2.0 * kPi * kPi) - 1.0;
  }
  result.diagnostics["sampling_radius"] = radius;
  result.runtime_seconds = clock.seconds();
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::MinLaw:
      return run_min_law(cfg);
    case ExperimentKind::MaxLaw:
      return run_max_law(cfg);
    case ExperimentKind::TypicalCell:
      return run_typical_cell(cfg);
    case ExperimentKind::TriangleShape:
      return run_triangle_shape(cfg);
    case ExperimentKind::SmallTriangleCount:
      return run_small_triangle_count(cfg);
    case ExperimentKind::PoissonMoments:
      return run_poisson_moments(cfg);
  }
  throw DomainError("run_experiment: unknown kind");
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  return {{"kind", to_string(cfg.kind)},
          {"rho", cfg.rho},
          {"replications", cfg.replications},
          {"t", cfg.t_grid},
          {"r", cfg.r},
          {"seed", cfg.seed}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.kind = parse_experiment_kind(j.at("kind").get<std::string>());
  cfg.rho = j.at("rho").get<std::vector<double>>();
  cfg.replications = j.at("replications").get<int>();
  cfg.t_grid = j.at("t").get<std::vector<double>>();
  cfg.r = j.at("r").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

nlohmann::json to_json(const ExperimentResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : result.estimates) {
    nlohmann::json row = {{"t", e.t},
                          {"empirical", e.empirical},
                          {"theoretical", e.theoretical},
                          {"stderr", e.std_error},
                          {"n_valid", e.n_valid},
                          {"excluded", e.excluded}};
    if (!e.series.empty()) row["series"] = e.series;
    rows.push_back(std::move(row));
  }
  nlohmann::json out = {{"version", kVersion},
                        {"config", config_to_json(result.config)},
                        {"seed", result.config.seed},
                        {"estimates", std::move(rows)},
                        {"diagnostics", result.diagnostics}};
  if (result.config.kind == ExperimentKind::MaxLaw ||
      result.config.kind == ExperimentKind::PoissonMoments) {
    out["threshold"] = "v = (log(pi*rho) + t) / (2*pi), tau = exp(-t)";
  }
  if (result.config.kind == ExperimentKind::TriangleShape) {
    out["t_column"] = "rho";
  }
  return out;
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
  const bool series = result.config.kind == ExperimentKind::PoissonMoments;
  out << "t,empirical,theoretical,stderr,n_valid" << (series ? ",series" : "")
      << '\n';
  for (const auto& e : result.estimates) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{}", e.t, e.empirical,
                       e.theoretical, e.std_error, e.n_valid);
    if (series) out << ',' << e.series;
    out << '\n';
  }
}

std::vector<Verdict> assess(const ExperimentResult& result) {
  std::vector<Verdict> verdicts;
  const auto& d = result.diagnostics;
  auto diag = [&d](const std::string& name) {
    const auto it = d.find(name);
    return it == d.end() ? std::nan("") : it->second;
  };
  auto within = [&verdicts](std::string name, double value, double target,
                            double tol) {
    const bool pass = std::abs(value - target) <= tol;
    verdicts.push_back({std::move(name), pass,
                        fmt::format("{:.6g} vs {:.6g} (tol {:.3g})", value,
                                    target, tol)});
  };

  switch (result.config.kind) {
    case ExperimentKind::MinLaw:
      for (const auto& e : result.estimates) {
        within(fmt::format("survival t={}", e.t), e.empirical, e.theoretical,
               0.03);
      }
      verdicts.push_back({"ordering chain", diag("chain_violations") == 0.0,
                          fmt::format("{} violations", diag("chain_violations"))});
      break;
    case ExperimentKind::MaxLaw:
      for (const auto& e : result.estimates) {
        within(fmt::format("cdf t={}", e.t), e.empirical, e.theoretical, 0.05);
      }
      break;
    case ExperimentKind::TypicalCell: {
      const double ks = diag("ks_distance");
      verdicts.push_back({"ks distance", ks < 0.02, fmt::format("{:.6g}", ks)});
      within("cell intensity", diag("cell_intensity"), kPi, 0.03 * kPi);
      break;
    }
    case ExperimentKind::SmallTriangleCount:
      for (const auto& e : result.estimates) {
        within(fmt::format("mean count t={}", e.t), e.empirical, e.theoretical,
               0.05 * e.theoretical);
      }
      if (d.count("fitted_slope")) {
        within("fitted slope", diag("fitted_slope"), 2.0 * kPi * kPi,
               0.05 * 2.0 * kPi * kPi);
      }
      break;
    case ExperimentKind::PoissonMoments:
      for (const auto& e : result.estimates) {
        if (e.series == "moment_1") {
          within(fmt::format("mean exceedances t={}", e.t), e.empirical,
                 e.theoretical, 0.1);
        } else if (e.series == "moment_2") {
          within(fmt::format("second moment t={}", e.t), e.empirical,
                 e.theoretical, 0.15 * e.theoretical);
        }
      }
      for (double t : result.config.t_grid) {
        const double disp = diag(key("dispersion", t));
        verdicts.push_back({fmt::format("dispersion t={}", t),
                            disp >= 0.85 && disp <= 1.15,
                            fmt::format("{:.6g}", disp)});
      }
      break;
    case ExperimentKind::TriangleShape: {
      const auto& es = result.estimates;
      bool monotone = true;
      for (std::size_t i = 1; i < es.size(); ++i) {
        const double se = std::hypot(es[i].std_error, es[i - 1].std_error);
        if (es[i].empirical < es[i - 1].empirical - 2.0 * se) monotone = false;
      }
      verdicts.push_back({"nondecreasing within 2 se", monotone, ""});
      if (!es.empty()) {
        verdicts.push_back({"largest rho frequency > 0.8",
                            es.back().empirical > 0.8,
                            fmt::format("{:.6g}", es.back().empirical)});
      }
      break;
    }
  }
  return verdicts;
}

}  // namespace linetess
