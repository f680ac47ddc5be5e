#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "linetess/errors.hpp"
#include "linetess/experiments.hpp"
#include "linetess/extremes.hpp"
#include "linetess/measure_checks.hpp"
#include "linetess/tessellation.hpp"
#include "linetess/version.hpp"

namespace linetess::cli {
namespace {

struct UsageError : Error {
  using Error::Error;
};

struct AssertionFailed : Error {
  using Error::Error;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  return file;
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  auto file = open_output(path);
  file << text;
  if (!file.flush()) throw IoError("write failed: " + path);
}

double sampling_radius_for(double rho) { return window_radius(guard_q(rho)); }

struct SampleArgs {
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

void cmd_sample(const SampleArgs& a) {
  const LineSample sample =
      sample_lines(sampling_radius_for(a.rho), a.seed, a.stream);
  std::ostringstream csv;
  write_lines_csv(sample, csv);
  nlohmann::json meta = sample_metadata(sample);
  meta["version"] = kVersion;
  meta["config"] = {{"rho", a.rho}, {"seed", a.seed}, {"stream", a.stream}};
  auto file = open_output(a.out);
  file << csv.str();
  if (!file.flush()) throw IoError("write failed: " + a.out);
  auto side = open_output(a.out + ".json");
  side << meta.dump(2) << '\n';
  if (!side.flush()) throw IoError("write failed: " + a.out + ".json");
}

struct MeasureArgs {
  std::string check;
  std::uint64_t seed = 0;
  std::string out;
};

bool cmd_measure(const MeasureArgs& a, std::ostream& out) {
  const MeasureCheckReport rep = run_measure_check(a.check, a.seed);
  nlohmann::json j = rep.to_json();
  j["version"] = kVersion;
  j["config"] = {{"check", a.check}, {"seed", a.seed}};
  write_text(a.out, j.dump(2) + "\n", out);
  return rep.pass();
}

struct TessellateArgs {
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string lines;
  bool include_nonempty = false;
  std::string out;
};

LineSample load_sample(const std::string& path) {
  std::ifstream csv(path);
  if (!csv) throw IoError("cannot open " + path);
  std::ifstream side(path + ".json");
  if (!side) throw IoError("cannot open sidecar " + path + ".json");
  nlohmann::json meta;
  try {
    side >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad sidecar " + path + ".json: " + e.what());
  }
  LineSample sample;
  sample.lines = read_lines_csv(csv);
  try {
    sample.sampling_radius = meta.at("R_sim").get<double>();
    sample.seed = meta.at("seed").get<std::uint64_t>();
    sample.stream_id = meta.at("stream_id").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad sidecar " + path + ".json: " + e.what());
  }
  return sample;
}

void cmd_tessellate(const TessellateArgs& a, std::ostream& out) {
  const LineSample sample =
      a.lines.empty() ? sample_lines(sampling_radius_for(a.rho), a.seed, a.stream)
                      : load_sample(a.lines);
  const TessellationSummary s = enumerate_inballs(sample, a.rho);
  std::ostringstream text;
  write_summary_json(s, text, a.include_nonempty);
  write_text(a.out, text.str(), out);
}

struct ExperimentArgs {
  std::string kind;
  std::vector<double> rho;
  int reps = 1;
  std::vector<double> t{0.0};
  int r = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string config;
  std::string out;
  bool assert_ = false;
};

ExperimentConfig resolve(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw IoError("cannot open " + a.config);
    nlohmann::json j;
    try {
      in >> j;
      cfg = config_from_json(j.contains("config") ? j.at("config") : j);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("bad config " + a.config + ": " + e.what());
    }
  } else {
    if (a.kind.empty() || a.rho.empty()) {
      throw UsageError("experiment: --kind and --rho are required "
                       "unless --config is given");
    }
    cfg.kind = parse_experiment_kind(a.kind);
    cfg.rho = a.rho;
    cfg.replications = a.reps;
    cfg.t_grid = a.t;
    cfg.r = a.r;
    cfg.seed = a.seed;
  }
  cfg.workers = a.workers;
  cfg.validate();
  return cfg;
}

bool cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  const ExperimentConfig cfg = resolve(a);
  const ExperimentResult result = run_experiment(cfg);
  const std::string json = to_json(result).dump(2) + "\n";
  if (a.out.empty()) {
    out << json;
  } else {
    write_text(a.out + ".json", json, out);
    std::ostringstream csv;
    write_csv(result, csv);
    write_text(a.out + ".csv", csv.str(), out);
  }
  if (!a.assert_) return true;
  bool ok = true;
  for (const auto& v : assess(result)) {
    out << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
    ok = ok && v.pass;
  }
  return ok;
}

bool cmd_selftest(std::uint64_t seed, std::ostream& out) {
  bool all = true;
  auto report = [&](const std::string& name, bool pass,
                    const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    all = all && pass;
  };
  auto measure = [&](const MeasureCheckReport& rep) {
    report(rep.check, rep.pass(),
           fmt::format("{} cases, max deviation {:.3g}", rep.cases,
                       rep.max_deviation));
  };
  measure(check_crofton(seed, 20));
  measure(check_two_disc(seed, 20, 20));
  measure(check_bounds(seed, 0.1, 20));

  {
    const LineSample a = sample_lines(10.0, seed, 0);
    const LineSample b = sample_lines(10.0, seed, 0);
    bool same = a.lines.size() == b.lines.size();
    for (std::size_t i = 0; same && i < a.lines.size(); ++i) {
      same = a.lines[i].theta == b.lines[i].theta && a.lines[i].t == b.lines[i].t;
    }
    report("sample_determinism", same,
           fmt::format("{} lines", a.lines.size()));
  }
  {
    const double rho = 100.0;
    const LineSample sample = sample_lines(sampling_radius_for(rho), seed, 0);
    const TessellationSummary s = enumerate_inballs(sample, rho);
    const double cell = guarded_cell_min_inradius(s, 1);
    const bool chain =
        triangle_min_inradius(s, 1) <= cell && min_inradius(s, 1) <= cell;
    report("min_inradius_chain", chain,
           fmt::format("{} cells in window", s.counts.empty_inballs));
  }
  {
    // exponential(2 pi) draws by inversion should fit the typical-cell law
    RngStream rng(seed, 7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> draws(20000);
    for (double& x : draws) x = -std::log1p(-unit(rng.engine())) / kTwoPi;
    const double ks = ks_distance(draws, typical_inradius_cdf);
    report("ks_harness", ks < 0.02, fmt::format("KS {:.4f}", ks));
  }
  return all;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Poisson line tessellation inradius experiments", "linetess"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.allow_extras(false);

  auto add_seed = [](CLI::App* sub, std::uint64_t& seed) {
    sub->add_option("--seed", seed, "RNG seed")->envname("LINETESS_SEED");
  };

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Sample lines covering W_q(rho)");
  sample->add_option("--rho", sa.rho, "Window area")
      ->required()
      ->check(CLI::PositiveNumber);
  add_seed(sample, sa.seed);
  sample->add_option("--stream", sa.stream, "RNG stream id");
  sample->add_option("--out", sa.out, "CSV path; sidecar at <out>.json")
      ->required();

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "Hitting-measure checks");
  measure->add_option("--check", ma.check, "Check to run")
      ->required()
      ->check(CLI::IsMember({"crofton", "two-disc", "bounds"}));
  add_seed(measure, ma.seed);
  measure->add_option("--out", ma.out, "Report path (stdout if omitted)");

  TessellateArgs ta;
  auto* tess = app.add_subcommand("tessellate", "Enumerate cell inballs");
  tess->add_option("--rho", ta.rho, "Window area")
      ->required()
      ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));
  add_seed(tess, ta.seed);
  tess->add_option("--stream", ta.stream, "RNG stream id");
  tess->add_option("--lines", ta.lines,
                   "Line sample CSV with sidecar instead of sampling");
  tess->add_flag("--include-nonempty", ta.include_nonempty,
                 "Also export inballs met by another line");
  tess->add_option("--out", ta.out, "Summary path (stdout if omitted)");

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "Run a replication experiment");
  exp->add_option("--kind", ea.kind, "Experiment kind")
      ->check(CLI::IsMember({"min_law", "max_law", "typical_cell",
                             "triangle_shape", "small_triangle_count",
                             "poisson_moments"}));
  exp->add_option("--rho", ea.rho, "Window area(s)")
      ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));
  exp->add_option("--reps", ea.reps, "Replications per rho")
      ->check(CLI::PositiveNumber);
  exp->add_option("--t", ea.t, "t grid");
  exp->add_option("--r", ea.r, "Order statistic index")
      ->check(CLI::PositiveNumber);
  add_seed(exp, ea.seed);
  exp->add_option("--workers", ea.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  exp->add_option("--config", ea.config,
                  "Re-run the config embedded in a result JSON");
  exp->add_option("--out", ea.out, "Output prefix for .json and .csv");
  exp->add_flag("--assert", ea.assert_, "Exit 1 if a tolerance is violated");

  std::uint64_t st_seed = 0;
  auto* selftest = app.add_subcommand("selftest", "Quick consistency checks");
  add_seed(selftest, st_seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    bool ok = true;
    if (*sample) {
      cmd_sample(sa);
    } else if (*measure) {
      ok = cmd_measure(ma, out);
    } else if (*tess) {
      cmd_tessellate(ta, out);
    } else if (*exp) {
      ok = cmd_experiment(ea, out);
    } else if (*selftest) {
      ok = cmd_selftest(st_seed, out);
    }
    return ok ? kOk : kAssertionFailed;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InsufficientWindowError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kAssertionFailed;
  }
}

}  // namespace linetess::cli
