// htibound: generalization-bound calculator and study runner.
//
// Subcommands: bound (single query), sweep (CSV parameter sweeps),
// optimize (ghost-sample-size search), study (ghost-size gain study),
// crossover (chaining-vs-pessimistic sample-size scale).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "htib/bounds.hpp"
#include "htib/csv.hpp"
#include "htib/mprime.hpp"
#include "htib/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad number: " + text);
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_number(part));
  return values;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> values;
  for (const auto& part : split(text, ',')) {
    values.push_back(static_cast<std::int64_t>(std::llround(parse_number(part))));
  }
  return values;
}

// "lo:hi:step" -> linear grid
std::vector<double> parse_linear_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:step");
  return htib::linear_grid(parse_number(parts[0]), parse_number(parts[1]),
                           parse_number(parts[2]));
}

std::vector<double> parse_log_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("log grid must be lo:hi:points");
  return htib::log_int_grid(parse_number(parts[0]), parse_number(parts[1]),
                            static_cast<int>(std::llround(parse_number(parts[2]))));
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("range must be lo:hi");
  return {static_cast<std::int64_t>(std::llround(parse_number(parts[0]))),
          static_cast<std::int64_t>(std::llround(parse_number(parts[1])))};
}

void write_table(const std::string& path, const htib::CsvTable& table) {
  if (path.empty() || path == "-") {
    htib::write_csv(std::cout, table);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  htib::write_csv(out, table);
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

double checked_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  return delta;
}

std::int64_t resolve_errors(std::optional<std::int64_t> errors, std::optional<double> risk,
                            std::int64_t m) {
  if (errors.has_value() == risk.has_value()) {
    throw std::invalid_argument("give exactly one of --errors / --risk");
  }
  if (errors) return *errors;
  const double exact = *risk * static_cast<double>(m);
  const auto k = static_cast<std::int64_t>(std::llround(exact));
  if (std::abs(exact - static_cast<double>(k)) > 1e-9) {
    std::cout << "warning: risk " << htib::format_double(*risk)
              << " is not an integral error count at m=" << m << "; using errors=" << k
              << "\n";
  }
  return k;
}

htib::GrowthModel resolve_growth(std::optional<std::int64_t> vc_dim,
                                 std::optional<std::int64_t> class_size) {
  if (vc_dim.has_value() == class_size.has_value()) {
    throw std::invalid_argument("give exactly one of --d / --class-size");
  }
  if (vc_dim) return htib::GrowthModel::sauer_shelah(*vc_dim);
  return htib::GrowthModel::finite_class(*class_size);
}

struct BoundArgs {
  std::string method;
  std::int64_t m = 0;
  std::optional<std::int64_t> errors;
  std::optional<double> risk;
  double delta = 0.0;
  std::optional<std::int64_t> vc_dim;
  std::optional<std::int64_t> class_size;
  std::optional<std::int64_t> mprime;
  bool auto_mprime = false;
  std::optional<std::int64_t> target_errors;
  std::int64_t range_mult = htib::kDefaultRangeMultiplier;
  std::int64_t step = 1;
  std::optional<double> log_cover;
  std::optional<std::int64_t> sc_size;
  int threads = 0;
};

int run_bound(const BoundArgs& a) {
  const auto method = htib::method_from_name(a.method);
  if (!method) throw std::invalid_argument("unknown method: " + a.method);
  checked_delta(a.delta);
  const double log_delta = std::log(a.delta);
  const std::int64_t k = resolve_errors(a.errors, a.risk, a.m);

  htib::GrowthModel growth = htib::GrowthModel::finite_class(1);
  const bool needs_growth = *method != htib::Method::kMargin &&
                            *method != htib::Method::kSampleCompression &&
                            *method != htib::Method::kLangford;
  if (needs_growth) {
    growth = resolve_growth(a.vc_dim, a.class_size);
  }

  std::int64_t ghost = 1;
  const bool uses_ghost =
      *method == htib::Method::kHti || *method == htib::Method::kHtiRd ||
      *method == htib::Method::kHtiLower || *method == htib::Method::kCatoni ||
      *method == htib::Method::kMargin;
  if (uses_ghost) {
    if (a.mprime.has_value() == a.auto_mprime) {
      throw std::invalid_argument("this method needs exactly one of --mprime / --auto-mprime");
    }
    if (a.mprime) {
      ghost = *a.mprime;
    } else {
      if (*method == htib::Method::kMargin) {
        throw std::invalid_argument("--auto-mprime is not available for the margin bound");
      }
      htib::MprimeScan scan;
      scan.errors = a.target_errors.value_or(k);
      scan.sample_size = a.m;
      scan.log_delta = log_delta;
      scan.growth = growth;
      switch (*method) {
        case htib::Method::kHti: scan.method = htib::ScanMethod::kHti; break;
        case htib::Method::kHtiRd: scan.method = htib::ScanMethod::kHtiRd; break;
        case htib::Method::kHtiLower: scan.method = htib::ScanMethod::kHtiLower; break;
        default:
          scan.method = htib::ScanMethod::kCatoni;
          scan.catoni_multiples = true;
          break;
      }
      scan.lo = 1;
      scan.hi = a.range_mult * a.m;
      scan.step = a.step;
      scan.threads = a.threads;
      ghost = htib::optimize_mprime(scan).best_ghost;
    }
  }

  const htib::BoundResult r = htib::evaluate_method(*method, k, a.m, ghost, log_delta,
                                                    growth, a.sc_size, a.log_cover);
  std::cout << "method=" << htib::method_name(r.method)
            << " value=" << htib::format_double(r.value)
            << " vacuous=" << (r.vacuous ? 1 : 0) << " valid=" << (r.valid ? 1 : 0);
  if (r.ghost_size) std::cout << " mprime=" << *r.ghost_size;
  std::cout << "\n";
  return kExitOk;
}

struct SweepArgs {
  std::string vary;
  std::string grid;
  std::string grid_log;
  std::string grid_list;
  std::int64_t m = 0;
  std::optional<std::int64_t> vc_dim;
  std::optional<std::int64_t> class_size;
  double delta = 0.05;
  std::optional<double> risk;
  std::optional<std::int64_t> errors;
  std::string methods;
  std::optional<std::int64_t> mprime;
  bool auto_mprime = false;
  std::int64_t target_errors = 0;
  std::int64_t range_mult = htib::kDefaultRangeMultiplier;
  std::int64_t mprime_step = 1;
  std::optional<std::int64_t> sc_size;
  int threads = 0;
  std::string output;
};

int run_sweep_cmd(const SweepArgs& a) {
  htib::SweepSpec spec;
  const auto vary = htib::vary_from_name(a.vary);
  if (!vary) throw std::invalid_argument("unknown --vary: " + a.vary);
  spec.vary = *vary;

  const int given = (!a.grid.empty()) + (!a.grid_log.empty()) + (!a.grid_list.empty());
  if (given != 1) {
    throw std::invalid_argument("give exactly one of --grid / --grid-log / --grid-list");
  }
  if (!a.grid.empty()) spec.grid = parse_linear_grid(a.grid);
  if (!a.grid_log.empty()) spec.grid = parse_log_grid(a.grid_log);
  if (!a.grid_list.empty()) spec.grid = parse_list(a.grid_list);

  spec.sample_size = a.m;
  spec.vc_dim = a.vc_dim;
  spec.class_size = a.class_size;
  spec.delta = checked_delta(a.delta);
  if (a.errors) {
    spec.errors = a.errors;
  } else {
    spec.risk = a.risk.value_or(0.0);
  }
  spec.sc_size = a.sc_size;
  spec.threads = a.threads;

  for (const auto& name : split(a.methods, ',')) {
    const auto method = htib::method_from_name(name);
    if (!method) throw std::invalid_argument("unknown method: " + name);
    spec.methods.push_back(*method);
  }

  bool ghost_needed = false;
  for (htib::Method m : spec.methods) {
    ghost_needed = ghost_needed || m == htib::Method::kHti || m == htib::Method::kHtiRd ||
                   m == htib::Method::kHtiLower || m == htib::Method::kCatoni;
  }
  if (ghost_needed && spec.vary != htib::Vary::kGhostSize) {
    if (a.mprime.has_value() == a.auto_mprime) {
      throw std::invalid_argument("give exactly one of --mprime / --auto-mprime");
    }
  }
  spec.mprime.fixed = a.mprime;
  spec.mprime.target_errors = a.target_errors;
  spec.mprime.range_multiplier = a.range_mult;
  spec.mprime.step = a.mprime_step;

  const htib::SweepOutcome outcome = htib::run_sweep(spec);
  for (const auto& warning : outcome.warnings) std::cout << "warning: " << warning << "\n";
  write_table(a.output, outcome.table);
  return kExitOk;
}

struct OptimizeArgs {
  std::string method = "hti";
  std::int64_t m = 0;
  std::int64_t errors = 0;
  double delta = 0.0;
  std::optional<std::int64_t> vc_dim;
  std::optional<std::int64_t> class_size;
  std::string range;
  std::int64_t step = 1;
  std::optional<std::int64_t> coarse;
  bool catoni_multiples = false;
  std::string trace;
  int threads = 0;
};

int run_optimize(const OptimizeArgs& a) {
  const auto method = htib::scan_method_from_name(a.method);
  if (!method) throw std::invalid_argument("unknown scan method: " + a.method);
  htib::MprimeScan scan;
  scan.errors = a.errors;
  scan.sample_size = a.m;
  scan.log_delta = std::log(checked_delta(a.delta));
  scan.growth = resolve_growth(a.vc_dim, a.class_size);
  scan.method = *method;
  if (a.range.empty()) {
    scan.lo = 1;
    scan.hi = htib::kDefaultRangeMultiplier * a.m;
  } else {
    std::tie(scan.lo, scan.hi) = parse_range(a.range);
  }
  scan.step = a.step;
  scan.catoni_multiples = a.catoni_multiples;
  scan.keep_trace = !a.trace.empty();
  scan.threads = a.threads;

  const htib::MprimeResult result =
      a.coarse ? htib::optimize_mprime_refined(scan, *a.coarse) : htib::optimize_mprime(scan);
  std::cout << "method=" << htib::scan_method_name(*method)
            << " mprime_best=" << result.best_ghost
            << " epsilon_best=" << htib::format_double(result.best_epsilon)
            << " evaluations=" << result.evaluations << "\n";
  if (!a.trace.empty()) write_table(a.trace, htib::trace_table(result));
  return kExitOk;
}

struct StudyArgs {
  bool k0_only = false;
  std::string m_list;
  std::string risk_list;
  std::string d_list;
  std::string delta_list;
  std::string method = "hti";
  std::int64_t range_mult = htib::kDefaultRangeMultiplier;
  std::int64_t range_lo_mult = 0;
  std::int64_t step = 1;
  std::string output;
  int threads = 0;
};

int run_study(const StudyArgs& a) {
  htib::GainStudyConfig config;
  const auto method = htib::scan_method_from_name(a.method);
  if (!method) throw std::invalid_argument("unknown scan method: " + a.method);
  config.method = *method;
  if (!a.m_list.empty()) config.sample_sizes = parse_int_list(a.m_list);
  if (!a.risk_list.empty()) config.risks = parse_list(a.risk_list);
  if (!a.d_list.empty()) config.vc_dims = parse_int_list(a.d_list);
  if (!a.delta_list.empty()) config.deltas = parse_list(a.delta_list);
  if (a.k0_only) config.risks = {0.0};
  config.range_multiplier = a.range_mult;
  config.range_lo_multiplier = a.range_lo_mult;
  config.step = a.step;
  config.threads = a.threads;

  const htib::GainStudyReport report = htib::gain_study(config);
  if (!a.output.empty()) write_table(a.output, htib::gain_study_table(report));
  std::cout << "combinations " << report.rows.size() << "\n"
            << "mean_gain " << htib::format_double(report.mean_gain) << "\n"
            << "std_gain " << htib::format_double(report.std_gain) << "\n"
            << "realizable_combinations " << report.realizable_count << "\n";
  if (report.realizable_count > 0) {
    std::cout << "mean_gain_realizable " << htib::format_double(report.mean_gain_realizable)
              << "\n"
              << "std_gain_realizable " << htib::format_double(report.std_gain_realizable)
              << "\n";
  }
  return kExitOk;
}

int run_crossover() {
  const htib::CrossoverReport report = htib::lugosi_vp_crossover(1);
  std::cout << "crossover_constant " << htib::format_double(report.constant) << "\n"
            << "log10_sample_ratio " << htib::format_double(report.log10_sample_ratio)
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergeometric-tail-inversion generalization bounds"};
  app.require_subcommand(1);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Evaluate a single bound");
  bound->add_option("--method", bound_args.method, "Bound method tag")->required();
  bound->add_option("--m", bound_args.m, "Sample size")->required();
  bound->add_option("--errors", bound_args.errors, "Error count on the sample");
  bound->add_option("--risk", bound_args.risk, "Empirical risk (rounded to errors)");
  bound->add_option("--delta", bound_args.delta, "Confidence parameter")->required();
  bound->add_option("--d", bound_args.vc_dim, "VC dimension (Sauer-Shelah growth)");
  bound->add_option("--class-size", bound_args.class_size, "Finite hypothesis class size");
  bound->add_option("--mprime", bound_args.mprime, "Ghost sample size");
  bound->add_flag("--auto-mprime", bound_args.auto_mprime, "Optimize the ghost sample size");
  bound->add_option("--target-errors", bound_args.target_errors,
                    "Anticipated errors for --auto-mprime (default: --errors)");
  bound->add_option("--range-mult", bound_args.range_mult, "Auto scan range [1, mult*m]");
  bound->add_option("--step", bound_args.step, "Auto scan step");
  bound->add_option("--log-cover", bound_args.log_cover, "ln covering number (margin bound)");
  bound->add_option("--sc-size", bound_args.sc_size, "Compression set size (sc bound)");
  bound->add_option("--threads", bound_args.threads, "Worker threads (0 = all)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Write a CSV parameter sweep");
  sweep->add_option("--vary", sweep_args.vary, "risk | m | d | mprime")->required();
  sweep->add_option("--grid", sweep_args.grid, "Linear grid lo:hi:step");
  sweep->add_option("--grid-log", sweep_args.grid_log, "Log-spaced integer grid lo:hi:points");
  sweep->add_option("--grid-list", sweep_args.grid_list, "Explicit grid v1,v2,...");
  sweep->add_option("--m", sweep_args.m, "Sample size (when not varied)");
  sweep->add_option("--d", sweep_args.vc_dim, "VC dimension");
  sweep->add_option("--class-size", sweep_args.class_size, "Finite class size");
  sweep->add_option("--delta", sweep_args.delta, "Confidence parameter")->required();
  sweep->add_option("--risk", sweep_args.risk, "Fixed empirical risk");
  sweep->add_option("--errors", sweep_args.errors, "Fixed error count");
  sweep->add_option("--methods", sweep_args.methods, "Comma-separated method tags")->required();
  sweep->add_option("--mprime", sweep_args.mprime, "Fixed ghost sample size");
  sweep->add_flag("--auto-mprime", sweep_args.auto_mprime, "Optimize ghost size");
  sweep->add_option("--target-errors", sweep_args.target_errors,
                    "Anticipated errors for risk sweeps with --auto-mprime");
  sweep->add_option("--range-mult", sweep_args.range_mult, "Auto scan range [1, mult*m]");
  sweep->add_option("--mprime-step", sweep_args.mprime_step, "Auto scan step");
  sweep->add_option("--sc-size", sweep_args.sc_size, "Compression set size (sc bound)");
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all)");
  sweep->add_option("--output", sweep_args.output, "Output CSV path ('-' = stdout)");

  OptimizeArgs opt_args;
  auto* optimize = app.add_subcommand("optimize", "Search the best ghost sample size");
  optimize->add_option("--method", opt_args.method, "hti | hti-rd | hti-lower | catoni");
  optimize->add_option("--m", opt_args.m, "Sample size")->required();
  optimize->add_option("--errors", opt_args.errors, "Anticipated error count")->required();
  optimize->add_option("--delta", opt_args.delta, "Confidence parameter")->required();
  optimize->add_option("--d", opt_args.vc_dim, "VC dimension");
  optimize->add_option("--class-size", opt_args.class_size, "Finite class size");
  optimize->add_option("--range", opt_args.range, "Scan range lo:hi (default 1:128m)");
  optimize->add_option("--step", opt_args.step, "Scan step");
  optimize->add_option("--coarse", opt_args.coarse,
                       "Coarse-to-fine: coarse step, then exhaustive refinement");
  optimize->add_flag("--catoni-multiples", opt_args.catoni_multiples,
                     "Restrict Catoni scans to integer multiples of m");
  optimize->add_option("--trace", opt_args.trace, "Write the (mprime, epsilon) trace CSV here");
  optimize->add_option("--threads", opt_args.threads, "Worker threads (0 = all)");

  StudyArgs study_args;
  auto* study = app.add_subcommand("study", "Ghost-size gain study over a parameter grid");
  study->add_flag("--k0-only", study_args.k0_only, "Restrict to the realizable subspace");
  study->add_option("--m-list", study_args.m_list, "Sample sizes, comma-separated");
  study->add_option("--risk-list", study_args.risk_list, "Risks, comma-separated");
  study->add_option("--d-list", study_args.d_list, "VC dimensions, comma-separated");
  study->add_option("--delta-list", study_args.delta_list, "Confidences, comma-separated");
  study->add_option("--method", study_args.method, "Scan method (default hti)");
  study->add_option("--range-mult", study_args.range_mult, "Scan range upper end, mult*m");
  study->add_option("--range-lo-mult", study_args.range_lo_mult,
                    "Scan range lower end, mult*m (default: 1)");
  study->add_option("--step", study_args.step, "Scan step");
  study->add_option("--output", study_args.output, "Per-combination CSV path");
  study->add_option("--threads", study_args.threads, "Worker threads (0 = all)");

  auto* crossover = app.add_subcommand("crossover", "Chaining-vs-pessimistic crossover scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (bound->parsed()) return run_bound(bound_args);
    if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    if (optimize->parsed()) return run_optimize(opt_args);
    if (study->parsed()) return run_study(study_args);
    if (crossover->parsed()) return run_crossover();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
