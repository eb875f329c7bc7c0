#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "htib/bounds.hpp"
#include "htib/csv.hpp"
#include "htib/mprime.hpp"

namespace htib {

enum class Vary { kRisk, kSampleSize, kVcDim, kGhostSize };

std::string_view vary_name(Vary vary);
std::optional<Vary> vary_from_name(std::string_view name);

/// How sweeps pick the ghost size for the methods that take one. Either a
/// fixed value, or a per-method exhaustive optimization: once at
/// target_errors for risk sweeps, per grid point otherwise. Catoni scans
/// integer multiples of the sample size.
struct MprimePolicy {
  std::optional<std::int64_t> fixed;
  std::int64_t target_errors = 0;
  std::int64_t range_multiplier = kDefaultRangeMultiplier;
  std::int64_t step = 1;
};

struct SweepSpec {
  Vary vary = Vary::kRisk;
  std::vector<double> grid;  // non-empty, strictly increasing; integral except for risk

  std::int64_t sample_size = 0;            // fixed m (ignored when varied)
  std::optional<std::int64_t> vc_dim;      // Sauer-Shelah growth (ignored when varied)
  std::optional<std::int64_t> class_size;  // finite-class growth instead
  double delta = 0.05;
  double risk = 0.0;                  // fixed risk; errors wins when set
  std::optional<std::int64_t> errors;
  std::optional<std::int64_t> sc_size;  // compression size for the sc method (default: vc_dim)

  std::vector<Method> methods;
  MprimePolicy mprime;
  int threads = 0;

  void validate() const;
};

struct SweepOutcome {
  CsvTable table;
  std::vector<std::string> warnings;  // non-integral risk roundings and the like
};

/// Evaluates every method on every grid point. Row order follows the grid;
/// output is byte-identical across runs and thread counts.
SweepOutcome run_sweep(const SweepSpec& spec);

/// Evaluates one method at explicit parameters (sweep building block, also
/// behind the CLI's single-bound command).
BoundResult evaluate_method(Method method, std::int64_t errors, std::int64_t sample_size,
                            std::int64_t ghost_size, double log_delta,
                            const GrowthModel& growth,
                            std::optional<std::int64_t> sc_size = std::nullopt,
                            std::optional<double> log_cover = std::nullopt);

std::vector<double> linear_grid(double lo, double hi, double step);
/// Log-spaced integer grid: `points` values from lo to hi, rounded to the
/// nearest integer with duplicates removed.
std::vector<double> log_int_grid(double lo, double hi, int points);

CsvTable gain_study_table(const GainStudyReport& report);
CsvTable trace_table(const MprimeResult& result);

}  // namespace htib
