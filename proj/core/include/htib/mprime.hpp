#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "htib/bounds.hpp"
#include "htib/growth.hpp"

namespace htib {

enum class ScanMethod { kHti, kHtiRd, kHtiLower, kCatoni };

std::string_view scan_method_name(ScanMethod method);
std::optional<ScanMethod> scan_method_from_name(std::string_view name);

/// Ghost-sample-size search configuration. The target error count is fixed
/// before scanning; the scanned set is {lo, lo+step, ...} within [lo, hi],
/// restricted to integer multiples of the sample size for Catoni when
/// catoni_multiples is set.
struct MprimeScan {
  std::int64_t errors = 0;
  std::int64_t sample_size = 1;
  double log_delta = 0.0;
  GrowthModel growth = GrowthModel::sauer_shelah(1);
  ScanMethod method = ScanMethod::kHti;
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  std::int64_t step = 1;
  bool catoni_multiples = false;
  bool keep_trace = false;
  int threads = 0;  // 0: use available parallelism

  void validate() const;
};

/// Deterministic scan result: the minimum bound over the scanned points, with
/// ties broken toward the smaller ghost size, plus the optional (m', eps)
/// trace. Identical regardless of thread count or evaluation order.
struct MprimeResult {
  std::int64_t best_ghost = 0;
  double best_epsilon = 0.0;
  std::int64_t evaluations = 0;
  std::vector<std::pair<std::int64_t, double>> trace;
};

/// Evaluates the method's bound at every scanned ghost size and returns the
/// global minimum. Throws when the scanned set is empty.
MprimeResult optimize_mprime(const MprimeScan& scan);

/// Coarse-to-fine variant: scans with the given coarse step, then rescans
/// exhaustively within +-coarse_step of the coarse minimum. Cheaper on wide
/// ranges; may miss the global minimum of the jagged objective, so paper
/// reproductions use step 1.
MprimeResult optimize_mprime_refined(MprimeScan scan, std::int64_t coarse_step);

/// The m' ~= 4m rule of thumb for low anticipated risk.
std::int64_t heuristic_mprime(std::int64_t sample_size);

/// Default exhaustive scan range [1, 128 m]: wide enough to contain every
/// optimum observed on the study grids, including the near-100m outliers.
inline constexpr std::int64_t kDefaultRangeMultiplier = 128;

struct GainStudyConfig {
  std::vector<std::int64_t> sample_sizes{100, 200, 300, 500, 1000};
  std::vector<double> risks{0.0,  0.05, 0.10, 0.15, 0.20, 0.25,
                            0.30, 0.35, 0.40, 0.45, 0.50};
  std::vector<std::int64_t> vc_dims{5, 10, 20, 35};
  std::vector<double> deltas{0.0001, 0.0025, 0.05, 0.1};
  ScanMethod method = ScanMethod::kHti;
  std::int64_t range_multiplier = kDefaultRangeMultiplier;
  /// Scan lower end as a multiple of m; 0 means scan from 1. Setting both
  /// multipliers to 1 pins the scan to the single point m' = m.
  std::int64_t range_lo_multiplier = 0;
  std::int64_t step = 1;
  int threads = 0;

  /// The realizable subspace: same grid restricted to risk 0.
  GainStudyConfig realizable_only() const;
};

struct GainStudyRow {
  std::int64_t sample_size;
  double risk;
  std::int64_t errors;
  std::int64_t vc_dim;
  double delta;
  std::int64_t best_ghost;
  double best_epsilon;
  double baseline_epsilon;  // bound at m' = m
  double gain;              // 1 - best/baseline
};

struct GainStudyReport {
  std::vector<GainStudyRow> rows;
  double mean_gain = 0.0;
  double std_gain = 0.0;  // population standard deviation
  std::int64_t realizable_count = 0;
  double mean_gain_realizable = 0.0;
  double std_gain_realizable = 0.0;
};

/// Runs optimize_mprime on every grid combination and aggregates the relative
/// gain over the m' = m baseline, overall and on the risk-0 subspace.
/// Requires every risk * sample_size to be integral.
GainStudyReport gain_study(const GainStudyConfig& config);

}  // namespace htib
