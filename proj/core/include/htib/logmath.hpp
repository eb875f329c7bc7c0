#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace htib {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// A probability carried as its natural logarithm. The log value is always
/// <= 0, with -inf encoding probability exactly 0. Thresholds like
/// delta / (4 tau(m+m')) underflow a linear double long before their logs
/// become unrepresentable, so every tail and threshold in this library stays
/// in log space end to end.
class LogProb {
 public:
  constexpr LogProb() = default;  // probability 0

  /// Wraps a log-probability. Small positive drift from float summation is
  /// clamped back to 0 (probability 1); anything clearly above 0 is a bug.
  static LogProb from_log(double log_value);

  static constexpr LogProb zero() { return LogProb{}; }
  static constexpr LogProb one() { return LogProb{0.0}; }

  constexpr double log() const { return log_; }
  double prob() const { return std::exp(log_); }

  constexpr bool is_zero() const { return log_ == kNegInf; }
  constexpr bool is_one() const { return log_ == 0.0; }

  friend constexpr auto operator<=>(LogProb a, LogProb b) = default;

 private:
  explicit constexpr LogProb(double lg) : log_(lg) {}
  double log_ = kNegInf;
};

/// ln(n!) from a lazily built lookup table, falling back to a Stirling series
/// beyond the table. Accurate to better than 1e-13 relative either way.
double log_factorial(std::int64_t n);

/// Overrides the table size (default 2^20 entries). Must be called before the
/// first log_factorial() evaluation; throws std::logic_error afterwards.
void set_log_factorial_cache_limit(std::int64_t entries);
std::int64_t log_factorial_cache_limit();

/// ln C(n, r); -inf when r < 0 or r > n (the C(N, -n) = 0 convention).
double log_binom(std::int64_t n, std::int64_t r);

/// log(exp(a) + exp(b)) without leaving log space.
double log_sum_exp(double a, double b);

/// log(1 - exp(log_x)) for log_x <= 0, stable at both ends.
double log1m_exp(double log_x);

/// Streaming log-sum-exp: terms are exponentiated relative to the running
/// maximum and accumulated with Kahan compensation, so sums over thousands of
/// pmf terms keep full double precision.
class LogSumAccum {
 public:
  void add(double log_term);

  /// Relative weight exp(log_term - current_max) a term would enter with.
  double relative_weight(double log_term) const {
    return std::exp(log_term - max_log_);
  }
  /// Current linear-domain sum, relative to the running maximum.
  double relative_sum() const { return sum_; }
  bool empty() const { return max_log_ == kNegInf; }

  double log() const;

 private:
  double max_log_ = kNegInf;
  double sum_ = 0.0;
  double comp_ = 0.0;  // Kahan compensation
};

}  // namespace htib
