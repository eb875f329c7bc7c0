#include "htib/logmath.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace htib {

namespace {

constexpr std::int64_t kDefaultCacheLimit = std::int64_t{1} << 20;
constexpr std::int64_t kMinCacheLimit = 64;

std::atomic<std::int64_t> g_cache_limit{kDefaultCacheLimit};
std::atomic<bool> g_cache_built{false};

const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    g_cache_built.store(true, std::memory_order_release);
    const auto n = g_cache_limit.load(std::memory_order_acquire);
    std::vector<double> t(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    return t;
  }();
  return table;
}

// Stirling series for ln(n!), n >= kMinCacheLimit. The truncation error is
// below 1/(1680 n^7), i.e. < 1e-16 absolute already at n = 64.
double stirling_log_factorial(std::int64_t n) {
  const double x = static_cast<double>(n);
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0)));
  return (x + 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

LogProb LogProb::from_log(double log_value) {
  if (std::isnan(log_value) || log_value > 1e-9) {
    throw std::invalid_argument("LogProb: log value above 0");
  }
  return LogProb{log_value > 0.0 ? 0.0 : log_value};
}

double log_factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  const auto& table = factorial_table();
  if (static_cast<std::size_t>(n) < table.size()) {
    return table[static_cast<std::size_t>(n)];
  }
  return stirling_log_factorial(n);
}

void set_log_factorial_cache_limit(std::int64_t entries) {
  if (entries < kMinCacheLimit) {
    throw std::invalid_argument("log_factorial cache limit below minimum");
  }
  if (g_cache_built.load(std::memory_order_acquire)) {
    throw std::logic_error("log_factorial cache already built");
  }
  g_cache_limit.store(entries, std::memory_order_release);
}

std::int64_t log_factorial_cache_limit() {
  return g_cache_limit.load(std::memory_order_acquire);
}

double log_binom(std::int64_t n, std::int64_t r) {
  if (n < 0) throw std::invalid_argument("log_binom: negative n");
  if (r < 0 || r > n) return kNegInf;
  return log_factorial(n) - log_factorial(r) - log_factorial(n - r);
}

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double log1m_exp(double log_x) {
  if (log_x > 0.0) throw std::invalid_argument("log1m_exp: log_x above 0");
  if (log_x == kNegInf) return 0.0;
  // Standard split: expm1 near 0, log1p otherwise.
  if (log_x > -std::numbers::ln2) return std::log(-std::expm1(log_x));
  return std::log1p(-std::exp(log_x));
}

void LogSumAccum::add(double log_term) {
  if (log_term == kNegInf) return;
  if (log_term <= max_log_) {
    const double y = std::exp(log_term - max_log_) - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  } else {
    const double scale = empty() ? 0.0 : std::exp(max_log_ - log_term);
    sum_ = sum_ * scale;
    comp_ = comp_ * scale;
    max_log_ = log_term;
    const double y = 1.0 - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
}

double LogSumAccum::log() const {
  if (empty()) return kNegInf;
  return max_log_ + std::log(sum_);
}

}  // namespace htib
