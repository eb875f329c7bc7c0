#include "htib/exactref.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace htib::exactref {

namespace {

std::atomic<std::int64_t> g_population_cap{256};

void check_cap(std::int64_t population) {
  if (population > g_population_cap.load(std::memory_order_relaxed)) {
    throw std::invalid_argument("exactref: population exceeds the oracle cap");
  }
}

}  // namespace

BigInt exact_binom(std::int64_t n, std::int64_t r) {
  if (n < 0) throw std::invalid_argument("exact_binom: negative n");
  if (r < 0 || r > n) return BigInt{0};
  r = std::min(r, n - r);
  BigInt result{1};
  for (std::int64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;  // exact: C(n-r+i, i) is integral
  }
  return result;
}

Rational exact_hyp_tail(const HypParams& p) {
  p.validate();
  check_cap(p.population);
  BigInt numerator{0};
  for (std::int64_t j = 0; j <= p.drawn; ++j) {
    numerator += exact_binom(p.successes, j) *
                 exact_binom(p.population - p.successes, p.draws - j);
  }
  return Rational{numerator, exact_binom(p.population, p.draws)};
}

Rational exact_hyp_tail_berkopec(const HypParams& p) {
  p.validate();
  check_cap(p.population);
  BigInt numerator{0};
  for (std::int64_t J = p.successes; J <= p.population - p.draws + p.drawn; ++J) {
    numerator += exact_binom(J, p.drawn) *
                 exact_binom(p.population - J - 1, p.draws - p.drawn - 1);
  }
  return Rational{numerator, exact_binom(p.population, p.draws)};
}

std::int64_t exact_hyp_tail_inv(std::int64_t drawn, std::int64_t draws,
                                const Rational& delta, std::int64_t population) {
  if (drawn < 0 || drawn >= draws || draws > population) {
    throw std::invalid_argument("exact_hyp_tail_inv requires 0 <= drawn < draws <= population");
  }
  if (!(delta > 0 && delta < 1)) {
    throw std::invalid_argument("exact_hyp_tail_inv requires delta in (0, 1)");
  }
  check_cap(population);
  const std::int64_t hi = population - draws + drawn + 1;
  for (std::int64_t K = drawn + 1; K <= hi; ++K) {
    if (exact_hyp_tail({drawn, draws, K, population}) <= delta) return K;
  }
  return hi;  // tail at hi is exactly 0, so the scan cannot get here
}

std::int64_t population_cap() {
  return g_population_cap.load(std::memory_order_relaxed);
}

void set_population_cap(std::int64_t cap) {
  if (cap < 1) throw std::invalid_argument("population cap must be positive");
  g_population_cap.store(cap, std::memory_order_relaxed);
}

double log_value(const BigInt& value) {
  if (value <= 0) throw std::invalid_argument("log_value: argument must be positive");
  const auto bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 63) return std::log(value.convert_to<double>());
  const unsigned shift = bits - 63;
  const double mantissa = BigInt{value >> shift}.convert_to<double>();
  return std::log(mantissa) + static_cast<double>(shift) * std::numbers::ln2;
}

}  // namespace htib::exactref
