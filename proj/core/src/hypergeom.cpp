#include "htib/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace htib {

namespace {

// Remaining-mass cutoff for tail sums: once the terms decay geometrically and
// the bound on everything not yet added drops below this fraction of the
// accumulated sum, the double result can no longer change.
constexpr double kTailCutoff = 1e-18;

void check_log_delta(double log_delta) {
  if (!(log_delta < 0.0) || std::isinf(log_delta)) {
    throw std::invalid_argument("log_delta must lie in (-inf, 0)");
  }
}

void check_inverse_domain(std::int64_t drawn, std::int64_t draws, std::int64_t population) {
  if (drawn < 0 || draws > population) {
    throw std::invalid_argument("pseudo-inverse requires 0 <= drawn < draws <= population");
  }
  if (drawn >= draws) {
    // Hyp(m, m, K, M) = 1 for every K, so Def 1 has no solution at drawn == draws.
    throw std::invalid_argument("upper pseudo-inverse is ill-defined for drawn >= draws");
  }
}

}  // namespace

void HypParams::validate() const {
  if (drawn < 0 || drawn > draws || draws > population || successes < 0 ||
      successes > population) {
    throw std::invalid_argument(
        "HypParams requires 0 <= drawn <= draws <= population and 0 <= successes <= population");
  }
}

LogProb hyp_pmf_log(const HypParams& p) {
  // Total in `drawn`: impossible counts (including drawn > draws) have
  // probability 0 under the C(N, -n) = 0 convention.
  if (p.draws < 0 || p.draws > p.population || p.successes < 0 ||
      p.successes > p.population) {
    throw std::invalid_argument(
        "hyp_pmf_log requires 0 <= draws <= population and 0 <= successes <= population");
  }
  if (p.drawn < 0 || p.drawn > p.draws || p.drawn > p.successes ||
      p.draws - p.drawn > p.population - p.successes) {
    return LogProb::zero();
  }
  const double lp = log_binom(p.successes, p.drawn) +
                    log_binom(p.population - p.successes, p.draws - p.drawn) -
                    log_binom(p.population, p.draws);
  return LogProb::from_log(std::min(lp, 0.0));
}

LogProb hyp_tail_log(const HypParams& p) {
  p.validate();
  const auto k = p.drawn, m = p.draws, K = p.successes, M = p.population;
  if (K <= k || k == m) return LogProb::one();
  if (K > M - m + k) return LogProb::zero();

  const double lb_Mm = log_binom(M, m);
  const std::int64_t j_lo = std::max<std::int64_t>(0, m - (M - K));
  LogSumAccum acc;
  for (std::int64_t j = k; j >= j_lo; --j) {
    const double lp = log_binom(K, j) + log_binom(M - K, m - j) - lb_Mm;
    acc.add(lp);
    if (j > j_lo) {
      // Term ratio pmf(j-1)/pmf(j); strictly decreasing as j descends, so a
      // ratio below 1 bounds everything still to come by a geometric series.
      const double r = (static_cast<double>(j) * static_cast<double>(M - K - m + j)) /
                       (static_cast<double>(K - j + 1) * static_cast<double>(m - j + 1));
      if (r < 1.0 &&
          acc.relative_weight(lp) * r / (1.0 - r) <= acc.relative_sum() * kTailCutoff) {
        break;
      }
    }
  }
  return LogProb::from_log(std::min(acc.log(), 0.0));
}

LogProb hyp_upper_tail_log(const HypParams& p) {
  p.validate();
  const auto k = p.drawn, m = p.draws, K = p.successes, M = p.population;
  if (K > M - m + k) return LogProb::one();
  const std::int64_t j_hi = std::min(m, K);
  if (k >= j_hi) return LogProb::zero();

  const double lb_Mm = log_binom(M, m);
  LogSumAccum acc;
  for (std::int64_t j = k + 1; j <= j_hi; ++j) {
    const double lp = log_binom(K, j) + log_binom(M - K, m - j) - lb_Mm;
    acc.add(lp);
    if (j < j_hi) {
      const double r = (static_cast<double>(K - j) * static_cast<double>(m - j)) /
                       (static_cast<double>(j + 1) * static_cast<double>(M - K - m + j + 1));
      if (r < 1.0 &&
          acc.relative_weight(lp) * r / (1.0 - r) <= acc.relative_sum() * kTailCutoff) {
        break;
      }
    }
  }
  return LogProb::from_log(std::min(acc.log(), 0.0));
}

LogProb hyp_tail_berkopec_log(const HypParams& p) {
  p.validate();
  const auto k = p.drawn, m = p.draws, K = p.successes, M = p.population;
  if (K <= k || k == m) return LogProb::one();
  if (K > M - m + k) return LogProb::zero();

  const double lb_Mm = log_binom(M, m);
  LogSumAccum acc;
  for (std::int64_t J = M - m + k; J >= K; --J) {
    const double lp = log_binom(J, k) + log_binom(M - J - 1, m - k - 1) - lb_Mm;
    acc.add(lp);
    if (J > K) {
      const double r = (static_cast<double>(J - k) * static_cast<double>(M - J)) /
                       (static_cast<double>(J) * static_cast<double>(M - J - m + k + 1));
      if (r < 1.0 &&
          acc.relative_weight(lp) * r / (1.0 - r) <= acc.relative_sum() * kTailCutoff) {
        break;
      }
    }
  }
  return LogProb::from_log(std::min(acc.log(), 0.0));
}

std::int64_t hyp_tail_inv_bisect(std::int64_t drawn, std::int64_t draws,
                                 double log_delta, std::int64_t population) {
  check_inverse_domain(drawn, draws, population);
  check_log_delta(log_delta);
  std::int64_t lo = drawn;
  std::int64_t hi = population - draws + drawn + 1;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (hyp_tail_log({drawn, draws, mid, population}).log() > log_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

std::int64_t hyp_tail_inv_linear(std::int64_t drawn, std::int64_t draws,
                                 double log_delta, std::int64_t population) {
  check_inverse_domain(drawn, draws, population);
  check_log_delta(log_delta);
  const auto k = drawn, m = draws, M = population;
  std::int64_t K = M - m + k;
  double log_term = log_binom(K, k) + log_binom(M - K - 1, M - K - m + k) - log_binom(M, m);
  double log_sum = log_term;
  while (log_sum <= log_delta && K > k) {
    log_term += std::log(static_cast<double>(K - k) * static_cast<double>(M - K)) -
                std::log(static_cast<double>(K) * static_cast<double>(M - K - m + k + 1));
    log_sum = log_sum_exp(log_sum, log_term);
    --K;
  }
  return K + 1;
}

std::int64_t hyp_tail_lower_inv(std::int64_t drawn, std::int64_t draws,
                                double log_delta, std::int64_t population) {
  if (drawn < 0 || drawn > draws || draws > population) {
    throw std::invalid_argument("lower pseudo-inverse requires 0 <= drawn <= draws <= population");
  }
  check_log_delta(log_delta);
  if (drawn == draws) return population;  // the tail is 1 on all of [0, population]
  if (log_delta > -std::numbers::ln2) {
    // Near delta = 1 the lower tail saturates at 0 in log space; the
    // complement keeps the comparison sharp.
    return hyp_tail_lower_inv_complement(drawn, draws, log1m_exp(log_delta), population);
  }
  std::int64_t lo = 0;                                      // tail = 1 >= delta
  std::int64_t hi = population - draws + drawn + 1;         // tail = 0 < delta
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (hyp_tail_log({drawn, draws, mid, population}).log() >= log_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::int64_t hyp_tail_lower_inv_complement(std::int64_t drawn, std::int64_t draws,
                                           double log_upper_delta,
                                           std::int64_t population) {
  if (drawn < 0 || drawn > draws || draws > population) {
    throw std::invalid_argument("lower pseudo-inverse requires 0 <= drawn <= draws <= population");
  }
  if (!(log_upper_delta < 0.0)) {
    throw std::invalid_argument("log_upper_delta must be negative");
  }
  if (drawn == draws) return population;
  std::int64_t lo = 0;                                      // upper tail = 0 <= bound
  std::int64_t hi = population - draws + drawn + 1;         // upper tail = 1 > bound
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (hyp_upper_tail_log({drawn, draws, mid, population}).log() <= log_upper_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

LogProb bin_tail_log(std::int64_t trials, std::int64_t errors, double p) {
  if (trials < 0 || errors < 0 || errors > trials) {
    throw std::invalid_argument("bin_tail_log requires 0 <= errors <= trials");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bin_tail_log requires p in [0, 1]");
  }
  if (errors == trials || p == 0.0) return LogProb::one();
  if (p == 1.0) return LogProb::zero();

  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  LogSumAccum acc;
  for (std::int64_t j = errors; j >= 0; --j) {
    const double lp = log_binom(trials, j) + static_cast<double>(j) * log_p +
                      static_cast<double>(trials - j) * log_q;
    acc.add(lp);
    if (j > 0) {
      const double r = (static_cast<double>(j) * (1.0 - p)) /
                       (static_cast<double>(trials - j + 1) * p);
      if (r < 1.0 &&
          acc.relative_weight(lp) * r / (1.0 - r) <= acc.relative_sum() * kTailCutoff) {
        break;
      }
    }
  }
  return LogProb::from_log(std::min(acc.log(), 0.0));
}

double bin_tail_inv(std::int64_t trials, std::int64_t errors, double log_delta) {
  if (trials < 0 || errors < 0 || errors > trials) {
    throw std::invalid_argument("bin_tail_inv requires 0 <= errors <= trials");
  }
  check_log_delta(log_delta);
  if (errors == trials) return 1.0;
  double lo = 0.0;  // Bin = 1 > delta
  double hi = 1.0;  // Bin = 0 <= delta
  for (int iter = 0; iter < 60 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (bin_tail_log(trials, errors, mid).log() > log_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace htib
