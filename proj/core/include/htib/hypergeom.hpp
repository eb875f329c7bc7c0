#pragma once

#include <cstdint>

#include "htib/logmath.hpp"

namespace htib {

/// Parameters of a hypergeometric experiment: `drawn` successes observed in a
/// sample of `draws` elements taken without replacement from a population of
/// `population` elements containing `successes` successes. All counts are
/// exact integers.
struct HypParams {
  std::int64_t drawn;
  std::int64_t draws;
  std::int64_t successes;
  std::int64_t population;

  /// Throws std::invalid_argument unless
  /// 0 <= drawn <= draws <= population and 0 <= successes <= population.
  void validate() const;
};

/// ln hyp(k, m, K, M) = ln[ C(K,k) C(M-K,m-k) / C(M,m) ];
/// LogProb::zero() when the configuration is impossible.
LogProb hyp_pmf_log(const HypParams& p);

/// ln Hyp(k, m, K, M) = ln of the probability of at most `drawn` successes.
/// Exactly 0 (probability 1) when successes <= drawn or drawn == draws;
/// -inf when successes > population - draws + drawn.
LogProb hyp_tail_log(const HypParams& p);

/// ln of the complement P[X > drawn], summed directly so that tails
/// indistinguishable from 1 still compare accurately.
LogProb hyp_upper_tail_log(const HypParams& p);

/// Same tail through Berkopec's identity, as a sum over population success
/// counts. Agrees with hyp_tail_log on the identity's domain
/// 0 <= drawn <= min(draws, successes) <= max(draws, successes) <= population.
LogProb hyp_tail_berkopec_log(const HypParams& p);

/// Upper pseudo-inverse min{ K : Hyp(drawn, draws, K, population) <= delta }
/// by discrete bisection (ceil midpoint, shrink while the bracket is wider
/// than 1). Requires 0 <= drawn < draws <= population and log_delta < 0.
/// The result lies in (drawn, population - draws + drawn + 1].
std::int64_t hyp_tail_inv_bisect(std::int64_t drawn, std::int64_t draws,
                                 double log_delta, std::int64_t population);

/// Same pseudo-inverse by descending linear accumulation of Berkopec terms.
/// The running term and partial sum are carried in log space; the partial sum
/// is compared against log_delta at every step.
std::int64_t hyp_tail_inv_linear(std::int64_t drawn, std::int64_t draws,
                                 double log_delta, std::int64_t population);

/// Lower pseudo-inverse max{ K : Hyp(drawn, draws, K, population) >= delta },
/// mirrored bisection on the nonincreasing-in-K tail. Defined for
/// 0 <= drawn <= draws; always succeeds since Hyp(k, m, 0, M) = 1 >= delta.
/// The result lies in [0, population - draws + drawn].
std::int64_t hyp_tail_lower_inv(std::int64_t drawn, std::int64_t draws,
                                double log_delta, std::int64_t population);

/// Lower pseudo-inverse with the threshold supplied as the complement:
/// max{ K : P[X > drawn] <= upper_delta } == hyp_tail_lower_inv at
/// delta = 1 - upper_delta. Callers with delta = 1 - tiny must use this form;
/// ln(1 - tiny) collapses to -0 once tiny drops below the subnormal range.
std::int64_t hyp_tail_lower_inv_complement(std::int64_t drawn, std::int64_t draws,
                                           double log_upper_delta,
                                           std::int64_t population);

/// ln Bin(m, k, p) = ln sum_{j<=k} C(m,j) p^j (1-p)^(m-j).
/// Exactly 0 when errors == trials; p in {0, 1} handled exactly.
LogProb bin_tail_log(std::int64_t trials, std::int64_t errors, double p);

/// Continuous inverse of the binomial tail: the unique p in (0,1) with
/// Bin(trials, errors, p) = delta, by bisection (60 iterations or bracket
/// width 1e-13, whichever first). Returns exactly 1 when errors == trials.
double bin_tail_inv(std::int64_t trials, std::int64_t errors, double log_delta);

}  // namespace htib
