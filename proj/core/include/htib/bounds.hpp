#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "htib/growth.hpp"

namespace htib {

enum class Method {
  kHti,
  kHtiRd,
  kHtiLower,
  kMargin,
  kVp,
  kVrd,
  kLugosi,
  kCatoni,
  kSampleCompression,
  kLangford,
};

std::string_view method_name(Method method);
std::optional<Method> method_from_name(std::string_view name);

/// Inputs shared by the risk bounds: `errors` is the integer error count on
/// the sample (the empirical risk errors/sample_size is always derived, never
/// stored), `ghost_size` the ghost sample size m'.
struct BoundQuery {
  std::int64_t errors = 0;
  std::int64_t sample_size = 1;
  std::int64_t ghost_size = 1;
  double log_delta = 0.0;
  GrowthModel growth = GrowthModel::sauer_shelah(1);

  void validate() const;
  double empirical_risk() const {
    return static_cast<double>(errors) / static_cast<double>(sample_size);
  }
};

/// Result of any bound: the unclamped value, a vacuity flag (value >= 1), a
/// method-specific validity flag, and the ghost size that was used when the
/// method has one.
struct BoundResult {
  double value = 0.0;
  bool vacuous = false;
  bool valid = true;
  Method method = Method::kHti;
  std::optional<std::int64_t> ghost_size;
};

/// Hypergeometric tail inversion upper bound:
/// (1/m') max{1, HypInv(k, m, delta/(4 tau(m+m')), m+m') - 1 - k},
/// and 1 when k = m. The threshold is formed entirely in log space.
BoundResult hti_epsilon(const BoundQuery& q);

/// Relative-deviation form: R + (eta^2/2)(1 + sqrt(1 + 4R/eta^2)) with
/// eta = max{1/sqrt(m'), ((m+m')/m') (u - k/m)/sqrt(u)} and
/// u = (HypInv(...) - 1)/(m+m'). eta = 0 at k = m (bound 1); the second
/// branch of the max takes its limit 0 when u = 0.
BoundResult hti_rd_epsilon(const BoundQuery& q);

/// Lower bound on the true risk:
/// (1/m') min{m'-1, HypLowInv(k-1, m, 1 - delta/(4 tau(m+m')), m+m') + 1 - k},
/// and 0 when k = 0. The complement 1 - delta/(4 tau) never materializes; the
/// lower inverse runs on the upper-tail form directly.
BoundResult hti_lower_epsilon(const BoundQuery& q);

/// Margin-classifier variant of hti_epsilon: the growth term is replaced by a
/// caller-supplied log covering number (>= 0). `errors` counts margin errors.
BoundResult margin_epsilon(std::int64_t errors, std::int64_t sample_size,
                           std::int64_t ghost_size, double log_delta,
                           double log_cover);

/// Vapnik's pessimistic bound R + 1/m + sqrt(E(m)),
/// E(m) = (ln(4 tau(2m)) - ln delta)/m. Ignores ghost_size.
BoundResult vp_bound(const BoundQuery& q);

/// Vapnik's relative deviation bound R + 2E(m)(1 + sqrt(1 + R/E(m))).
BoundResult vrd_bound(const BoundQuery& q);

/// Lugosi's chaining bound
/// R + 24 sqrt(2d/m) (sqrt(a) + (sqrt(pi)/2) e^a erfc(sqrt(a))) + sqrt(-ln delta / 2m),
/// a = (d+1)(2+ln 2)/(2d). Requires a Sauer-Shelah growth model.
BoundResult lugosi_bound(const BoundQuery& q);

/// Catoni's Theorem 4.6 with shadow sample size m':
/// (1 + 2d'/m)^-1 (R + d'/m + (1/m) sqrt(2 d' m R (1-R) + d'^2)),
/// d' = ((m+m')/m')^2 (ln tau(m+m') - ln delta). valid=false when the
/// empirical risk or the bound exceeds 0.5.
BoundResult catoni_c46(const BoundQuery& q);

/// Sample compression bound with compression size d:
/// BinInv(m - d, k, delta/(m C(m,d))), formed in log space.
BoundResult sc_bound(std::int64_t errors, std::int64_t sample_size,
                     std::int64_t compression_size, double log_delta);

/// Single-classifier binomial tail inversion test bound BinInv(m, k, delta).
BoundResult langford_test_bound(std::int64_t errors, std::int64_t sample_size,
                                double log_delta);

/// Closed-form relaxation of hti_epsilon through the Chvatal-Hoeffding tail
/// bound: ((m+m')/m') sqrt((ln(4 tau(m+m')) - ln delta)/(2m)) + k/m.
/// Strictly dominates hti_epsilon for k < m.
double hti_hoeffding_relaxed(const BoundQuery& q);

/// Realizable-case relaxation (1 + m/m')(1/m) ln(4 tau(m+m')/delta).
/// Requires errors == 0; dominates hti_epsilon at k = 0.
double hti_realizable_relaxed(const BoundQuery& q);

/// Sample-size scale where Lugosi's chaining bound overtakes Vapnik's
/// pessimistic bound: the constant c = 288 (2 + ln 2) solving
/// 24 sqrt((d+1)(2+ln 2)) = sqrt(2(d+1) c) (independent of d), and the
/// implied log10 of the sample-to-dimension ratio.
struct CrossoverReport {
  double constant;
  double log10_sample_ratio;
};
CrossoverReport lugosi_vp_crossover(std::int64_t vc_dim);

}  // namespace htib
