#include "htib/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "htib/hypergeom.hpp"
#include "htib/logmath.hpp"

namespace htib {

namespace {

constexpr double kLn4 = 2.0 * std::numbers::ln2;

BoundResult make_result(double value, Method method,
                        std::optional<std::int64_t> ghost = std::nullopt,
                        bool valid = true) {
  return BoundResult{value, value >= 1.0, valid, method, ghost};
}

double hti_log_threshold(const BoundQuery& q) {
  return q.log_delta - kLn4 - q.growth.log_growth(q.sample_size + q.ghost_size);
}

// Scaled complementary error function e^(x^2) erfc(x) for x >= 0. The direct
// product is exact until erfc underflows; past that an asymptotic series in
// 1/(2x^2) takes over.
double erfcx(double x) {
  if (x < 8.0) return std::exp(x * x) * std::erfc(x);
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n <= 12; ++n) {
    term *= -static_cast<double>(2 * n - 1) * inv2x2;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kHti: return "hti";
    case Method::kHtiRd: return "hti-rd";
    case Method::kHtiLower: return "hti-lower";
    case Method::kMargin: return "margin";
    case Method::kVp: return "vp";
    case Method::kVrd: return "vrd";
    case Method::kLugosi: return "lugosi";
    case Method::kCatoni: return "catoni";
    case Method::kSampleCompression: return "sc";
    case Method::kLangford: return "langford";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
  for (Method m : {Method::kHti, Method::kHtiRd, Method::kHtiLower, Method::kMargin,
                   Method::kVp, Method::kVrd, Method::kLugosi, Method::kCatoni,
                   Method::kSampleCompression, Method::kLangford}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

void BoundQuery::validate() const {
  if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
  if (errors < 0 || errors > sample_size) {
    throw std::invalid_argument("errors must lie in [0, sample_size]");
  }
  if (ghost_size < 1) throw std::invalid_argument("ghost_size must be >= 1");
  if (!(log_delta < 0.0) || std::isinf(log_delta)) {
    throw std::invalid_argument("log_delta must lie in (-inf, 0)");
  }
}

BoundResult hti_epsilon(const BoundQuery& q) {
  q.validate();
  if (q.errors == q.sample_size) {
    return make_result(1.0, Method::kHti, q.ghost_size);
  }
  const std::int64_t total = q.sample_size + q.ghost_size;
  const std::int64_t inv =
      hyp_tail_inv_bisect(q.errors, q.sample_size, hti_log_threshold(q), total);
  const double numer = static_cast<double>(std::max<std::int64_t>(1, inv - 1 - q.errors));
  return make_result(numer / static_cast<double>(q.ghost_size), Method::kHti, q.ghost_size);
}

BoundResult hti_rd_epsilon(const BoundQuery& q) {
  q.validate();
  const double risk = q.empirical_risk();
  if (q.errors == q.sample_size) {
    return make_result(risk, Method::kHtiRd, q.ghost_size);  // eta = 0 at k = m
  }
  const std::int64_t total = q.sample_size + q.ghost_size;
  const std::int64_t inv =
      hyp_tail_inv_bisect(q.errors, q.sample_size, hti_log_threshold(q), total);
  const double u = static_cast<double>(inv - 1) / static_cast<double>(total);
  const double mp = static_cast<double>(q.ghost_size);
  double slope = 0.0;  // limit of the second branch as u -> 0
  if (u > 0.0) {
    slope = (static_cast<double>(total) / mp) * (u - risk) / std::sqrt(u);
  }
  const double eta = std::max(1.0 / std::sqrt(mp), slope);
  const double eta2 = eta * eta;
  const double value = risk + 0.5 * eta2 * (1.0 + std::sqrt(1.0 + 4.0 * risk / eta2));
  return make_result(value, Method::kHtiRd, q.ghost_size);
}

BoundResult hti_lower_epsilon(const BoundQuery& q) {
  q.validate();
  if (q.errors == 0) {
    return make_result(0.0, Method::kHtiLower, q.ghost_size);
  }
  const std::int64_t total = q.sample_size + q.ghost_size;
  // The threshold is 1 - delta/(4 tau); feed the lower inverse its complement
  // so nothing is lost when delta/(4 tau) shrinks below double range.
  const std::int64_t low_inv = hyp_tail_lower_inv_complement(
      q.errors - 1, q.sample_size, hti_log_threshold(q), total);
  const double numer = static_cast<double>(
      std::min(q.ghost_size - 1, low_inv + 1 - q.errors));
  return make_result(numer / static_cast<double>(q.ghost_size), Method::kHtiLower,
                     q.ghost_size);
}

BoundResult margin_epsilon(std::int64_t errors, std::int64_t sample_size,
                           std::int64_t ghost_size, double log_delta,
                           double log_cover) {
  if (log_cover < 0.0) {
    throw std::invalid_argument("log_cover must be >= 0");
  }
  BoundQuery probe{errors, sample_size, ghost_size, log_delta,
                   GrowthModel::finite_class(1)};
  probe.validate();
  if (errors == sample_size) {
    return make_result(1.0, Method::kMargin, ghost_size);
  }
  const std::int64_t total = sample_size + ghost_size;
  const std::int64_t inv = hyp_tail_inv_bisect(
      errors, sample_size, log_delta - kLn4 - log_cover, total);
  const double numer = static_cast<double>(std::max<std::int64_t>(1, inv - 1 - errors));
  return make_result(numer / static_cast<double>(ghost_size), Method::kMargin, ghost_size);
}

BoundResult vp_bound(const BoundQuery& q) {
  q.validate();
  const double m = static_cast<double>(q.sample_size);
  const double e_m = (kLn4 + q.growth.log_growth(2 * q.sample_size) - q.log_delta) / m;
  return make_result(q.empirical_risk() + 1.0 / m + std::sqrt(e_m), Method::kVp);
}

BoundResult vrd_bound(const BoundQuery& q) {
  q.validate();
  const double m = static_cast<double>(q.sample_size);
  const double e_m = (kLn4 + q.growth.log_growth(2 * q.sample_size) - q.log_delta) / m;
  const double risk = q.empirical_risk();
  const double value = risk + 2.0 * e_m * (1.0 + std::sqrt(1.0 + risk / e_m));
  return make_result(value, Method::kVrd);
}

BoundResult lugosi_bound(const BoundQuery& q) {
  q.validate();
  if (!q.growth.is_sauer_shelah()) {
    throw std::invalid_argument("lugosi_bound requires a VC dimension");
  }
  const double d = static_cast<double>(q.growth.vc_dim());
  const double m = static_cast<double>(q.sample_size);
  const double a = (d + 1.0) * (2.0 + std::numbers::ln2) / (2.0 * d);
  const double chaining = 24.0 * std::sqrt(2.0 * d / m) *
                          (std::sqrt(a) + 0.5 * std::sqrt(std::numbers::pi) * erfcx(std::sqrt(a)));
  const double value = q.empirical_risk() + chaining + std::sqrt(-q.log_delta / (2.0 * m));
  return make_result(value, Method::kLugosi);
}

BoundResult catoni_c46(const BoundQuery& q) {
  q.validate();
  const double m = static_cast<double>(q.sample_size);
  const double total = static_cast<double>(q.sample_size + q.ghost_size);
  const double shadow_ratio = total / static_cast<double>(q.ghost_size);
  const double d_eff = shadow_ratio * shadow_ratio *
                       (q.growth.log_growth(q.sample_size + q.ghost_size) - q.log_delta);
  const double risk = q.empirical_risk();
  const double value =
      (risk + d_eff / m + std::sqrt(2.0 * d_eff * m * risk * (1.0 - risk) + d_eff * d_eff) / m) /
      (1.0 + 2.0 * d_eff / m);
  const bool valid = risk <= 0.5 && value <= 0.5;
  return make_result(value, Method::kCatoni, q.ghost_size, valid);
}

BoundResult sc_bound(std::int64_t errors, std::int64_t sample_size,
                     std::int64_t compression_size, double log_delta) {
  if (sample_size < 1 || compression_size < 0 || compression_size >= sample_size) {
    throw std::invalid_argument("sc_bound requires 0 <= compression_size < sample_size");
  }
  if (errors < 0 || errors > sample_size - compression_size) {
    throw std::invalid_argument("sc_bound requires errors <= sample_size - compression_size");
  }
  const double ld = log_delta - std::log(static_cast<double>(sample_size)) -
                    log_binom(sample_size, compression_size);
  const double value = bin_tail_inv(sample_size - compression_size, errors, ld);
  return make_result(value, Method::kSampleCompression);
}

BoundResult langford_test_bound(std::int64_t errors, std::int64_t sample_size,
                                double log_delta) {
  const double value = bin_tail_inv(sample_size, errors, log_delta);
  return make_result(value, Method::kLangford);
}

double hti_hoeffding_relaxed(const BoundQuery& q) {
  q.validate();
  const double m = static_cast<double>(q.sample_size);
  const double total = static_cast<double>(q.sample_size + q.ghost_size);
  const double log_term = kLn4 + q.growth.log_growth(q.sample_size + q.ghost_size) - q.log_delta;
  return (total / static_cast<double>(q.ghost_size)) * std::sqrt(log_term / (2.0 * m)) +
         q.empirical_risk();
}

double hti_realizable_relaxed(const BoundQuery& q) {
  q.validate();
  if (q.errors != 0) {
    throw std::invalid_argument("hti_realizable_relaxed requires errors == 0");
  }
  const double m = static_cast<double>(q.sample_size);
  const double ratio = 1.0 + m / static_cast<double>(q.ghost_size);
  const double log_term = kLn4 + q.growth.log_growth(q.sample_size + q.ghost_size) - q.log_delta;
  return ratio * log_term / m;
}

CrossoverReport lugosi_vp_crossover(std::int64_t vc_dim) {
  if (vc_dim < 1) throw std::invalid_argument("vc_dim must be >= 1");
  // 24 sqrt((d+1)(2+ln 2)) = sqrt(2(d+1)c): the dimension cancels.
  const double constant = 288.0 * (2.0 + std::numbers::ln2);
  // c = ln(4 e m / d) gives the ratio where the two bounds cross.
  const double log10_ratio = (constant - kLn4 - 1.0) / std::numbers::ln10;
  return CrossoverReport{constant, log10_ratio};
}

}  // namespace htib
