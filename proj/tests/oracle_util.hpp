#pragma once

// Shared helpers for checking the log-domain implementations against the
// exact big-integer oracle. Everything here is test-only and lives outside
// the hot path by construction.

#include <cstdint>
#include <vector>

#include "htib/exactref.hpp"
#include "htib/hypergeom.hpp"

namespace htib::testutil {

using exactref::BigInt;
using exactref::Rational;

inline double log_of(const Rational& value) {
  return exactref::log_value(boost::multiprecision::numerator(value)) -
         exactref::log_value(boost::multiprecision::denominator(value));
}

// Def 3 brute force: max{ K : Hyp(k, m, K, M) >= delta }, by linear scan.
inline std::int64_t exact_lower_inv_scan(std::int64_t drawn, std::int64_t draws,
                                         const Rational& delta, std::int64_t population) {
  std::int64_t best = 0;  // Hyp(k, m, 0, M) = 1 >= delta always
  for (std::int64_t K = 0; K <= population; ++K) {
    if (exactref::exact_hyp_tail({drawn, draws, K, population}) >= delta) best = K;
  }
  return best;
}

// Pascal triangle of exact binomials up to n (inclusive), for grid tests that
// would be too slow through exact_binom one call at a time.
class BinomTable {
 public:
  explicit BinomTable(std::int64_t max_n) : max_n_(max_n), rows_(max_n + 1) {
    for (std::int64_t n = 0; n <= max_n; ++n) {
      rows_[n].resize(n + 1);
      rows_[n][0] = 1;
      for (std::int64_t r = 1; r < n; ++r) {
        rows_[n][r] = rows_[n - 1][r - 1] + rows_[n - 1][r];
      }
      rows_[n][n] = 1;
    }
  }

  const BigInt& operator()(std::int64_t n, std::int64_t r) const {
    static const BigInt zero{0};
    if (r < 0 || r > n) return zero;
    return rows_[n][r];
  }

  // Exact tail numerator sum_{j<=k} C(K,j) C(M-K,m-j); the tail itself is
  // numerator / C(M,m).
  BigInt tail_numerator(std::int64_t k, std::int64_t m, std::int64_t K,
                        std::int64_t M) const {
    BigInt acc{0};
    for (std::int64_t j = 0; j <= k; ++j) acc += (*this)(K, j) * (*this)(M - K, m - j);
    return acc;
  }

  Rational tail(std::int64_t k, std::int64_t m, std::int64_t K, std::int64_t M) const {
    return Rational{tail_numerator(k, m, K, M), (*this)(M, m)};
  }

  std::int64_t max_n() const { return max_n_; }

 private:
  std::int64_t max_n_;
  std::vector<std::vector<BigInt>> rows_;
};

}  // namespace htib::testutil
