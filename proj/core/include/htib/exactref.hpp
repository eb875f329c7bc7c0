#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "htib/hypergeom.hpp"

namespace htib::exactref {

// Exact big-integer / rational oracle for small-parameter hypergeometric
// quantities. Property tests and frozen expected values are derived from this
// module; it is deliberately slow and never sits on the hot path.

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact C(n, r); 0 when r < 0 or r > n. Incremental product formula with
/// exact division at every step.
BigInt exact_binom(std::int64_t n, std::int64_t r);

/// Exact rational Hyp(k, m, K, M) summed from the pmf definition.
/// Throws when p.population exceeds the oracle cap.
Rational exact_hyp_tail(const HypParams& p);

/// Exact rational tail through Berkopec's sum over population success counts.
Rational exact_hyp_tail_berkopec(const HypParams& p);

/// Brute-force realization of the upper pseudo-inverse: linear scan over
/// K in (drawn, population - draws + drawn + 1] for the minimal K whose exact
/// tail is <= delta. Requires 0 < delta < 1.
std::int64_t exact_hyp_tail_inv(std::int64_t drawn, std::int64_t draws,
                                const Rational& delta, std::int64_t population);

/// Population cap guarding exact_hyp_tail cost (default 256).
std::int64_t population_cap();
void set_population_cap(std::int64_t cap);

/// ln of a positive big integer, accurate to a few ulp, for checking
/// log-domain results against exact counts far beyond double range.
double log_value(const BigInt& value);

}  // namespace htib::exactref
