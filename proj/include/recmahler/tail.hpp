#pragma once

#include <cstddef>

#include "recmahler/bigfloat.hpp"
#include "recmahler/recurrence.hpp"

namespace recmahler {

/// A sequence u_k dominated by the recurrence: |u_k| <= q^{R_{k+shift}} at
/// infinity, v_p(u_k) >= nu * R_{k+shift} at a prime.
struct DecaySequence {
  LinearRecurrence rec;
  std::size_t shift = 0;
  Rat q = 0;
  long nu = 0;
};

/// min(R_{from}, ..., R_{from+n-1})
BigInt window_min(const LinearRecurrence& rec, std::size_t from);

/// Upper bound for sum_{k>K} q^{R_{k+shift}} X^k with X >= 0.
///
/// Window minima of R at least double every n steps once positive (all c_i
/// are nonnegative and sum to at least 2), so with w the minimum of the
/// window just past K the tail is at most 2 n max(1,X)^{K+n} q^w as soon as
/// max(1,X)^n q^w <= 1/2. Returns infinity before that point.
Bound power_tail(const DecaySequence& seq, const Rat& X, std::size_t K);

/// Upper bound for sup_{k>K} q^{R_{k+shift}}, i.e. q^w.
Bound term_tail(const DecaySequence& seq, std::size_t K);

/// Lower bound for min_{k>K} (nu R_{k+shift} + k mu) with mu <= 0, or
/// kNoValuation while the exponents may still decrease.
inline constexpr long kNoValuation = -(1L << 40);
long power_tail_valuation(const DecaySequence& seq, long mu, std::size_t K);

/// Clamp an exact valuation bound into a long.
long clamp_valuation(const BigInt& v);

}  // namespace recmahler
