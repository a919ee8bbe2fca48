#include "recmahler/tail.hpp"

#include <algorithm>

#include "recmahler/padic.hpp"

namespace recmahler {

BigInt window_min(const LinearRecurrence& rec, std::size_t from) {
  BigInt m = rec.term(from);
  for (std::size_t i = 1; i < rec.order(); ++i) m = std::min(m, rec.term(from + i));
  return m;
}

namespace {

Bound log2_decay(const DecaySequence& seq, const BigInt& w) { return Bound::log2_abs(seq.q).mul_int(w); }

}  // namespace

Bound term_tail(const DecaySequence& seq, std::size_t K) {
  const BigInt w = window_min(seq.rec, K + 1 + seq.shift);
  if (sgn(seq.q) == 0) return Bound();
  if (w == 0) return Bound(1.0);
  return log2_decay(seq, w).exp2();
}

Bound power_tail(const DecaySequence& seq, const Rat& X, std::size_t K) {
  if (sgn(X) == 0 || sgn(seq.q) == 0) return Bound();
  const std::size_t n = seq.rec.order();
  const BigInt w = window_min(seq.rec, K + 1 + seq.shift);
  if (w == 0) return Bound::infinity();
  const Bound lq = log2_decay(seq, w);
  const Bound lx = X > 1 ? Bound::log2_abs(X) : Bound();
  // ratio between consecutive blocks of n terms is at most 1/2
  if (!(lx.mul_int(BigInt(static_cast<unsigned long>(n))) + lq <= Bound(-1.0))) return Bound::infinity();
  const Bound lead = Bound(1.0) + Bound::from_rat(Rat(static_cast<long>(n))).log2();
  return (lead + lx.mul_int(BigInt(static_cast<unsigned long>(K + n))) + lq).exp2();
}

long power_tail_valuation(const DecaySequence& seq, long mu, std::size_t K) {
  const std::size_t n = seq.rec.order();
  const BigInt w = window_min(seq.rec, K + 1 + seq.shift);
  const BigInt head = w * seq.nu;
  // block b has exponent >= 2^b w nu + (K + (b+1) n) mu; increasing in b
  // once w nu + n mu >= 0
  if (w == 0 || head + BigInt(static_cast<long>(n)) * mu < 0) return kNoValuation;
  return clamp_valuation(head + BigInt(static_cast<unsigned long>(K + n)) * mu);
}

long clamp_valuation(const BigInt& v) {
  if (v >= PAdic::kExactZero) return PAdic::kExactZero - 1;
  if (v < kNoValuation) return kNoValuation;
  return v.get_si();
}

}  // namespace recmahler
