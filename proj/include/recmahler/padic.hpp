#pragma once

#include <string>

#include "recmahler/rat.hpp"

namespace recmahler {

/// Element of Q_p known to finite precision.
///
/// A nonzero value is unit * p^v + O(p^(v + prec)) with unit in [1, p^prec)
/// coprime to p. A value that is zero to the known precision is stored with
/// zero() true and v() holding its absolute precision, i.e. it represents
/// O(p^v). An exact zero uses kExactZero as that precision.
class PAdic {
 public:
  static constexpr long kExactZero = 1L << 40;

  PAdic() = default;
  static PAdic from_rat(const Rat& q, long p, long digits);
  static PAdic zero_to(long p, long abs_prec);

  long p() const { return p_; }
  long v() const { return v_; }
  const BigInt& unit() const { return unit_; }
  long prec() const { return prec_; }
  bool zero() const { return zero_; }

  /// Absolute precision: the value is known modulo p^abs_prec().
  long abs_prec() const { return zero_ ? v_ : v_ + prec_; }
  /// Valuation of the value; for O(p^N) this is N (a lower bound).
  long valuation() const { return v_; }

  /// Truncate to absolute precision at most `n`.
  PAdic with_abs_prec(long n) const;

  PAdic operator-() const;
  PAdic& operator+=(const PAdic& o);
  PAdic& operator-=(const PAdic& o) { return *this += -o; }
  PAdic& operator*=(const PAdic& o);
  friend PAdic operator+(PAdic a, const PAdic& b) { return a += b; }
  friend PAdic operator-(PAdic a, const PAdic& b) { return a -= b; }
  friend PAdic operator*(PAdic a, const PAdic& b) { return a *= b; }

  /// Throws Error(ZeroConstantTerm) when the value is zero to precision.
  PAdic inverse() const;

  /// Whether q agrees with this value to the known precision.
  bool agrees_with(const Rat& q) const;

  std::string to_string() const;

 private:
  PAdic(long p, long v, BigInt unit, long prec, bool zero)
      : p_(p), v_(v), unit_(std::move(unit)), prec_(prec), zero_(zero) {}

  static PAdic normalized(long p, long w, BigInt value, long abs_prec);

  long p_ = 2;
  long v_ = kExactZero;
  BigInt unit_ = 0;
  long prec_ = 0;
  bool zero_ = true;
};

}  // namespace recmahler
