#pragma once

#include <mpfr.h>

#include <string>

#include "recmahler/rat.hpp"

namespace recmahler {

/// Owning wrapper around an mpfr_t. Precision is fixed at construction;
/// assignment copies the value and rounds to the destination precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(mpfr_prec_t prec, long value);
  BigFloat(mpfr_prec_t prec, const Rat& value, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Scientific decimal string with `digits` significant digits.
  std::string to_decimal(std::size_t digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t value_;
};

/// Decimal digits that faithfully represent a `bits`-bit mantissa.
std::size_t decimal_digits_for(mpfr_prec_t bits);

BigFloat parse_bigfloat(const std::string& text, mpfr_prec_t prec);

/// A real upper bound carried at 64 bits with every operation rounded
/// toward +inf. Used for ball radii and tail majorants. Values may be
/// negative (log-domain bounds); multiplication assumes a nonnegative
/// multiplier so that the result stays an upper bound.
class Bound {
 public:
  static constexpr mpfr_prec_t kPrec = 64;

  Bound() : v_(kPrec, 0) {}
  explicit Bound(double d);
  static Bound infinity();
  static Bound from_rat(const Rat& q);
  /// Upper bound of |q|.
  static Bound abs_of(const Rat& q);
  /// Upper bound of |x| for a BigFloat midpoint.
  static Bound abs_of(const BigFloat& x);
  /// Upper bound of log2|q|, q != 0.
  static Bound log2_abs(const Rat& q);
  static Bound pow2(long e);

  const BigFloat& value() const { return v_; }
  mpfr_srcptr get() const { return v_.get(); }
  bool is_finite() const { return mpfr_number_p(v_.get()) != 0; }
  double to_double() const { return v_.to_double(); }
  std::string to_decimal(std::size_t digits = 6) const { return v_.to_decimal(digits, MPFR_RNDU); }

  Bound operator+(const Bound& o) const;
  Bound operator*(const Bound& o) const;
  Bound mul_int(const BigInt& k) const;
  Bound mul_2exp(long e) const;
  Bound exp2() const;
  Bound expm1() const;
  Bound log2() const;

  friend bool operator<(const Bound& a, const Bound& b) { return mpfr_less_p(a.get(), b.get()); }
  friend bool operator<=(const Bound& a, const Bound& b) { return mpfr_lessequal_p(a.get(), b.get()); }
  friend Bound max(const Bound& a, const Bound& b) { return a < b ? b : a; }

 private:
  BigFloat v_;
};

}  // namespace recmahler
