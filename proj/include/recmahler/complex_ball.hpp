#pragma once

#include "recmahler/bigfloat.hpp"

namespace recmahler {

/// Complex midpoint-radius ball: the exact value lies within `rad` of
/// re + i*im. Midpoints are rounded to nearest at the working precision
/// and every rounding is charged to the radius.
class ComplexBall {
 public:
  explicit ComplexBall(mpfr_prec_t prec = 256);
  ComplexBall(BigFloat re, BigFloat im, Bound rad);

  static ComplexBall from_rat(const Rat& q, mpfr_prec_t prec);
  static ComplexBall from_rat(const Rat& re, const Rat& im, mpfr_prec_t prec);

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  const Bound& rad() const { return rad_; }
  mpfr_prec_t prec() const { return re_.prec(); }

  /// Upper bound on |z| over the whole ball.
  Bound abs_upper() const;
  /// Lower bound on |z| over the whole ball (0 when the ball meets 0).
  BigFloat abs_lower() const;
  bool contains_zero() const;
  bool is_exact_zero() const { return re_.is_zero() && im_.is_zero() && rad_.value().is_zero(); }

  ComplexBall midpoint() const;
  ComplexBall with_rad(const Bound& rad) const;
  ComplexBall add_error(const Bound& extra) const;
  ComplexBall conj() const;

  ComplexBall operator-() const;
  ComplexBall& operator+=(const ComplexBall& o);
  ComplexBall& operator-=(const ComplexBall& o);
  ComplexBall& operator*=(const ComplexBall& o);
  friend ComplexBall operator+(ComplexBall a, const ComplexBall& b) { return a += b; }
  friend ComplexBall operator-(ComplexBall a, const ComplexBall& b) { return a -= b; }
  friend ComplexBall operator*(ComplexBall a, const ComplexBall& b) { return a *= b; }

  /// Throws Error(ZeroConstantTerm) when the ball may contain 0.
  ComplexBall inverse() const;
  ComplexBall pow(unsigned long e) const;

  /// Whether the two balls certainly describe the same number up to
  /// their radii, i.e. the balls intersect.
  bool overlaps(const ComplexBall& o) const;

 private:
  BigFloat re_;
  BigFloat im_;
  Bound rad_;
};

/// Upper bound on |a - b| including both radii.
Bound distance_upper(const ComplexBall& a, const ComplexBall& b);

}  // namespace recmahler
