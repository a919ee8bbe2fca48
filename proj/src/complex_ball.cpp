#include "recmahler/complex_ball.hpp"

#include <algorithm>

#include "recmahler/error.hpp"

namespace recmahler {

namespace {

// Charge for one round-to-nearest step whose result is r.
Bound rounding_charge(const BigFloat& r, int ternary) {
  if (ternary == 0) return Bound();
  return Bound::abs_of(r).mul_2exp(1 - r.prec());
}

Bound mid_abs_upper(const BigFloat& re, const BigFloat& im) {
  BigFloat b(Bound::kPrec);
  mpfr_hypot(b.get(), re.get(), im.get(), MPFR_RNDU);
  return Bound::abs_of(b);
}

BigFloat mid_abs_lower(const BigFloat& re, const BigFloat& im) {
  BigFloat b(Bound::kPrec);
  mpfr_hypot(b.get(), re.get(), im.get(), MPFR_RNDD);
  return b;
}

}  // namespace

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec) {}

ComplexBall::ComplexBall(BigFloat re, BigFloat im, Bound rad)
    : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)) {}

ComplexBall ComplexBall::from_rat(const Rat& q, mpfr_prec_t prec) { return from_rat(q, Rat(0), prec); }

ComplexBall ComplexBall::from_rat(const Rat& re, const Rat& im, mpfr_prec_t prec) {
  ComplexBall z(prec);
  const int tr = mpfr_set_q(z.re_.get(), re.get_mpq_t(), MPFR_RNDN);
  const int ti = mpfr_set_q(z.im_.get(), im.get_mpq_t(), MPFR_RNDN);
  z.rad_ = rounding_charge(z.re_, tr) + rounding_charge(z.im_, ti);
  return z;
}

Bound ComplexBall::abs_upper() const { return mid_abs_upper(re_, im_) + rad_; }

BigFloat ComplexBall::abs_lower() const {
  BigFloat b = mid_abs_lower(re_, im_);
  mpfr_sub(b.get(), b.get(), rad_.get(), MPFR_RNDD);
  if (b.sign() < 0) mpfr_set_zero(b.get(), 1);
  return b;
}

bool ComplexBall::contains_zero() const { return abs_lower().is_zero(); }

ComplexBall ComplexBall::midpoint() const { return ComplexBall(re_, im_, Bound()); }

ComplexBall ComplexBall::with_rad(const Bound& rad) const { return ComplexBall(re_, im_, rad); }

ComplexBall ComplexBall::add_error(const Bound& extra) const { return ComplexBall(re_, im_, rad_ + extra); }

ComplexBall ComplexBall::conj() const {
  ComplexBall r = *this;
  mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
  return r;
}

ComplexBall ComplexBall::operator-() const {
  ComplexBall r = *this;
  mpfr_neg(r.re_.get(), r.re_.get(), MPFR_RNDN);
  mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
  return r;
}

ComplexBall& ComplexBall::operator+=(const ComplexBall& o) {
  const int tr = mpfr_add(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
  const int ti = mpfr_add(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
  rad_ = rad_ + o.rad_ + rounding_charge(re_, tr) + rounding_charge(im_, ti);
  return *this;
}

ComplexBall& ComplexBall::operator-=(const ComplexBall& o) {
  const int tr = mpfr_sub(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
  const int ti = mpfr_sub(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
  rad_ = rad_ + o.rad_ + rounding_charge(re_, tr) + rounding_charge(im_, ti);
  return *this;
}

ComplexBall& ComplexBall::operator*=(const ComplexBall& o) {
  // |zw - z0 w0| <= |z0| r_w + |w0| r_z + r_z r_w
  Bound prop = mid_abs_upper(re_, im_) * o.rad_ + mid_abs_upper(o.re_, o.im_) * rad_ + rad_ * o.rad_;
  BigFloat re(prec()), im(prec());
  const int tr = mpfr_fmms(re.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
  const int ti = mpfr_fmma(im.get(), re_.get(), o.im_.get(), im_.get(), o.re_.get(), MPFR_RNDN);
  re_ = std::move(re);
  im_ = std::move(im);
  rad_ = prop + rounding_charge(re_, tr) + rounding_charge(im_, ti);
  return *this;
}

ComplexBall ComplexBall::inverse() const {
  const BigFloat lower = mid_abs_lower(re_, im_);
  BigFloat gap(Bound::kPrec);
  mpfr_sub(gap.get(), lower.get(), rad_.get(), MPFR_RNDD);
  if (gap.sign() <= 0) throw Error(ErrorCode::ZeroConstantTerm, "inverse of a ball containing zero");

  BigFloat norm(prec() + 8);
  mpfr_fmma(norm.get(), re_.get(), re_.get(), im_.get(), im_.get(), MPFR_RNDN);
  ComplexBall r(prec());
  mpfr_div(r.re_.get(), re_.get(), norm.get(), MPFR_RNDN);
  mpfr_div(r.im_.get(), im_.get(), norm.get(), MPFR_RNDN);
  mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);

  // |1/mid| rounded up, then the rounding of the midpoint itself.
  BigFloat inv_abs(Bound::kPrec);
  mpfr_ui_div(inv_abs.get(), 1, lower.get(), MPFR_RNDU);
  const Bound rounding = Bound::abs_of(inv_abs).mul_2exp(3 - prec());

  // err / (|mid| (|mid| - err))
  Bound prop;
  if (!rad_.value().is_zero()) {
    BigFloat denom(Bound::kPrec);
    mpfr_mul(denom.get(), lower.get(), gap.get(), MPFR_RNDD);
    BigFloat q(Bound::kPrec);
    mpfr_div(q.get(), rad_.get(), denom.get(), MPFR_RNDU);
    prop = Bound::abs_of(q);
  }
  r.rad_ = prop + rounding;
  return r;
}

ComplexBall ComplexBall::pow(unsigned long e) const {
  ComplexBall result = from_rat(Rat(1), prec());
  ComplexBall base = *this;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool ComplexBall::overlaps(const ComplexBall& o) const { return (*this - o).contains_zero(); }

Bound distance_upper(const ComplexBall& a, const ComplexBall& b) { return (a - b).abs_upper(); }

}  // namespace recmahler
