#include "recmahler/bigfloat.hpp"

#include <cmath>

#include "recmahler/error.hpp"

namespace recmahler {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(mpfr_prec_t prec, long value) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(mpfr_prec_t prec, const Rat& value, mpfr_rnd_t rnd) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, value.get_mpq_t(), rnd);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_decimal(std::size_t digits, mpfr_rnd_t rnd) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (digits == 0) digits = 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*e", static_cast<int>(digits - 1), rnd, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::size_t decimal_digits_for(mpfr_prec_t bits) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(bits) * std::log10(2.0))) + 1;
}

BigFloat parse_bigfloat(const std::string& text, mpfr_prec_t prec) {
  BigFloat x(prec);
  if (text.empty() || mpfr_set_str(x.get(), text.c_str(), 10, MPFR_RNDN) != 0)
    throw Error(ErrorCode::ParseError, "cannot parse decimal '" + text + "'");
  return x;
}

Bound::Bound(double d) : v_(kPrec) { mpfr_set_d(v_.get(), d, MPFR_RNDU); }

Bound Bound::infinity() {
  Bound b;
  mpfr_set_inf(b.v_.get(), 1);
  return b;
}

Bound Bound::from_rat(const Rat& q) {
  Bound b;
  mpfr_set_q(b.v_.get(), q.get_mpq_t(), MPFR_RNDU);
  return b;
}

Bound Bound::abs_of(const Rat& q) { return from_rat(abs(q)); }

Bound Bound::abs_of(const BigFloat& x) {
  Bound b;
  mpfr_abs(b.v_.get(), x.get(), MPFR_RNDU);
  return b;
}

Bound Bound::log2_abs(const Rat& q) {
  if (sgn(q) == 0) throw Error(ErrorCode::ZeroInput, "log2 of zero");
  return abs_of(q).log2();
}

Bound Bound::pow2(long e) {
  Bound b;
  mpfr_set_ui_2exp(b.v_.get(), 1, e, MPFR_RNDU);
  return b;
}

Bound Bound::operator+(const Bound& o) const {
  Bound r;
  mpfr_add(r.v_.get(), get(), o.get(), MPFR_RNDU);
  return r;
}

Bound Bound::operator*(const Bound& o) const {
  Bound r;
  mpfr_mul(r.v_.get(), get(), o.get(), MPFR_RNDU);
  return r;
}

Bound Bound::mul_int(const BigInt& k) const {
  Bound r;
  mpfr_mul_z(r.v_.get(), get(), k.get_mpz_t(), MPFR_RNDU);
  return r;
}

Bound Bound::mul_2exp(long e) const {
  Bound r;
  mpfr_mul_2si(r.v_.get(), get(), e, MPFR_RNDU);
  return r;
}

Bound Bound::exp2() const {
  Bound r;
  mpfr_exp2(r.v_.get(), get(), MPFR_RNDU);
  return r;
}

Bound Bound::expm1() const {
  Bound r;
  mpfr_expm1(r.v_.get(), get(), MPFR_RNDU);
  return r;
}

Bound Bound::log2() const {
  Bound r;
  mpfr_log2(r.v_.get(), get(), MPFR_RNDU);
  return r;
}

}  // namespace recmahler
