#include "recmahler/padic.hpp"

#include <algorithm>

#include "recmahler/error.hpp"

namespace recmahler {

namespace {

BigInt modulus(long p, long n) { return pow(BigInt(p), static_cast<unsigned long>(n)); }

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorCode::ZeroConstantTerm, "p-adic unit is not invertible");
  return r;
}

long cap(long n) { return std::min(n, PAdic::kExactZero - 1); }

}  // namespace

PAdic PAdic::from_rat(const Rat& q, long p, long digits) {
  if (digits < 1) throw Error(ErrorCode::InvalidArgument, "p-adic precision must be positive");
  if (sgn(q) == 0) return PAdic(p, kExactZero, BigInt(0), 0, true);
  const long v = recmahler::valuation(q, p);
  const BigInt pp = p;
  BigInt num = q.get_num(), den = q.get_den();
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  const BigInt m = modulus(p, digits);
  return PAdic(p, v, mod_pos(num * inverse_mod(den, m), m), digits, false);
}

PAdic PAdic::zero_to(long p, long abs_prec) { return PAdic(p, abs_prec, BigInt(0), 0, true); }

PAdic PAdic::normalized(long p, long w, BigInt value, long abs_prec) {
  if (abs_prec <= w) return zero_to(p, abs_prec);
  value = mod_pos(value, modulus(p, abs_prec - w));
  if (value == 0) return zero_to(p, abs_prec);
  const BigInt pp = p;
  const long k = static_cast<long>(mpz_remove(value.get_mpz_t(), value.get_mpz_t(), pp.get_mpz_t()));
  const long v = w + k;
  return PAdic(p, v, std::move(value), abs_prec - v, false);
}

PAdic PAdic::with_abs_prec(long n) const {
  if (n >= abs_prec()) return *this;
  if (zero_) return zero_to(p_, n);
  return normalized(p_, v_, unit_, n);
}

PAdic PAdic::operator-() const {
  if (zero_) return *this;
  return PAdic(p_, v_, modulus(p_, prec_) - unit_, prec_, false);
}

PAdic& PAdic::operator+=(const PAdic& o) {
  if (o.p_ != p_) throw Error(ErrorCode::BackendMismatch, "p-adic primes differ");
  if (o.zero_) return *this = with_abs_prec(o.abs_prec());
  if (zero_) return *this = o.with_abs_prec(abs_prec());
  const long w = std::min(v_, o.v_);
  const long n = std::min(abs_prec(), o.abs_prec());
  BigInt value = 0;
  if (v_ < n) value += unit_ * modulus(p_, v_ - w);
  if (o.v_ < n) value += o.unit_ * modulus(p_, o.v_ - w);
  return *this = normalized(p_, w, std::move(value), n);
}

PAdic& PAdic::operator*=(const PAdic& o) {
  if (o.p_ != p_) throw Error(ErrorCode::BackendMismatch, "p-adic primes differ");
  const bool exact_zero = (zero_ && v_ == kExactZero) || (o.zero_ && o.v_ == kExactZero);
  if (exact_zero) return *this = zero_to(p_, kExactZero);
  if (zero_ || o.zero_) return *this = zero_to(p_, cap(v_ + o.v_));
  const long prec = std::min(prec_, o.prec_);
  unit_ = mod_pos(unit_ * o.unit_, modulus(p_, prec));
  v_ += o.v_;
  prec_ = prec;
  return *this;
}

PAdic PAdic::inverse() const {
  if (zero_) throw Error(ErrorCode::ZeroConstantTerm, "p-adic inverse of a value that is zero to precision");
  return PAdic(p_, -v_, inverse_mod(unit_, modulus(p_, prec_)), prec_, false);
}

bool PAdic::agrees_with(const Rat& q) const {
  if (sgn(q) == 0) return zero_;
  if (zero_ && v_ == kExactZero) return false;
  const long digits = std::max(1L, abs_prec() - recmahler::valuation(q, p_));
  return (from_rat(q, p_, digits) - *this).zero();
}

std::string PAdic::to_string() const {
  const std::string pp = std::to_string(p_);
  if (zero_) return v_ == kExactZero ? std::string("0") : "O(" + pp + "^" + std::to_string(v_) + ")";
  return unit_.get_str() + "*" + pp + "^" + std::to_string(v_) + " + O(" + pp + "^" + std::to_string(abs_prec()) + ")";
}

}  // namespace recmahler
