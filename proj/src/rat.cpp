#include "recmahler/rat.hpp"

#include "recmahler/error.hpp"

namespace recmahler {

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    BigInt z;
    if (s.empty() || z.set_str(s, 10) != 0)
      throw Error(ErrorCode::ParseError, "cannot parse rational '" + text + "'");
    return z;
  };
  if (slash == std::string::npos) return Rat(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  return make_rat(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rat& q) {
  return q.get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt pow(const BigInt& z, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), e);
  return r;
}

Rat pow(const Rat& q, unsigned long e) {
  return Rat(pow(BigInt(q.get_num()), e), pow(BigInt(q.get_den()), e));
}

long valuation(const BigInt& z, long p) {
  if (z == 0) throw Error(ErrorCode::ZeroInput, "valuation of zero");
  const BigInt pp = p;
  return static_cast<long>(mpz_remove(BigInt().get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rat& q, long p) {
  if (sgn(q) == 0) throw Error(ErrorCode::ZeroInput, "valuation of zero");
  return valuation(BigInt(q.get_num()), p) - valuation(BigInt(q.get_den()), p);
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt multinomial(unsigned long a, unsigned long b, unsigned long c) {
  return binomial(a + b + c, a) * binomial(b + c, b);
}

unsigned long to_ulong_checked(const BigInt& z, const char* what) {
  if (z < 0 || !z.fits_ulong_p())
    throw Error(ErrorCode::ExponentOverflow, std::string(what) + " does not fit an unsigned long");
  return z.get_ui();
}

}  // namespace recmahler
