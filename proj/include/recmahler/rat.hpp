#pragma once

#include <gmpxx.h>

#include <string>

namespace recmahler {

using BigInt = mpz_class;

/// Exact rational, always kept canonical (gcd 1, positive denominator).
using Rat = mpq_class;

Rat make_rat(const BigInt& num, const BigInt& den = 1);

/// Parses "n", "-n" or "n/d".
Rat parse_rat(const std::string& text);

/// Always "n/d", including d = 1.
std::string to_string(const Rat& q);
std::string to_string(const BigInt& z);

/// q^e for a nonnegative exponent.
Rat pow(const Rat& q, unsigned long e);
BigInt pow(const BigInt& z, unsigned long e);

/// Exact p-adic valuation of a nonzero integer / rational.
long valuation(const BigInt& z, long p);
long valuation(const Rat& q, long p);

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);

/// Multinomial (a+b+c)!/(a! b! c!).
BigInt multinomial(unsigned long a, unsigned long b, unsigned long c);

unsigned long to_ulong_checked(const BigInt& z, const char* what);

}  // namespace recmahler
