#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recmahler/rat.hpp"

namespace recmahler {

/// Dense univariate polynomial with integer coefficients, lowest degree
/// first. The zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<BigInt> coeffs);
  static UPoly monomial(const BigInt& c, std::size_t deg);
  /// X - r
  static UPoly linear(const BigInt& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  BigInt leading() const { return c_.empty() ? BigInt(0) : c_.back(); }

  BigInt eval(const BigInt& x) const;
  Rat eval(const Rat& x) const;
  UPoly derivative() const;
  BigInt content() const;
  UPoly primitive() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient when b divides a exactly in Z[X].
  friend std::optional<UPoly> divide_exact(const UPoly& a, const UPoly& b);

  /// Human-readable form in the variable X, highest degree first.
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// Primitive gcd over Q (positive leading coefficient).
UPoly gcd(UPoly a, UPoly b);
bool is_squarefree(const UPoly& f);

long euler_phi(long m);
UPoly cyclotomic(long m);

/// The polynomial of degree < xs.size() through the points (xs[i], ys[i]);
/// throws Error(InvalidArgument) if it does not have integer coefficients.
UPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys);

/// Degrees of the irreducible factors of f mod p (f squarefree mod p and
/// p not dividing the leading coefficient), by distinct-degree
/// factorization; empty when f is not squarefree mod p.
std::vector<int> factor_degrees_mod(const UPoly& f, long p);

}  // namespace recmahler
