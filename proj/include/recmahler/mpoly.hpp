#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "recmahler/error.hpp"
#include "recmahler/rat.hpp"

namespace recmahler {

/// Sparse polynomial in a fixed number of variables with integer
/// coefficients. Monomials are exponent vectors kept in a sorted map and
/// zero coefficients are never stored, so equal polynomials compare equal.
class IntPoly {
 public:
  using Monomial = std::vector<unsigned>;

  explicit IntPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static IntPoly constant(std::size_t nvars, const BigInt& c);
  /// The variable with index i (0-based).
  static IntPoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(const Monomial& e) const;
  unsigned total_degree() const;

  void add_term(const Monomial& e, const BigInt& c);

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  IntPoly operator-() const;
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly scaled(const BigInt& c) const;

  IntPoly derivative(std::size_t i) const;

  /// Same polynomial viewed in `nvars` variables; variable i becomes
  /// variable slots[i].
  IntPoly relabeled(std::size_t nvars, const std::vector<std::size_t>& slots) const;

  /// Value at the given point; `one` fixes the scalar type's context.
  template <class S>
  S evaluate(const std::vector<S>& point, const S& one) const;

  /// Human-readable form, highest total degree first.
  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same(const IntPoly& o) const;

  std::size_t nvars_;
  std::map<Monomial, BigInt> terms_;
};

/// p(images[0], images[1], ...); every image lives in the same ring.
IntPoly compose(const IntPoly& p, const std::vector<IntPoly>& images);

/// Scalar multiple of a backend value by an integer.
template <class S>
S times_integer(const S& s, const BigInt& c, const S& one);

template <class S>
S IntPoly::evaluate(const std::vector<S>& point, const S& one) const {
  if (point.size() != nvars_) throw Error(ErrorCode::InvalidArgument, "point has the wrong number of variables");
  // powers[i][e] = point[i]^e, filled on demand
  std::vector<std::vector<S>> powers(nvars_, std::vector<S>{one});
  S acc = times_integer(one, BigInt(0), one);
  for (const auto& [e, c] : terms_) {
    S t = times_integer(one, c, one);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
      t = t * pw[e[i]];
    }
    acc = acc + t;
  }
  return acc;
}

template <class S>
S times_integer(const S& s, const BigInt& c, const S& one) {
  if constexpr (std::is_same_v<S, IntPoly>) {
    (void)one;
    return s.scaled(c);
  } else if constexpr (std::is_same_v<S, Rat>) {
    (void)one;
    return Rat(s * Rat(c));
  } else {
    // backend scalars have a from_rat with their own context; build c from
    // the unit by binary expansion to keep the context of `one`
    S r = one - one;
    S base = s;
    BigInt n = abs(c);
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t())) r = r + base;
      n >>= 1;
      if (n > 0) base = base + base;
    }
    return sgn(c) < 0 ? -r : r;
  }
}

}  // namespace recmahler
