#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "recmahler/backend.hpp"

namespace recmahler {

/// Bivariate truncated Taylor expansion sum c[l][m] X^l Y^m, 0<=l<=L,
/// 0<=m<=M. At an expansion point (x0, y0) the coefficient c[l][m] equals
/// (1/(l! m!)) d^{l+m} f / dx^l dy^m.
template <class S>
class BiJet {
 public:
  BiJet() : BiJet(0, 0, S()) {}
  BiJet(int L, int M, const S& zero)
      : L_(L), M_(M), zero_(zero), c_(static_cast<std::size_t>((L + 1) * (M + 1)), zero) {}

  static BiJet constant(int L, int M, const S& value, const S& zero) {
    BiJet j(L, M, zero);
    j.at(0, 0) = value;
    return j;
  }

  int L() const { return L_; }
  int M() const { return M_; }

  S& at(int l, int m) { return c_[index(l, m)]; }
  const S& at(int l, int m) const { return c_[index(l, m)]; }
  const std::vector<S>& coefficients() const { return c_; }
  const S& zero() const { return zero_; }

  BiJet& operator+=(const BiJet& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BiJet& operator-=(const BiJet& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend BiJet operator+(BiJet a, const BiJet& b) { return a += b; }
  friend BiJet operator-(BiJet a, const BiJet& b) { return a -= b; }
  BiJet operator-() const {
    BiJet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  /// Truncated Cauchy product.
  friend BiJet operator*(const BiJet& a, const BiJet& b) {
    a.check_same(b);
    BiJet r(a.L_, a.M_, a.zero_);
    for (int i = 0; i <= a.L_; ++i)
      for (int j = 0; j <= a.M_; ++j) {
        const S& aij = a.at(i, j);
        if (is_exact_zero(aij)) continue;
        for (int l = i; l <= a.L_; ++l)
          for (int m = j; m <= a.M_; ++m) r.at(l, m) += aij * b.at(l - i, m - j);
      }
    return r;
  }

  BiJet scaled(const S& s) const {
    BiJet r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
  }

  /// Reciprocal by the coefficient recursion
  /// b00 = 1/a00, b[l][m] = -b00 * sum_{(i,j) != (0,0)} a[i][j] b[l-i][m-j].
  BiJet recip() const {
    if (Backend<S>::maybe_zero(at(0, 0)))
      throw Error(ErrorCode::ZeroConstantTerm, "jet reciprocal: constant coefficient may vanish");
    const S inv = Backend<S>::inverse(at(0, 0));
    BiJet r(L_, M_, zero_);
    for (int l = 0; l <= L_; ++l)
      for (int m = 0; m <= M_; ++m) {
        if (l == 0 && m == 0) {
          r.at(0, 0) = inv;
          continue;
        }
        S acc = zero_;
        for (int i = 0; i <= l; ++i)
          for (int j = 0; j <= m; ++j) {
            if (i == 0 && j == 0) continue;
            acc += at(i, j) * r.at(l - i, m - j);
          }
        r.at(l, m) = -(acc * inv);
      }
    return r;
  }

  /// Keep only coefficients with l <= L, m <= M.
  BiJet truncated(int L, int M) const {
    BiJet r(L, M, zero_);
    for (int l = 0; l <= L && l <= L_; ++l)
      for (int m = 0; m <= M && m <= M_; ++m) r.at(l, m) = at(l, m);
    return r;
  }

  template <class F>
  BiJet map(F&& f) const {
    BiJet r = *this;
    for (auto& x : r.c_) x = f(x);
    return r;
  }

 private:
  std::size_t index(int l, int m) const {
    return static_cast<std::size_t>(l * (M_ + 1) + m);
  }
  void check_same(const BiJet& o) const {
    if (o.L_ != L_ || o.M_ != M_)
      throw Error(ErrorCode::BackendMismatch, "jet orders differ");
  }
  static bool is_exact_zero(const S& s) {
    if constexpr (std::is_same_v<S, ComplexBall>) {
      return s.is_exact_zero();
    } else if constexpr (std::is_same_v<S, PAdic>) {
      return s.zero() && s.v() == PAdic::kExactZero;
    } else {
      return sgn(s) == 0;
    }
  }

  int L_;
  int M_;
  S zero_;
  std::vector<S> c_;
};

/// Jet of the coordinate function x0 + X (or y0 + Y) over backend S.
template <class S>
BiJet<S> coordinate_jet(int L, int M, bool is_x, const Rat& point, const typename Backend<S>::Context& ctx) {
  const S zero = Backend<S>::from_rat(Rat(0), ctx);
  BiJet<S> j(L, M, zero);
  j.at(0, 0) = Backend<S>::from_rat(point, ctx);
  if (is_x && L >= 1) j.at(1, 0) = Backend<S>::from_rat(Rat(1), ctx);
  if (!is_x && M >= 1) j.at(0, 1) = Backend<S>::from_rat(Rat(1), ctx);
  return j;
}

/// Convert an exact jet into backend S.
template <class S>
BiJet<S> convert_jet(const BiJet<Rat>& j, const typename Backend<S>::Context& ctx) {
  const S zero = Backend<S>::from_rat(Rat(0), ctx);
  BiJet<S> r(j.L(), j.M(), zero);
  for (int l = 0; l <= j.L(); ++l)
    for (int m = 0; m <= j.M(); ++m) r.at(l, m) = Backend<S>::from_rat(j.at(l, m), ctx);
  return r;
}

}  // namespace recmahler
