#include "recmahler/linalg.hpp"

#include "recmahler/error.hpp"

namespace recmahler {

namespace {

void make_primitive(IntVector& row) {
  BigInt g = 0;
  for (const auto& x : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  if (a[0].size() != inner) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not match");
  IntMatrix r(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

IntVector multiply(const IntMatrix& a, const IntVector& v) {
  IntVector r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not match");
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  }
  return r;
}

BigInt determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(t);
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Echelon echelon(IntMatrix m) {
  Echelon e;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    make_primitive(m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const BigInt f = m[i][c], piv = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = piv * m[i][j] - f * m[r][j];
      make_primitive(m[i]);
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

IntMatrix integer_rows(const RatMatrix& m) {
  IntMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    BigInt l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector r;
    r.reserve(row.size());
    for (const auto& x : row) r.push_back(BigInt(x.get_num() * (l / x.get_den())));
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t rank(const RatMatrix& m) { return echelon(integer_rows(m)).pivots.size(); }

std::vector<IntVector> kernel(const IntMatrix& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  const Echelon e = echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = e.pivots.size(); i-- > 0;) {
      const std::size_t pc = e.pivots[i];
      Rat s = 0;
      for (std::size_t j = pc + 1; j < cols; ++j)
        if (sgn(v[j]) != 0) s += Rat(e.rows[i][j]) * v[j];
      v[pc] = -s / Rat(e.rows[i][pc]);
    }
    BigInt l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector iv;
    for (const auto& x : v) iv.push_back(BigInt(x.get_num() * (l / x.get_den())));
    make_primitive(iv);
    basis.push_back(std::move(iv));
  }
  return basis;
}

std::vector<IntVector> kernel(const RatMatrix& m) { return kernel(integer_rows(m)); }

}  // namespace recmahler
