#include "recmahler/lll.hpp"

#include "recmahler/error.hpp"

namespace recmahler {

namespace {

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// round(a / b) for b > 0, ties away from zero
BigInt round_div(const BigInt& a, const BigInt& b) {
  BigInt q, twice = 2 * a + (sgn(a) >= 0 ? b : BigInt(-b));
  mpz_tdiv_q(q.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * b).get_mpz_t());
  return q;
}

class Integral {
 public:
  Integral(IntMatrix& b, const Rat& delta) : b_(b), n_(b.size()), delta_(delta) {
    lam_.assign(n_, std::vector<BigInt>(n_, 0));
    d_.assign(n_ + 1, 0);  // d_[i + 1] holds d_i, d_[0] = 1
    d_[0] = 1;
  }

  std::size_t run() {
    if (n_ == 0) return 0;
    d_[1] = dot(b_[0], b_[0]);
    if (d_[1] == 0) throw Error(ErrorCode::InvalidArgument, "LLL input rows are dependent");
    std::size_t k = 1, kmax = 0;
    while (k < n_) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt(k);
      }
      for (;;) {
        reduce(k, k - 1);
        if (lovasz_fails(k)) {
          swap(k, kmax);
          ++swaps_;
          if (k > 1) --k;
          continue;
        }
        for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
        ++k;
        break;
      }
    }
    return swaps_;
  }

  std::vector<BigInt> d() const { return {d_.begin() + 1, d_.end()}; }

 private:
  BigInt& D(std::ptrdiff_t i) { return d_[static_cast<std::size_t>(i + 1)]; }

  void gram_schmidt(std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      BigInt u = dot(b_[k], b_[j]);
      for (std::size_t i = 0; i < j; ++i) {
        u = D(static_cast<std::ptrdiff_t>(i)) * u - lam_[k][i] * lam_[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), D(static_cast<std::ptrdiff_t>(i) - 1).get_mpz_t());
      }
      if (j < k) {
        lam_[k][j] = u;
      } else {
        if (u == 0) throw Error(ErrorCode::InvalidArgument, "LLL input rows are dependent");
        D(static_cast<std::ptrdiff_t>(k)) = u;
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    const BigInt& dl = D(static_cast<std::ptrdiff_t>(l));
    if (2 * abs(lam_[k][l]) <= dl) return;
    const BigInt q = round_div(lam_[k][l], dl);
    for (std::size_t c = 0; c < b_[k].size(); ++c) b_[k][c] -= q * b_[l][c];
    lam_[k][l] -= q * dl;
    for (std::size_t i = 0; i < l; ++i) lam_[k][i] -= q * lam_[l][i];
  }

  // d_k d_{k-2} < delta d_{k-1}^2 - lam_{k,k-1}^2
  bool lovasz_fails(std::size_t k) {
    const auto kk = static_cast<std::ptrdiff_t>(k);
    const BigInt lhs = D(kk) * D(kk - 2) * delta_.get_den();
    const BigInt rhs = delta_.get_num() * D(kk - 1) * D(kk - 1) - delta_.get_den() * lam_[k][k - 1] * lam_[k][k - 1];
    return lhs < rhs;
  }

  void swap(std::size_t k, std::size_t kmax) {
    const auto kk = static_cast<std::ptrdiff_t>(k);
    std::swap(b_[k], b_[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    const BigInt lam = lam_[k][k - 1];
    BigInt B = D(kk - 2) * D(kk) + lam * lam;
    mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), D(kk - 1).get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const BigInt t = lam_[i][k];
      BigInt a = D(kk) * lam_[i][k - 1] - lam * t;
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), D(kk - 1).get_mpz_t());
      lam_[i][k] = a;
      BigInt c = B * t + lam * lam_[i][k];
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), D(kk).get_mpz_t());
      lam_[i][k - 1] = c;
    }
    D(kk - 1) = B;
  }

  IntMatrix& b_;
  std::size_t n_;
  Rat delta_;
  std::vector<std::vector<BigInt>> lam_;
  std::vector<BigInt> d_;
  std::size_t swaps_ = 0;
};

}  // namespace

LllResult lll_reduce(IntMatrix basis, const Rat& delta) {
  if (!(delta > Rat(1, 4)) || delta > 1) throw Error(ErrorCode::InvalidArgument, "LLL needs 1/4 < delta <= 1");
  for (const auto& row : basis)
    if (row.size() != basis.front().size()) throw Error(ErrorCode::InvalidArgument, "ragged LLL basis");
  Integral lll(basis, delta);
  LllResult r;
  r.swaps = lll.run();
  r.d = lll.d();
  r.basis = std::move(basis);
  return r;
}

Rat gram_schmidt_norm2(const LllResult& r, std::size_t i) {
  const BigInt prev = i == 0 ? BigInt(1) : r.d[i - 1];
  Rat q(r.d[i], prev);
  q.canonicalize();
  return q;
}

}  // namespace recmahler
