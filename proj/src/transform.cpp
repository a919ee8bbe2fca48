#include "recmahler/transform.hpp"

#include <algorithm>
#include <sstream>

#include "recmahler/error.hpp"
#include "recmahler/roots.hpp"

namespace recmahler {

OmegaTransform::OmegaTransform(IntMatrix m) : m_(std::move(m)), cache_(std::make_shared<Cache>()) {
  const std::size_t n = m_.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  for (const auto& row : m_) {
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    for (const auto& x : row)
      if (x < 0) throw Error(ErrorCode::NegativeCoeff, "matrix entries must be nonnegative");
  }
  cache_->powers.push_back(identity_matrix(n));
}

OmegaTransform OmegaTransform::companion(const LinearRecurrence& rec) {
  const std::size_t n = rec.order();
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][0] = rec.coeffs()[i];
    if (i + 1 < n) m[i][i + 1] = 1;
  }
  return OmegaTransform(std::move(m));
}

IntMatrix OmegaTransform::power(std::size_t k) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& p = cache_->powers;
  while (p.size() <= k) p.push_back(multiply(p.back(), m_));
  return p[k];
}

UPoly OmegaTransform::char_poly() const {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  const std::size_t n = m_.size();
  std::vector<BigInt> c(n + 1, 0);
  c[n] = 1;
  IntMatrix M(n, IntVector(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = multiply(m_, M);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    M = std::move(next);
    const IntMatrix AM = multiply(m_, M);
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  return UPoly(std::move(c));
}

namespace {

unsigned long bit_size(const Rat& q) {
  if (abs(q) == 1) return 0;
  return std::max(mpz_sizeinbase(q.get_num_mpz_t(), 2), mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

void check_point(const OmegaTransform& omega, const MPoint& z) {
  if (z.coords.size() != omega.size())
    throw Error(ErrorCode::BadPoint, "point has " + std::to_string(z.coords.size()) + " coordinates, expected " +
                                         std::to_string(omega.size()));
  for (const auto& x : z.coords)
    if (sgn(x) == 0) throw Error(ErrorCode::BadPoint, "point coordinates must be nonzero");
}

Rat power_signed(const Rat& base, const BigInt& e) {
  return pow(base, to_ulong_checked(e, "exponent"));
}

}  // namespace

MPoint apply(const OmegaTransform& omega, const MPoint& z, std::size_t k, unsigned long bit_cap) {
  check_point(omega, z);
  const IntMatrix W = omega.power(k);
  MPoint out{{}, z.place};
  for (const auto& row : W) {
    BigInt bits = 0;
    for (std::size_t j = 0; j < row.size(); ++j) bits += row[j] * bit_size(z.coords[j]);
    if (bits > bit_cap)
      throw Error(ErrorCode::ExponentOverflow, "coordinate would need about " + bits.get_str() + " bits (cap " +
                                                   std::to_string(bit_cap) + ")");
    Rat v = 1;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0 || z.coords[j] == 1) continue;
      if (z.coords[j] == -1) {
        if (mpz_odd_p(row[j].get_mpz_t())) v = -v;
        continue;
      }
      v *= power_signed(z.coords[j], row[j]);
    }
    out.coords.push_back(v);
  }
  return out;
}

std::vector<BigInt> monomial_exponents(const LinearRecurrence& rec, std::size_t k) {
  const std::size_t n = rec.order();
  std::vector<BigInt> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(rec.term(k + n - 1 - i));
  return e;
}

Clause check_I(const OmegaTransform& omega) {
  Clause c{"I", Verdict::Pass, ""};
  const BigInt det = determinant(omega.matrix());
  if (det == 0) {
    c.verdict = Verdict::Fail;
    c.evidence = "singular: det=0";
    return c;
  }
  const UPoly chi = omega.char_poly();
  const long n = static_cast<long>(omega.size());
  for (long m = 1; m <= 2 * n * n + 2; ++m) {
    if (euler_phi(m) > n) continue;
    if (divide_exact(chi, cyclotomic(m))) {
      c.verdict = Verdict::Fail;
      c.evidence = "det=" + det.get_str() + "; characteristic polynomial " + chi.to_string() +
                   " has a primitive " + std::to_string(m) + "-th root of unity as eigenvalue";
      return c;
    }
  }
  c.evidence = "det=" + det.get_str() + "; no cyclotomic factor of " + chi.to_string();
  return c;
}

namespace {

// Largest-modulus root of the squarefree part of the characteristic polynomial.
std::optional<ComplexBall> spectral_root(const OmegaTransform& omega, mpfr_prec_t prec) {
  const UPoly chi = omega.char_poly();
  UPoly sf = chi;
  const UPoly g = gcd(chi, chi.derivative());
  if (g.degree() > 0) sf = *divide_exact(chi, g);
  // drop zero roots
  while (sf.degree() > 0 && sf.coeff(0) == 0) sf = *divide_exact(sf, UPoly::linear(0));
  if (sf.degree() < 1) return std::nullopt;
  const auto roots = isolate_roots(sf, prec);
  if (!roots) return std::nullopt;
  if (const auto idx = dominant_root(*roots)) return (*roots)[*idx];
  const ComplexBall* best = &roots->front();
  for (const auto& r : *roots)
    if (best->abs_upper() < r.abs_upper()) best = &r;
  return *best;
}

BigFloat abs_mid(const ComplexBall& z) {
  BigFloat r(z.prec());
  mpfr_hypot(r.get(), z.re().get(), z.im().get(), MPFR_RNDN);
  return r;
}

}  // namespace

Clause check_II(const OmegaTransform& omega, std::size_t K) {
  Clause c{"II", Verdict::Unknown, ""};
  const UPoly chi = omega.char_poly();
  if (is_squarefree(chi)) {
    c.verdict = Verdict::Pass;
    c.evidence = "certified: squarefree characteristic polynomial, so Omega is diagonalizable and entries of Omega^k are O(rho^k)";
    return c;
  }
  const auto root = spectral_root(omega, 128);
  if (!root) {
    c.evidence = "spectral radius not isolated";
    return c;
  }
  const BigFloat rho = abs_mid(*root);
  if (rho.sign() <= 0) {
    c.evidence = "spectral radius zero";
    return c;
  }
  if (K < 8) K = 8;
  auto ratio = [&](std::size_t k) {
    BigInt mx = 0;
    for (const auto& row : omega.power(k))
      for (const auto& x : row) mx = std::max(mx, x);
    BigFloat r(128), rk(128);
    mpfr_pow_ui(rk.get(), rho.get(), k, MPFR_RNDN);
    mpfr_set_z(r.get(), mx.get_mpz_t(), MPFR_RNDN);
    mpfr_div(r.get(), r.get(), rk.get(), MPFR_RNDN);
    return r.to_double();
  };
  const double late = ratio(K), mid = ratio(K / 2);
  const double growth = late / mid;
  std::ostringstream ev;
  ev << "empirical: max entry / rho^k grows by a factor " << growth << " between k=" << K / 2 << " and k=" << K;
  c.evidence = ev.str();
  if (growth >= 1.5)
    c.verdict = Verdict::Fail;
  else if (growth <= 1.1)
    c.verdict = Verdict::Pass;
  return c;
}

namespace {

BigFloat log_abs_at(const Rat& q, const Place& place, mpfr_prec_t prec) {
  BigFloat out(prec);
  if (place.is_infinite()) {
    BigFloat num(prec), den(prec);
    mpfr_set_z(num.get(), q.get_num_mpz_t(), MPFR_RNDN);
    mpfr_abs(num.get(), num.get(), MPFR_RNDN);
    mpfr_set_z(den.get(), q.get_den_mpz_t(), MPFR_RNDN);
    mpfr_log(num.get(), num.get(), MPFR_RNDN);
    mpfr_log(den.get(), den.get(), MPFR_RNDN);
    mpfr_sub(out.get(), num.get(), den.get(), MPFR_RNDN);
  } else {
    mpfr_log_ui(out.get(), static_cast<unsigned long>(place.p()), MPFR_RNDN);
    mpfr_mul_si(out.get(), out.get(), -valuation(q, place.p()), MPFR_RNDN);
  }
  return out;
}

}  // namespace

ConditionIII check_III(const OmegaTransform& omega, const MPoint& z, std::size_t K) {
  check_point(omega, z);
  ConditionIII r;
  r.clause = {"III", Verdict::Unknown, ""};
  const mpfr_prec_t prec = 128;
  const auto root = spectral_root(omega, prec);
  if (!root) {
    r.clause.evidence = "spectral radius not isolated";
    return r;
  }
  const BigFloat rho = abs_mid(*root);
  std::vector<BigFloat> logs;
  for (const auto& x : z.coords) logs.push_back(log_abs_at(x, z.place, prec));
  if (K < 4) K = 4;
  BigFloat c(prec);
  mpfr_set_inf(c.get(), 1);
  for (std::size_t k = K / 2; k <= K; ++k) {
    const IntMatrix W = omega.power(k);
    BigFloat rk(prec);
    mpfr_pow_ui(rk.get(), rho.get(), k, MPFR_RNDN);
    for (const auto& row : W) {
      BigFloat s(prec), t(prec);
      for (std::size_t j = 0; j < row.size(); ++j) {
        mpfr_mul_z(t.get(), logs[j].get(), row[j].get_mpz_t(), MPFR_RNDN);
        mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
      }
      mpfr_neg(s.get(), s.get(), MPFR_RNDN);
      mpfr_div(s.get(), s.get(), rk.get(), MPFR_RNDN);
      mpfr_min(c.get(), c.get(), s.get(), MPFR_RNDN);
    }
  }
  r.c = c.to_double();
  r.c_decimal = c.to_decimal(12);
  std::ostringstream ev;
  ev << "min over i and " << K / 2 << "<=k<=" << K << " of -log|z_i^(k)|_" << z.place.to_string() << " / rho^k = "
     << r.c_decimal;
  r.clause.evidence = ev.str();
  r.clause.verdict = c.sign() > 0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

namespace {

ComplexBall ball_det(const std::vector<std::vector<ComplexBall>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  ComplexBall acc(m[0][0].prec());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_exact_zero()) continue;
    std::vector<std::vector<ComplexBall>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<ComplexBall> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const ComplexBall t = m[0][c] * ball_det(minor);
    if (c % 2 == 0)
      acc += t;
    else
      acc -= t;
  }
  return acc;
}

ConditionIV cofactor_test(const OmegaTransform& omega, const MPoint& z) {
  ConditionIV r;
  r.method = "cofactor-test";
  r.clause = {"IV", Verdict::Unknown, ""};
  const mpfr_prec_t prec = 256;
  const std::size_t n = omega.size();
  const UPoly chi = omega.char_poly();
  const IrreducibilityResult irr = is_irreducible_over_Q(chi);
  if (irr.verdict != Verdict::Pass) {
    r.clause.evidence = "characteristic polynomial not certified irreducible: " + irr.evidence;
    return r;
  }
  const auto roots = isolate_roots(chi, prec);
  const auto idx = roots ? dominant_root(*roots) : std::nullopt;
  if (!idx) {
    r.clause.evidence = "dominant root not certified";
    return r;
  }
  const ComplexBall& root = (*roots)[*idx];
  const ComplexBall rho(root.re(), BigFloat(prec), root.rad() + Bound::abs_of(root.im()));

  // A - rho E
  std::vector<std::vector<ComplexBall>> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexBall e = ComplexBall::from_rat(Rat(omega.matrix()[i][j]), prec);
      if (i == j) e -= rho;
      a[i].push_back(e);
    }

  BigFloat log_lo(Bound::kPrec), log_hi(Bound::kPrec);
  mpfr_log_ui(log_lo.get(), static_cast<unsigned long>(z.place.p()), MPFR_RNDD);
  mpfr_log_ui(log_hi.get(), static_cast<unsigned long>(z.place.p()), MPFR_RNDU);

  BigFloat sum_hi(Bound::kPrec);
  std::ostringstream ev;
  ev << "rho=" << rho.re().to_decimal(15) << "; cofactors A_i1 =";
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<ComplexBall>> minor;
    for (std::size_t rr = 0; rr < n; ++rr) {
      if (rr == i) continue;
      std::vector<ComplexBall> row(a[rr].begin() + 1, a[rr].end());
      minor.push_back(std::move(row));
    }
    ComplexBall cof = n == 1 ? ComplexBall::from_rat(Rat(1), prec) : ball_det(minor);
    if (i % 2 == 1) cof = -cof;
    ev << " " << cof.re().to_decimal(10);
    const BigFloat lo = cof.abs_lower();
    if (lo.is_zero()) {
      r.clause.evidence = ev.str() + "; a cofactor is not certified nonzero";
      return r;
    }
    const long v = valuation(z.coords[i], z.place.p());
    // upper bound of |A_i1| * log|z_i|_p with log|z_i|_p = -v log p
    BigFloat t(Bound::kPrec);
    if (v > 0) {
      mpfr_mul(t.get(), lo.get(), log_lo.get(), MPFR_RNDD);
      mpfr_mul_si(t.get(), t.get(), -v, MPFR_RNDU);
    } else if (v < 0) {
      mpfr_mul(t.get(), cof.abs_upper().get(), log_hi.get(), MPFR_RNDU);
      mpfr_mul_si(t.get(), t.get(), -v, MPFR_RNDU);
    }
    mpfr_add(sum_hi.get(), sum_hi.get(), t.get(), MPFR_RNDU);
  }
  ev << "; sum |A_i1| log|z_i|_p <= " << sum_hi.to_decimal(10, MPFR_RNDU);
  r.clause.evidence = ev.str();
  if (sum_hi.sign() < 0) r.clause.verdict = Verdict::Pass;
  return r;
}

// Pairwise coprime integers > 1 such that every input factors over them.
std::vector<BigInt> coprime_base(std::vector<BigInt> xs) {
  std::vector<BigInt> base;
  for (auto& x : xs)
    if (x > 1) base.push_back(x);
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    for (std::size_t i = 0; i < base.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
        if (g == 1) continue;
        const BigInt a = base[i] / g, b = base[j] / g;
        base.erase(base.begin() + static_cast<long>(j));
        base.erase(base.begin() + static_cast<long>(i));
        for (const BigInt& y : {a, b, g})
          if (y > 1) base.push_back(y);
        changed = true;
      }
  }
  return base;
}

// Exponent of each base element in x; the cofactor must be 1.
std::optional<std::vector<long>> factor_over(BigInt x, const std::vector<BigInt>& base) {
  std::vector<long> e(base.size(), 0);
  for (std::size_t i = 0; i < base.size(); ++i)
    while (mpz_divisible_p(x.get_mpz_t(), base[i].get_mpz_t())) {
      x /= base[i];
      ++e[i];
    }
  if (x != 1) return std::nullopt;
  return e;
}

bool in_lex_order_next(std::vector<long>& m, long h) {
  for (std::size_t i = m.size(); i-- > 0;) {
    if (m[i] < h) {
      ++m[i];
      return true;
    }
    m[i] = -h;
  }
  return false;
}

ConditionIV relation_search(const OmegaTransform& omega, const MPoint& z, const IVBounds& bounds) {
  ConditionIV r;
  r.method = "masser-search";
  r.clause = {"IV", Verdict::Unknown, ""};
  const std::size_t n = omega.size();

  // |z_j| = prod_q q^{E_jq} over a coprime base; sign bits separately.
  std::vector<BigInt> raw;
  for (const auto& x : z.coords) {
    raw.push_back(abs(BigInt(x.get_num())));
    raw.push_back(x.get_den());
  }
  const std::vector<BigInt> base = coprime_base(raw);
  if (base.size() > 64) throw Error(ErrorCode::UnsupportedPoint, "coprime base too large");
  std::vector<IntVector> columns(base.size(), IntVector(n, 0));
  IntVector negative(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto en = factor_over(abs(BigInt(z.coords[j].get_num())), base);
    const auto ed = factor_over(BigInt(z.coords[j].get_den()), base);
    if (!en || !ed) throw Error(ErrorCode::UnsupportedPoint, "coordinate does not factor over the coprime base");
    for (std::size_t q = 0; q < base.size(); ++q) columns[q][j] = (*en)[q] - (*ed)[q];
    negative[j] = sgn(z.coords[j]) < 0 ? 1 : 0;
  }

  const long H = bounds.height;
  for (long b = 1; b <= bounds.modulus; ++b)
    for (long a = 1; a <= b; ++a) {
      // By Cayley-Hamilton the rows for l = 0..n-1 span those for all l >= 0.
      IntMatrix rows, parity;
      for (std::size_t l = 0; l < n; ++l) {
        const IntMatrix W = omega.power(static_cast<std::size_t>(a + static_cast<long>(l) * b));
        for (const auto& col : columns) rows.push_back(multiply(W, col));
        parity.push_back(multiply(W, negative));
      }
      auto parity_ok = [&](const std::vector<long>& m) {
        for (const auto& row : parity) {
          BigInt s = 0;
          for (std::size_t i = 0; i < n; ++i) s += row[i] * m[i];
          if (mpz_odd_p(s.get_mpz_t())) return false;
        }
        return true;
      };
      auto magnitude_ok = [&](const std::vector<long>& m) {
        for (const auto& row : rows) {
          BigInt s = 0;
          for (std::size_t i = 0; i < n; ++i) s += row[i] * m[i];
          if (s != 0) return false;
        }
        return true;
      };
      std::vector<IntVector> ker;
      if (rows.empty()) {
        ker.assign(2, IntVector(n, 0));  // full space, dimension >= 2 path
      } else {
        ker = kernel(rows);
      }
      if (ker.empty()) continue;

      std::optional<std::vector<long>> found;
      if (ker.size() == 1 && !rows.empty()) {
        BigInt h = 0;
        for (const auto& x : ker[0]) h = std::max(h, BigInt(abs(x)));
        // orient so that the first nonzero entry is positive
        BigInt sign = 1;
        for (const auto& x : ker[0])
          if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
          }
        for (long t = 1; h * t <= H && !found; ++t) {
          std::vector<long> m;
          for (const auto& x : ker[0]) m.push_back(BigInt(x * sign * t).get_si());
          if (parity_ok(m)) found = m;
        }
      } else {
        if (n > 4) throw Error(ErrorCode::UnsupportedPoint, "relation lattice of dimension >= 2 in more than 4 variables");
        for (long h = 1; h <= H && !found; ++h) {
          std::vector<long> m(n, -h);
          do {
            long mx = 0;
            bool canonical = false;
            for (long x : m) mx = std::max(mx, std::abs(x));
            for (long x : m)
              if (x != 0) {
                canonical = x > 0;
                break;
              }
            if (mx != h || !canonical) continue;
            if (magnitude_ok(m) && parity_ok(m)) found = m;
          } while (!found && in_lex_order_next(m, h));
        }
      }
      if (found) {
        r.clause.verdict = Verdict::Fail;
        for (long x : *found) r.witness.emplace_back(x);
        r.progression_start = a;
        r.progression_step = b;
        std::ostringstream ev;
        ev << "relation prod_i (z_i^(k))^{m_i} = 1 with m=(";
        for (std::size_t i = 0; i < found->size(); ++i) ev << (i ? "," : "") << (*found)[i];
        ev << ") for all k = " << a << " + " << b << "*l";
        r.clause.evidence = ev.str();
        return r;
      }
    }
  r.clause.verdict = Verdict::Pass;
  r.clause.evidence = "bounded: no relation of height <= " + std::to_string(H) +
                      " along progressions of modulus <= " + std::to_string(bounds.modulus);
  return r;
}

}  // namespace

ConditionIV check_IV(const OmegaTransform& omega, const MPoint& z, const IVBounds& bounds) {
  check_point(omega, z);
  if (z.place.is_infinite()) {
    try {
      return relation_search(omega, z, bounds);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedPoint) throw;
      ConditionIV r;
      r.method = "masser-search";
      r.clause = {"IV", Verdict::Unknown, std::string("UnsupportedPoint: ") + e.what()};
      return r;
    }
  }
  return cofactor_test(omega, z);
}

OmegaConditionReport check_omega(const OmegaTransform& omega, const MPoint& z, std::size_t K,
                                 const IVBounds& bounds) {
  OmegaConditionReport r;
  r.place = z.place;
  const Clause one = check_I(omega);
  r.clauses.push_back(one);
  if (one.verdict == Verdict::Pass)
    r.clauses.push_back(check_II(omega, K));
  else
    r.clauses.push_back({"II", Verdict::Unknown, "not evaluated: (I) does not hold"});
  const ConditionIII three = check_III(omega, z, K);
  r.clauses.push_back(three.clause);
  r.c_estimate = three.c_decimal;
  const ConditionIV four = check_IV(omega, z, bounds);
  r.clauses.push_back(four.clause);
  r.iv_method = four.method;
  r.iv_witness = four.witness;
  r.overall = combine(r.clauses);
  return r;
}

}  // namespace recmahler
