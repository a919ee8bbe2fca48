#include "recmahler/recurrence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "recmahler/error.hpp"
#include "recmahler/height.hpp"
#include "recmahler/linalg.hpp"
#include "recmahler/roots.hpp"

namespace recmahler {

LinearRecurrence::LinearRecurrence(std::vector<BigInt> c, std::vector<BigInt> init)
    : c_(std::move(c)), init_(std::move(init)), cache_(std::make_shared<Cache>()) {
  cache_->terms = init_;
}

LinearRecurrence LinearRecurrence::make(std::vector<BigInt> c, std::vector<BigInt> init) {
  if (c.size() < 2) throw Error(ErrorCode::OrderTooSmall, "recurrence order must be at least 2");
  if (init.size() != c.size())
    throw Error(ErrorCode::InvalidArgument, "need exactly " + std::to_string(c.size()) + " initial terms");
  for (const auto& x : c)
    if (x < 0) throw Error(ErrorCode::NegativeCoeff, "recurrence coefficients must be nonnegative");
  for (const auto& x : init)
    if (x < 0) throw Error(ErrorCode::NegativeCoeff, "initial terms must be nonnegative");
  if (c.back() == 0) throw Error(ErrorCode::LastCoeffZero, "last recurrence coefficient must be nonzero");
  if (std::all_of(init.begin(), init.end(), [](const BigInt& x) { return x == 0; }))
    throw Error(ErrorCode::AllZeroInit, "initial terms are all zero");
  return LinearRecurrence(std::move(c), std::move(init));
}

BigInt LinearRecurrence::term(std::size_t k) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& t = cache_->terms;
  const std::size_t n = c_.size();
  while (t.size() <= k) {
    BigInt next = 0;
    const std::size_t m = t.size();
    for (std::size_t i = 0; i < n; ++i) next += c_[i] * t[m - 1 - i];
    t.push_back(std::move(next));
  }
  return t[k];
}

std::vector<BigInt> LinearRecurrence::terms(std::size_t count) const {
  if (count == 0) return {};
  term(count - 1);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return std::vector<BigInt>(cache_->terms.begin(), cache_->terms.begin() + static_cast<long>(count));
}

UPoly LinearRecurrence::char_poly() const {
  const std::size_t n = c_.size();
  std::vector<BigInt> v(n + 1);
  v[n] = 1;
  for (std::size_t i = 0; i < n; ++i) v[n - 1 - i] = -c_[i];
  return UPoly(std::move(v));
}

BigInt LinearRecurrence::coeff_sum() const {
  return std::accumulate(c_.begin(), c_.end(), BigInt(0));
}

bool LinearRecurrence::is_geometric() const {
  const std::size_t n = c_.size();
  if (term(1) == 0) return false;
  for (std::size_t k = 0; k + 2 <= n; ++k)
    if (term(k) * term(k + 2) != term(k + 1) * term(k + 1)) return false;
  return true;
}

LinearRecurrence LinearRecurrence::shift(std::size_t k0) const {
  std::vector<BigInt> init;
  for (std::size_t i = 0; i < c_.size(); ++i) init.push_back(term(k0 + i));
  return LinearRecurrence(c_, std::move(init));
}

GrowthWindow first_positive_window(const LinearRecurrence& rec, std::size_t from) {
  const std::size_t n = rec.order();
  if (rec.coeff_sum() < 2)
    throw Error(ErrorCode::NotGrowing, "coefficient sum below 2: terms do not grow");
  const std::size_t start = std::max(from, n - 1);
  for (std::size_t K = start; K < start + 64 * n; ++K) {
    BigInt m = rec.term(K);
    for (std::size_t i = 1; i < n; ++i) m = std::min(m, rec.term(K - i));
    if (m > 0) return {K, m};
  }
  throw Error(ErrorCode::NotGrowing, "no window of positive terms found");
}

UPoly ratio_polynomial(const UPoly& f) {
  const int n = f.degree();
  if (n < 1 || f.leading() != 1) throw Error(ErrorCode::InvalidArgument, "ratio polynomial needs a monic polynomial");
  const std::size_t nn = static_cast<std::size_t>(n);
  // companion matrix of f
  IntMatrix C(nn, IntVector(nn, 0));
  for (std::size_t i = 0; i + 1 < nn; ++i) C[i + 1][i] = 1;
  for (std::size_t i = 0; i < nn; ++i) C[i][nn - 1] = -f.coeff(i);
  std::vector<IntMatrix> powers{identity_matrix(nn)};
  for (std::size_t i = 1; i <= nn; ++i) powers.push_back(multiply(powers.back(), C));

  // det f(tC) = prod_i f(t rho_i), a polynomial of degree n^2 in t
  std::vector<BigInt> xs, ys;
  for (std::size_t t = 0; t <= nn * nn; ++t) {
    IntMatrix M(nn, IntVector(nn, 0));
    BigInt tp = 1;
    for (std::size_t i = 0; i <= nn; ++i) {
      const BigInt w = f.coeff(i) * tp;
      if (w != 0)
        for (std::size_t r = 0; r < nn; ++r)
          for (std::size_t s = 0; s < nn; ++s) M[r][s] += w * powers[i][r][s];
      tp *= static_cast<unsigned long>(t);
    }
    xs.emplace_back(static_cast<unsigned long>(t));
    ys.push_back(determinant(std::move(M)));
  }
  return interpolate(xs, ys);
}

RootOfUnityRatio ratio_roots_root_of_unity(const UPoly& f) {
  if (!is_squarefree(f)) throw Error(ErrorCode::NonSquarefree, "polynomial has a repeated root");
  UPoly psi = ratio_polynomial(f);
  const UPoly x_minus_1 = UPoly::linear(1);
  for (int i = 0; i < f.degree(); ++i) {
    auto q = divide_exact(psi, x_minus_1);
    if (!q) throw Error(ErrorCode::NonSquarefree, "diagonal factor missing from the ratio polynomial");
    psi = std::move(*q);
  }
  const long D = psi.degree();
  for (long m = 2; m <= 2 * D * D + 2; ++m) {
    if (euler_phi(m) > D) continue;
    if (divide_exact(psi, cyclotomic(m))) return {true, m};
  }
  return {};
}

namespace {

std::vector<BigInt> divisors(const BigInt& v) {
  BigInt a = abs(v);
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    out.push_back(d);
    if (d * d != a) out.push_back(a / d);
  }
  return out;
}

std::string degrees_string(const std::vector<int>& d) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < d.size(); ++i) s << (i ? "," : "") << d[i];
  s << ")";
  return s.str();
}

}  // namespace

IrreducibilityResult is_irreducible_over_Q(const UPoly& f) {
  IrreducibilityResult r;
  const int n = f.degree();
  if (n < 1) {
    r.evidence = "constant polynomial";
    return r;
  }
  if (n == 1) {
    r.verdict = Verdict::Pass;
    r.evidence = "linear";
    return r;
  }
  if (f.coeff(0) == 0) {
    r.verdict = Verdict::Fail;
    r.factor = UPoly::linear(0);
    r.evidence = "X divides " + f.to_string();
    return r;
  }

  // Rational roots of a primitive integer polynomial are p/q with p | f(0), q | lc.
  const bool small = abs(f.coeff(0)) < BigInt("1000000000000") && abs(f.leading()) < BigInt("1000000000000");
  if (small) {
    for (const auto& p : divisors(f.coeff(0)))
      for (const auto& q : divisors(f.leading()))
        for (int s : {1, -1}) {
          const Rat root = make_rat(s * p, q);
          if (sgn(f.eval(root)) != 0) continue;
          r.verdict = Verdict::Fail;
          r.factor = UPoly({-BigInt(root.get_num()), BigInt(root.get_den())});
          r.evidence = "rational root " + to_string(root);
          return r;
        }
  }

  const UPoly g = gcd(f, f.derivative());
  if (g.degree() > 0) {
    r.verdict = Verdict::Fail;
    r.factor = g;
    r.evidence = "repeated factor " + g.to_string();
    return r;
  }
  if (n <= 3 && small) {
    r.verdict = Verdict::Pass;
    r.evidence = "degree " + std::to_string(n) + " without rational roots";
    return r;
  }

  // Factor-degree patterns modulo good primes: a factor over Q of degree d
  // would show up as a subset sum d in every pattern.
  std::vector<bool> possible(static_cast<std::size_t>(n + 1), true);
  std::ostringstream patterns;
  int used = 0;
  for (long p = 2; p < 400 && used < 12; ++p) {
    if (!is_prime(p)) continue;
    const std::vector<int> d = factor_degrees_mod(f, p);
    if (d.empty()) continue;
    std::vector<bool> sums(static_cast<std::size_t>(n + 1), false);
    sums[0] = true;
    for (int x : d)
      for (int s = n; s >= x; --s)
        if (sums[static_cast<std::size_t>(s - x)]) sums[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s <= n; ++s) possible[static_cast<std::size_t>(s)] = possible[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
    patterns << (used ? " " : "") << "p=" << p << ":" << degrees_string(d);
    ++used;
    bool none = true;
    for (int s = 1; s < n; ++s) none = none && !possible[static_cast<std::size_t>(s)];
    if (none && used >= 3) {
      r.verdict = Verdict::Pass;
      r.evidence = "incompatible factor degrees mod " + patterns.str();
      return r;
    }
  }

  if (n <= 8) {
    const auto roots = isolate_roots(f, 256);
    if (!roots) {
      r.evidence = "root isolation failed";
      return r;
    }
    bool ambiguous = false;
    const std::size_t nn = roots->size();
    for (std::size_t size = 1; 2 * size <= nn; ++size) {
      std::vector<bool> pick(nn, false);
      std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
      do {
        // prod (X - rho_i) over the chosen roots, coefficients as balls
        std::vector<ComplexBall> prod{ComplexBall::from_rat(Rat(1), 256)};
        for (std::size_t i = 0; i < nn; ++i) {
          if (!pick[i]) continue;
          std::vector<ComplexBall> next(prod.size() + 1, ComplexBall(256));
          for (std::size_t k = 0; k < prod.size(); ++k) {
            next[k + 1] += prod[k];
            next[k] -= prod[k] * (*roots)[i];
          }
          prod = std::move(next);
        }
        std::vector<BigInt> cand;
        bool integral = true;
        for (const auto& c : prod) {
          if (!(c.rad() < Bound(0.25))) {
            ambiguous = true;
            integral = false;
            break;
          }
          BigFloat rounded(256);
          mpfr_rint(rounded.get(), c.re().get(), MPFR_RNDN);
          BigInt z;
          mpfr_get_z(z.get_mpz_t(), rounded.get(), MPFR_RNDN);
          if (!c.overlaps(ComplexBall::from_rat(Rat(z), 256))) {
            integral = false;
            break;
          }
          cand.push_back(z);
        }
        if (!integral) continue;
        const UPoly h(cand);
        if (divide_exact(f, h)) {
          r.verdict = Verdict::Fail;
          r.factor = h;
          r.evidence = "factor " + h.to_string();
          return r;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    if (!ambiguous) {
      r.verdict = Verdict::Pass;
      r.evidence = "no subset of the certified roots gives an integer factor";
      return r;
    }
  }
  r.evidence = "undecided; degree patterns " + patterns.str();
  return r;
}

namespace {

std::vector<Clause> archimedean_clauses(const LinearRecurrence& rec) {
  std::vector<Clause> out;
  const UPoly phi = rec.char_poly();
  const BigInt at1 = phi.eval(BigInt(1)), atm1 = phi.eval(BigInt(-1));
  out.push_back({"phi_pm1_nonzero", (at1 != 0 && atm1 != 0) ? Verdict::Pass : Verdict::Fail,
                 "Phi(1)=" + at1.get_str() + ", Phi(-1)=" + atm1.get_str()});

  Clause ratio{"ratio_not_root_of_unity", Verdict::Unknown, ""};
  try {
    const auto res = ratio_roots_root_of_unity(phi);
    if (res.found) {
      ratio.verdict = Verdict::Fail;
      ratio.evidence = "a root ratio is a primitive root of unity of order m=" + std::to_string(res.order);
    } else {
      ratio.verdict = Verdict::Pass;
      ratio.evidence = "no cyclotomic factor in the ratio polynomial";
    }
  } catch (const Error& e) {
    ratio.evidence = e.what();
  }
  out.push_back(ratio);

  const bool geo = rec.is_geometric();
  out.push_back({"not_geometric", geo ? Verdict::Fail : Verdict::Pass,
                 geo ? "R_k R_{k+2} = R_{k+1}^2 on the initial window" : "R_k R_{k+2} != R_{k+1}^2 on the initial window"});
  return out;
}

Clause perron_clause(const LinearRecurrence& rec) {
  Clause c{"perron_dominant", Verdict::Unknown, ""};
  // The companion matrix is irreducible; its period is gcd{i : c_i > 0}.
  long period = 0;
  for (std::size_t i = 0; i < rec.order(); ++i)
    if (rec.coeffs()[i] > 0) period = std::gcd(period, static_cast<long>(i + 1));
  if (period > 1) {
    c.verdict = Verdict::Fail;
    c.evidence = "imprimitive companion matrix (period " + std::to_string(period) + "): rho*exp(2*pi*i/" +
                 std::to_string(period) + ") is also a root";
    return c;
  }
  const auto roots = isolate_roots(rec.char_poly(), 256);
  if (!roots) {
    c.evidence = "root isolation failed";
    return c;
  }
  const auto idx = dominant_root(*roots);
  if (!idx) {
    c.evidence = "no root certified strictly dominant";
    return c;
  }
  c.verdict = Verdict::Pass;
  c.evidence = "rho=" + (*roots)[*idx].re().to_decimal(20) + " +/- " + (*roots)[*idx].rad().to_decimal(3) +
               " strictly dominates " + std::to_string(roots->size() - 1) + " other root(s)";
  return c;
}

}  // namespace

ConditionReport check_condition(const LinearRecurrence& rec, const Place& place) {
  ConditionReport r;
  r.place = place;
  if (place.is_infinite()) {
    r.clauses = archimedean_clauses(rec);
  } else {
    const IrreducibilityResult irr = is_irreducible_over_Q(rec.char_poly());
    std::string ev = irr.evidence;
    if (irr.factor) ev += "; factor " + irr.factor->to_string();
    r.clauses.push_back({"irreducible", irr.verdict, ev});
    r.clauses.push_back(perron_clause(rec));
    r.implied = archimedean_clauses(rec);
  }
  r.overall = combine(r.clauses);
  return r;
}

GrowthEstimate growth_estimate(const LinearRecurrence& rec, std::size_t K, mpfr_prec_t prec) {
  if (check_condition(rec, Place::infinity()).overall != Verdict::Pass)
    throw Error(ErrorCode::ConditionNotMet, "growth estimate needs the archimedean condition");
  const auto roots = isolate_roots(rec.char_poly(), prec);
  const auto idx = roots ? dominant_root(*roots) : std::nullopt;
  if (!idx) throw Error(ErrorCode::ConditionNotMet, "Perron root not certified dominant");
  const ComplexBall& r = (*roots)[*idx];
  // The dominant root is real; fold the imaginary midpoint into the radius.
  const ComplexBall rho(r.re(), BigFloat(prec), r.rad() + Bound::abs_of(r.im()));
  if (K < 10) K = 10;
  const ComplexBall inv = rho.inverse();
  std::vector<ComplexBall> ratios;
  for (std::size_t k = K - 9; k <= K; ++k)
    ratios.push_back(ComplexBall::from_rat(Rat(rec.term(k)), prec) * inv.pow(k));
  const ComplexBall& last = ratios.back();
  Bound spread;
  for (const auto& x : ratios) spread = max(spread, distance_upper(x.midpoint(), last.midpoint()));
  return {rho, last.add_error(spread)};
}

void check_scale(const Rat& a, const Place& place) {
  if (sgn(a) == 0) throw Error(ErrorCode::BadScale, "scale a must be nonzero");
  const bool small = place.is_infinite() ? abs(a) < 1 : valuation(a, place.p()) > 0;
  if (!small) throw Error(ErrorCode::BadScale, "scale a=" + to_string(a) + " must satisfy |a|<1 at " + place.to_string());
}

namespace {

// R with base^R = value for base > 1.
std::optional<unsigned long> exact_log(const BigInt& base, BigInt value) {
  unsigned long r = 0;
  while (value > 1) {
    if (!mpz_divisible_p(value.get_mpz_t(), base.get_mpz_t())) return std::nullopt;
    value /= base;
    ++r;
  }
  if (value != 1) return std::nullopt;
  return r;
}

}  // namespace

std::vector<std::size_t> beta_witnesses(const LinearRecurrence& rec, const Rat& a, const Rat& beta) {
  if (sgn(beta) == 0) throw Error(ErrorCode::ZeroBeta, "beta must be nonzero");
  if (sgn(a) == 0 || abs(a) == 1) throw Error(ErrorCode::BadScale, "scale a must not be 0 or +-1");
  // a^{-R} = beta with b = 1/a = n/d in lowest terms: |n|^R = |num beta|, d^R = den beta.
  const Rat b = Rat(1) / a;
  const BigInt n = abs(BigInt(b.get_num())), d = b.get_den();
  const BigInt u = abs(BigInt(beta.get_num())), w = beta.get_den();
  std::optional<unsigned long> R = n > 1 ? exact_log(n, u) : exact_log(d, w);
  if (R && pow(b, *R) != beta) R.reset();
  if (!R) return {};
  const BigInt target = *R;

  const std::size_t n_ord = rec.order();
  const GrowthWindow start = first_positive_window(rec);
  const std::size_t cap = start.index + n_ord * (mpz_sizeinbase(target.get_mpz_t(), 2) + 4);
  std::vector<std::size_t> hits;
  for (std::size_t k = 0;; ++k) {
    if (rec.term(k) == target) hits.push_back(k);
    if (k >= n_ord - 1) {
      BigInt m = rec.term(k);
      for (std::size_t i = 1; i < n_ord; ++i) m = std::min(m, rec.term(k - i));
      // window minima never decrease, so no later term can equal target
      if (m > target) break;
    }
    if (k > cap) throw Error(ErrorCode::NotGrowing, "terms did not pass the target exponent");
  }
  return hits;
}

std::size_t compute_k0(const LinearRecurrence& rec, const Rat& a, const std::vector<Rat>& betas,
                       const Place& place) {
  check_scale(a, place);
  std::size_t k0 = 0;
  for (const auto& beta : betas) {
    const auto hits = beta_witnesses(rec, a, beta);
    if (!hits.empty()) k0 = std::max(k0, hits.back() + 1);
  }
  return k0;
}

}  // namespace recmahler
