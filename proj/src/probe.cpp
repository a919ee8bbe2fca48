#include "recmahler/probe.hpp"

#include <algorithm>
#include <cmath>

#include "recmahler/error.hpp"
#include "recmahler/lll.hpp"

namespace recmahler {

const char* probe_outcome_name(ProbeOutcome o) { return o == ProbeOutcome::Found ? "FOUND" : "NONE"; }

mpfr_prec_t bits_for_digits(long digits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.321928094887362)) + 32;
}

namespace {

BigInt scaled_round(const BigFloat& x, const BigInt& N) {
  BigFloat t(x.prec() + static_cast<mpfr_prec_t>(mpz_sizeinbase(N.get_mpz_t(), 2)) + 64);
  mpfr_mul_z(t.get(), x.get(), N.get_mpz_t(), MPFR_RNDN);
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
  return z;
}

double log10_of(const Rat& q) {
  if (sgn(q) <= 0) return -INFINITY;
  BigFloat f(64, q);
  mpfr_log10(f.get(), f.get(), MPFR_RNDN);
  return f.to_double();
}

Bound residual_of(const std::vector<ComplexBall>& v, const IntVector& c) {
  ComplexBall s = ComplexBall::from_rat(Rat(0), v.front().prec());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (c[i] != 0) s += ComplexBall::from_rat(Rat(c[i]), v[i].prec()) * v[i];
  return s.abs_upper();
}

IntVector normalized(IntVector c) {
  BigInt g = 0;
  for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), BigInt(x).get_mpz_t());
  if (g == 0) return c;
  for (auto& x : c) x /= g;
  auto lead = std::find_if(c.begin(), c.end(), [](const BigInt& x) { return x != 0; });
  if (lead != c.end() && *lead < 0)
    for (auto& x : c) x = -x;
  return c;
}

BigInt height_of(const IntVector& c) {
  BigInt h = 0;
  for (const auto& x : c) h = std::max(h, BigInt(abs(x)));
  return h;
}

}  // namespace

RelationCertificate integer_relation(const std::vector<LabeledValue>& values, const BigInt& height, long digits) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "no values to probe");
  if (digits < 10) throw Error(ErrorCode::InvalidArgument, "at least 10 digits are required");
  if (height < 1) throw Error(ErrorCode::InvalidArgument, "height bound must be positive");
  const std::size_t n = values.size();
  const mpfr_prec_t need = bits_for_digits(digits) - 32;
  const Bound known = Bound::from_rat(Rat(BigInt(1), pow(BigInt(10), static_cast<unsigned long>(digits))));
  bool complex = false;
  for (const auto& v : values) {
    if (v.value.prec() < need)
      throw Error(ErrorCode::InsufficientPrecision, v.label + " carries fewer bits than " + std::to_string(digits) + " digits");
    if (known < v.value.rad())
      throw Error(ErrorCode::InsufficientPrecision, v.label + " is not known to " + std::to_string(digits) + " digits");
    if (!v.value.im().is_zero()) complex = true;
  }

  RelationCertificate cert;
  cert.degree = 1;
  cert.height = height;
  cert.digits = digits;
  for (const auto& v : values) cert.labels.push_back(v.label);

  const BigInt N = pow(BigInt(10), static_cast<unsigned long>(digits - 8));
  IntMatrix basis(n, IntVector(n + (complex ? 2 : 1), 0));
  for (std::size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    basis[i][n] = scaled_round(values[i].value.re(), N);
    if (complex) basis[i][n + 1] = scaled_round(values[i].value.im(), N);
  }
  cert.dimension = n;
  const LllResult red = lll_reduce(basis);

  std::vector<ComplexBall> v;
  for (const auto& lv : values) v.push_back(lv.value);
  const Bound threshold = Bound::from_rat(Rat(BigInt(1), pow(BigInt(10), static_cast<unsigned long>(digits / 2))));
  std::optional<IntVector> best;
  Bound best_residual;
  for (const auto& row : red.basis) {
    const IntVector c(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    if (height_of(c) == 0 || height_of(c) > height) continue;
    const Bound res = residual_of(v, c);
    if (!(res < threshold)) continue;
    if (!best || height_of(c) < height_of(*best)) {
      best = c;
      best_residual = res;
    }
  }

  // lower bound for every nonzero lattice vector: min |b_i*|
  Rat floor2 = gram_schmidt_norm2(red, 0);
  for (std::size_t i = 1; i < n; ++i) floor2 = std::min(floor2, gram_schmidt_norm2(red, i));
  cert.log10_lattice_floor = log10_of(floor2) / 2;
  // an exact relation of height H maps to (c, sum c_i round(N v_i)) whose
  // scaled part is at most n H / 2 in each extra column
  const Rat H(height);
  const Rat half_sum = Rat(static_cast<long>(n)) * H / 2;
  const Rat norm2 = Rat(static_cast<long>(n)) * H * H + Rat(complex ? 2 : 1) * half_sum * half_sum;
  cert.log10_relation_norm = log10_of(norm2) / 2;
  cert.height_excluded = floor2 > norm2;

  if (!best) {
    cert.outcome = ProbeOutcome::None;
    return cert;
  }
  cert.outcome = ProbeOutcome::Found;
  cert.relation = normalized(*best);
  cert.residual = best_residual;
  const bool can_recheck =
      std::all_of(values.begin(), values.end(), [](const LabeledValue& lv) { return static_cast<bool>(lv.recompute); });
  if (can_recheck) {
    std::vector<ComplexBall> w;
    for (const auto& lv : values) w.push_back(lv.recompute(2 * v.front().prec()));
    cert.recheck_residual = residual_of(w, cert.relation);
  }
  return cert;
}

std::vector<std::vector<unsigned>> monomial_basis(std::size_t nvars, long D) {
  if (D < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(nvars, 0);
  // exponent vectors of total degree `left` over variables i.. in lex order
  std::function<void(std::size_t, unsigned)> fill = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      fill(i + 1, left - k);
    }
    e[i] = 0;
  };
  out.push_back(e);
  if (nvars == 0) return out;
  for (long d = 1; d <= D; ++d) fill(0, static_cast<unsigned>(d));
  return out;
}

namespace {

std::string monomial_label(const std::vector<unsigned>& e, const std::vector<LabeledValue>& values) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += values[i].label;
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

ComplexBall monomial_value(const std::vector<unsigned>& e, const std::vector<ComplexBall>& v, mpfr_prec_t prec) {
  ComplexBall r = ComplexBall::from_rat(Rat(1), prec);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) r *= v[i].pow(e[i]);
  return r;
}

}  // namespace

RelationCertificate algebraic_probe(const std::vector<LabeledValue>& values, long D, const BigInt& height,
                                    long digits, std::size_t basis_cap) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "no values to probe");
  const auto basis = monomial_basis(values.size(), D);
  if (basis.size() > basis_cap)
    throw Error(ErrorCode::BasisTooLarge, std::to_string(basis.size()) + " monomials exceed the cap of " +
                                              std::to_string(basis_cap));
  std::vector<ComplexBall> v;
  for (const auto& lv : values) v.push_back(lv.value);
  const mpfr_prec_t prec = v.front().prec();
  const bool can_recheck =
      std::all_of(values.begin(), values.end(), [](const LabeledValue& lv) { return static_cast<bool>(lv.recompute); });

  std::vector<LabeledValue> expanded;
  for (const auto& e : basis) {
    LabeledValue m{monomial_label(e, values), monomial_value(e, v, prec), {}};
    if (can_recheck)
      m.recompute = [e, &values](mpfr_prec_t bits) {
        std::vector<ComplexBall> w;
        for (const auto& lv : values) w.push_back(lv.recompute(bits));
        return monomial_value(e, w, bits);
      };
    expanded.push_back(std::move(m));
  }
  RelationCertificate cert = integer_relation(expanded, height, digits);
  cert.degree = D;
  return cert;
}

}  // namespace recmahler
