#include "recmahler/roots.hpp"

#include <cmath>
#include <complex>

namespace recmahler {

namespace {

using cld = std::complex<long double>;

std::vector<cld> durand_kerner(const UPoly& f) {
  const int n = f.degree();
  std::vector<long double> a(static_cast<std::size_t>(n + 1));
  const long double lead = mpz_get_d(f.leading().get_mpz_t());
  for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = mpz_get_d(f.coeff(static_cast<std::size_t>(i)).get_mpz_t()) / lead;
  long double radius = 1;
  for (int i = 0; i < n; ++i) radius = std::max(radius, 1 + std::fabs(a[static_cast<std::size_t>(i)]));

  auto eval = [&](cld z) {
    cld r = 1;
    for (int i = n - 1; i >= 0; --i) r = r * z + a[static_cast<std::size_t>(i)];
    return r;
  };
  std::vector<cld> z(static_cast<std::size_t>(n));
  const cld seed(0.4L, 0.9L);
  cld w = 1;
  for (auto& zi : z) {
    w *= seed;
    zi = w * radius * 0.5L;
  }
  for (int iter = 0; iter < 5000; ++iter) {
    long double change = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      cld den = 1;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) den *= z[i] - z[j];
      if (std::abs(den) == 0) den = cld(1e-30L, 0);
      const cld step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-18L * radius) break;
  }
  return z;
}

ComplexBall horner(const std::vector<ComplexBall>& coeffs, const ComplexBall& z) {
  ComplexBall r = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) r = r * z + coeffs[i];
  return r;
}

}  // namespace

std::optional<std::vector<ComplexBall>> isolate_roots(const UPoly& f, mpfr_prec_t prec) {
  const int n = f.degree();
  if (n < 1) return std::vector<ComplexBall>{};
  std::vector<ComplexBall> coeffs, dcoeffs;
  for (const auto& c : f.coeffs()) coeffs.push_back(ComplexBall::from_rat(Rat(c), prec));
  const UPoly df = f.derivative();
  for (const auto& c : df.coeffs()) dcoeffs.push_back(ComplexBall::from_rat(Rat(c), prec));

  std::vector<ComplexBall> z;
  for (const cld& s : durand_kerner(f)) {
    BigFloat re(prec), im(prec);
    mpfr_set_ld(re.get(), s.real(), MPFR_RNDN);
    mpfr_set_ld(im.get(), s.imag(), MPFR_RNDN);
    z.emplace_back(std::move(re), std::move(im), Bound());
  }

  // Newton polish on midpoints; quadratic convergence from ~60 correct bits.
  const int steps = 4 + static_cast<int>(std::ceil(std::log2(static_cast<double>(prec) / 48.0)));
  for (auto& zi : z) {
    for (int s = 0; s < steps; ++s) {
      if (n == 1) break;
      const ComplexBall d = horner(dcoeffs, zi).midpoint();
      if (d.contains_zero()) return std::nullopt;
      zi = (zi - horner(coeffs, zi) * d.inverse()).midpoint();
    }
  }

  // Gerschgorin discs of diag(z) - w 1^T, whose eigenvalues are the roots.
  const ComplexBall lead = coeffs.back();
  std::vector<ComplexBall> centers;
  std::vector<Bound> radii;
  for (std::size_t i = 0; i < z.size(); ++i) {
    ComplexBall den = lead;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) den *= z[i] - z[j];
    if (den.contains_zero()) return std::nullopt;
    const ComplexBall w = horner(coeffs, z[i]) * den.inverse();
    const ComplexBall c = z[i] - w;
    const Bound w_abs = w.abs_upper();
    centers.push_back(c.midpoint());
    radii.push_back(w_abs.mul_int(BigInt(n - 1)) + c.rad());
  }
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const BigFloat gap = (centers[i] - centers[j]).abs_lower();
      const Bound reach = radii[i] + radii[j];
      if (!mpfr_greater_p(gap.get(), reach.get())) return std::nullopt;
    }
  std::vector<ComplexBall> out;
  for (std::size_t i = 0; i < centers.size(); ++i) out.push_back(centers[i].with_rad(radii[i]));
  return out;
}

std::optional<std::size_t> dominant_root(const std::vector<ComplexBall>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    BigFloat re_low(Bound::kPrec);
    mpfr_sub(re_low.get(), roots[i].re().get(), roots[i].rad().get(), MPFR_RNDD);
    if (re_low.sign() <= 0) continue;
    const BigFloat low = roots[i].abs_lower();
    bool dominates = true;
    for (std::size_t j = 0; j < roots.size() && dominates; ++j)
      if (j != i && !mpfr_greater_p(low.get(), roots[j].abs_upper().get())) dominates = false;
    if (dominates) return i;
  }
  return std::nullopt;
}

}  // namespace recmahler
