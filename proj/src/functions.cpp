#include "recmahler/functions.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>

#include "recmahler/tail.hpp"

namespace recmahler {

const char* function_name(FunctionId id) {
  switch (id) {
    case FunctionId::F: return "F";
    case FunctionId::Fm: return "F_m";
    case FunctionId::G: return "G";
    case FunctionId::H: return "H";
    case FunctionId::Theta: return "Theta";
    case FunctionId::Xi: return "Xi";
    case FunctionId::GDary: return "g_dary";
    case FunctionId::FMulti: return "f_m";
    case FunctionId::GMulti: return "g_j";
    case FunctionId::HMulti: return "h_jm";
  }
  return "?";
}

FunctionId parse_function_id(const std::string& text) {
  std::string t;
  for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  // F_m and f_m differ only in case; the multi-variable one is spelled f_m_multi
  if (text == "F_m" || t == "fm") return FunctionId::Fm;
  if (t == "f") return FunctionId::F;
  if (t == "g") return FunctionId::G;
  if (t == "h") return FunctionId::H;
  if (t == "theta") return FunctionId::Theta;
  if (t == "xi") return FunctionId::Xi;
  if (t == "g_dary" || t == "gdary") return FunctionId::GDary;
  if (text == "f_m" || t == "f_m_multi") return FunctionId::FMulti;
  if (t == "g_j" || t == "g_j_multi") return FunctionId::GMulti;
  if (t == "h_jm" || t == "h_jm_multi") return FunctionId::HMulti;
  throw Error(ErrorCode::ParseError, "unknown function '" + text + "'");
}

PrecisionScalar EvalResult::value(int l, int m) const {
  if (const auto* c = std::get_if<BiJet<ComplexBall>>(&jet)) return c->at(l, m);
  return padic().at(l, m);
}

namespace {

using Clock = std::chrono::steady_clock;
using YPoly = std::vector<Rat>;

constexpr std::size_t kMaxTerms = 1U << 16;
constexpr double kMaxTermBits = static_cast<double>(1UL << 26);

enum class Kernel { H, G, Theta };

// Output shaping applied after the kernel: none, one y-column times a
// factor (F_m, f_m, h_jm), or the y-derivative (Xi).
struct Post {
  enum Kind { None, Column, YDerivative } kind = None;
  int column = 0;
  BigInt factor = 1;
};

// Source of u_k plus what the tail bounds need.
struct Source {
  DecaySequence seq;
  std::function<Rat(std::size_t)> term;
  std::function<double(std::size_t)> bits;  // rough size of u_k, checked before computing it
};

YPoly ymul(const YPoly& a, const YPoly& b) {
  YPoly r(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

YPoly factor_poly(const Rat& u, const Rat& y0, int M) {
  YPoly f(static_cast<std::size_t>(M + 1), Rat(0));
  f[0] = 1 - u * y0;
  if (M >= 1) f[1] = -u;
  return f;
}

// binom(k, l) x0^{k-l} for l = 0..L
std::vector<Rat> x_row(std::size_t k, const std::vector<Rat>& xpow, int L) {
  std::vector<Rat> row(static_cast<std::size_t>(L + 1), Rat(0));
  for (std::size_t l = 0; l <= static_cast<std::size_t>(L) && l <= k; ++l)
    row[l] = Rat(binomial(k, l)) * xpow[k - l];
  return row;
}

std::vector<Rat> powers_of(const Rat& x, std::size_t K) {
  std::vector<Rat> p(K + 1, Rat(1));
  for (std::size_t i = 1; i <= K; ++i) p[i] = p[i - 1] * x;
  return p;
}

BiJet<Rat> h_kernel(const std::vector<Rat>& u, const Rat& x0, const Rat& y0, int L, int M) {
  BiJet<Rat> J(L, M, Rat(0));
  const auto xpow = powers_of(x0, u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Rat c = 1 - u[k] * y0;
    if (sgn(c) == 0)
      throw PoleError(k, "1 - a^{R_k} y vanishes at k=" + std::to_string(k));
    // u/(c - uY) = sum_m s^{m+1} Y^m with s = u/c
    const Rat s = u[k] / c;
    const auto row = x_row(k, xpow, L);
    Rat sp = s;
    for (int m = 0; m <= M; ++m, sp *= s)
      for (int l = 0; l <= L; ++l)
        if (sgn(row[l]) != 0) J.at(l, m) += row[l] * sp;
  }
  return J;
}

BiJet<Rat> g_kernel(const std::vector<Rat>& u, const Rat& y0, int L, int M, std::vector<std::size_t>* zeros) {
  YPoly P(static_cast<std::size_t>(M + 1), Rat(0));
  P[0] = 1;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const YPoly f = factor_poly(u[k], y0, M);
    if (zeros && sgn(f[0]) == 0) zeros->push_back(k);
    P = ymul(P, f);
  }
  BiJet<Rat> J(L, M, Rat(0));
  for (int m = 0; m <= M; ++m) J.at(0, m) = P[m];
  return J;
}

// Theta_K = sum_k u_k (x0+X)^k prod_{j<=K, j!=k} (1 - u_j (y0+Y)), with the
// excluded factor removed through prefix and suffix products so that a
// vanishing factor needs no division.
BiJet<Rat> theta_kernel(const std::vector<Rat>& u, const Rat& x0, const Rat& y0, int L, int M,
                        std::vector<std::size_t>* zeros) {
  const std::size_t n = u.size();
  const std::size_t len = static_cast<std::size_t>(M + 1);
  YPoly one(len, Rat(0));
  one[0] = 1;
  std::vector<YPoly> fac(n), suf(n + 1, one);
  for (std::size_t k = 0; k < n; ++k) {
    fac[k] = factor_poly(u[k], y0, M);
    if (zeros && sgn(fac[k][0]) == 0) zeros->push_back(k);
  }
  for (std::size_t k = n; k-- > 0;) suf[k] = ymul(suf[k + 1], fac[k]);

  BiJet<Rat> J(L, M, Rat(0));
  const auto xpow = powers_of(x0, n);
  YPoly pre = one;
  for (std::size_t k = 0; k < n; ++k) {
    const YPoly others = ymul(pre, suf[k + 1]);
    const auto row = x_row(k, xpow, L);
    for (int l = 0; l <= L; ++l) {
      if (sgn(row[l]) == 0) continue;
      const Rat w = u[k] * row[l];
      for (int m = 0; m <= M; ++m) J.at(l, m) += w * others[m];
    }
    pre = ymul(pre, fac[k]);
  }
  return J;
}

BiJet<Rat> run_kernel(Kernel kernel, const std::vector<Rat>& u, const Rat& x0, const Rat& y0, int L, int M,
                      std::vector<std::size_t>* zeros) {
  switch (kernel) {
    case Kernel::H: return h_kernel(u, x0, y0, L, M);
    case Kernel::G: return g_kernel(u, y0, L, M, zeros);
    case Kernel::Theta: return theta_kernel(u, x0, y0, L, M, zeros);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kernel");
}

template <class T>
BiJet<T> shape(const BiJet<T>& J, const Post& post, const T& zero, const std::function<T(const T&, const BigInt&)>& scale) {
  switch (post.kind) {
    case Post::None: return J;
    case Post::Column: {
      BiJet<T> r(J.L(), 0, zero);
      for (int l = 0; l <= J.L(); ++l) r.at(l, 0) = scale(J.at(l, post.column), post.factor);
      return r;
    }
    case Post::YDerivative: {
      BiJet<T> r(J.L(), J.M() - 1, zero);
      for (int l = 0; l <= J.L(); ++l)
        for (int m = 0; m + 1 <= J.M(); ++m) r.at(l, m) = scale(J.at(l, m + 1), BigInt(m + 1));
      return r;
    }
  }
  return J;
}

BiJet<Rat> shape_exact(const BiJet<Rat>& J, const Post& post) {
  return shape<Rat>(J, post, Rat(0), [](const Rat& q, const BigInt& f) -> Rat { return q * Rat(f); });
}

// ---- complex certificates ----

struct Majorants {
  Bound fhat;       // sum_{k<=K} |u_k| X^k
  Bound phat{1.0};  // prod_{k<=K} (1 + |u_k| Y)
};

Bound bound_of(const Rat& q) { return Bound::abs_of(q); }

bool finite(const Bound& b) { return b.is_finite() && !mpfr_nan_p(b.get()); }

// Bound on sup |exact - truncated| over the polydisc of radius (X, Y)
// around the origin of absolute values, given majorants of the truncation.
Bound tail_bound(Kernel kernel, const DecaySequence& seq, std::size_t K, const Rat& X, const Rat& Y,
                 const Bound& fhat, const Bound& phat) {
  const Bound SX = power_tail(seq, X, K);
  if (!finite(SX)) return Bound::infinity();
  const bool ylive = sgn(Y) != 0;
  if (ylive && !(term_tail(seq, K) * bound_of(Y) <= Bound(0.5))) return Bound::infinity();
  if (kernel == Kernel::H) return ylive ? SX.mul_2exp(1) : SX;
  const Bound S1 = power_tail(seq, Rat(1), K);
  if (!finite(S1)) return Bound::infinity();
  // |log(1-t)| <= 2|t| for |t| <= 1/2
  const Bound sigma = (bound_of(Y) * S1).mul_2exp(1);
  const Bound em1 = sigma.expm1();
  if (kernel == Kernel::G) return phat * em1;
  return phat * (fhat * em1 + SX * (em1 + Bound(1.0)));
}

// Pointwise version for the (0,0) coefficient using the exact truncated
// values |Theta_K(x0,y0)| and |P_K(y0)|.
Bound point_bound(Kernel kernel, const DecaySequence& seq, std::size_t K, const Rat& x0, const Rat& y0,
                  const Rat& value, const Rat& product) {
  const Rat X = abs(x0), Y = abs(y0);
  const Bound SX = power_tail(seq, X, K);
  if (!finite(SX)) return Bound::infinity();
  const bool ylive = sgn(Y) != 0;
  if (ylive && !(term_tail(seq, K) * bound_of(Y) <= Bound(0.5))) return Bound::infinity();
  if (kernel == Kernel::H) return ylive ? SX.mul_2exp(1) : SX;
  if (!ylive) {
    if (kernel == Kernel::G) return Bound();
    return bound_of(product) * SX;
  }
  const Bound S1 = power_tail(seq, Rat(1), K);
  if (!finite(S1)) return Bound::infinity();
  const Bound sigma = (bound_of(Y) * S1).mul_2exp(1);
  const Bound em1 = sigma.expm1();
  if (kernel == Kernel::G) return bound_of(product) * em1;
  return bound_of(value) * em1 + bound_of(product) * SX * (em1 + Bound(1.0));
}

// ---- p-adic certificates ----

long vmin0(const Rat& q, long p) { return sgn(q) == 0 ? 0 : std::min(0L, valuation(q, p)); }

struct Valuations {
  long nu_f = PAdic::kExactZero;  // min_{k<=K} v(u_k) + k mu_x
  long nu_p = 0;                  // sum_{k<=K} min(0, v(u_k) + mu_y)
};

long tail_valuation(Kernel kernel, const DecaySequence& seq, std::size_t K, long mu_x, long mu_y,
                    const Valuations& v) {
  const long tx = power_tail_valuation(seq, mu_x, K);
  const long w = power_tail_valuation(seq, 0, K);
  if (tx == kNoValuation || w == kNoValuation) return kNoValuation;
  const long ty = w + mu_y;
  if (ty < 1) return kNoValuation;
  if (kernel == Kernel::H) return tx;
  if (kernel == Kernel::G) return v.nu_p + ty;
  return std::min(v.nu_f + v.nu_p + ty, v.nu_p + tx);
}

PAdic padic_of(const Rat& q, long p, long tv, long digits) {
  if (sgn(q) == 0) return tv >= PAdic::kExactZero - 1 ? PAdic::from_rat(q, p, 1) : PAdic::zero_to(p, tv);
  const long v = valuation(q, p);
  const long abs_prec = std::min(tv, std::max(digits, v + digits));
  if (abs_prec <= v) return PAdic::zero_to(p, abs_prec);
  return PAdic::from_rat(q, p, abs_prec - v);
}

Source recurrence_source(const LinearRecurrence& rec, const Rat& a, const Place& place) {
  check_scale(a, place);
  first_positive_window(rec);
  Source s{DecaySequence{rec, 0, abs(a), place.is_infinite() ? 0 : valuation(a, place.p())}, {}, {}};
  s.term = [rec, a](std::size_t k) { return pow(a, to_ulong_checked(rec.term(k), "exponent R_k")); };
  const double size = static_cast<double>(mpz_sizeinbase(a.get_num_mpz_t(), 2) + mpz_sizeinbase(a.get_den_mpz_t(), 2));
  s.bits = [rec, size](std::size_t k) { return rec.term(k).get_d() * size; };
  return s;
}

EvalResult run(const Source& src, Kernel kernel, const Rat& x0, const Rat& y0, int L, int M, const Place& place,
               const Precision& prec, const Post& post) {
  const auto started = Clock::now();
  if (L < 0 || M < 0) throw Error(ErrorCode::InvalidArgument, "jet orders must be nonnegative");
  const DecaySequence& seq = src.seq;
  const bool complex = place.is_infinite();
  const long p = complex ? 0 : place.p();

  // Cauchy radius 1 in every direction that carries derivatives
  const Rat X = abs(x0) + (L > 0 ? 1 : 0);
  const Rat Y = abs(y0) + (M > 0 ? 1 : 0);
  const long mu_x = complex ? 0 : vmin0(x0, p);
  const long mu_y = complex ? 0 : vmin0(y0, p);
  const Bound target = Bound::pow2(-(static_cast<long>(prec.bits) + 8));

  std::vector<Rat> u;
  Majorants maj;
  Valuations val;
  Bound XK(1.0);  // X^k
  std::size_t K = 0;
  for (;; ++K) {
    if (K >= kMaxTerms || src.bits(K) > kMaxTermBits)
      throw Error(ErrorCode::InsufficientPrecision, "truncation did not close within the term budget");
    u.push_back(src.term(K));
    const Rat& uk = u.back();
    if (complex) {
      const Bound au = bound_of(uk);
      maj.fhat = maj.fhat + au * XK;
      maj.phat = maj.phat * (Bound(1.0) + au * bound_of(Y));
      XK = XK * bound_of(X);
      if (tail_bound(kernel, seq, K, X, Y, maj.fhat, maj.phat) <= target) break;
    } else {
      const long vu = sgn(uk) == 0 ? PAdic::kExactZero : valuation(uk, p);
      val.nu_f = std::min(val.nu_f, clamp_valuation(BigInt(vu) + BigInt(static_cast<unsigned long>(K)) * mu_x));
      val.nu_p += std::min(0L, vu + mu_y);
      const long tv = tail_valuation(kernel, seq, K, mu_x, mu_y, val);
      if (tv != kNoValuation && tv >= prec.digits) break;
    }
  }

  EvalResult res;
  res.place = place;
  res.K = K;
  const BiJet<Rat> J = run_kernel(kernel, u, x0, y0, L, M, &res.zero_factors);
  res.partial = shape_exact(J, post);

  if (complex) {
    const Bound cauchy = tail_bound(kernel, seq, K, X, Y, maj.fhat, maj.phat);
    Rat product = 1;
    if (kernel != Kernel::H)
      for (const Rat& uk : u) product *= 1 - uk * y0;
    Bound point = point_bound(kernel, seq, K, x0, y0, J.at(0, 0), product);
    if (cauchy < point) point = cauchy;
    BiJet<Bound> err(L, M, cauchy);
    err.at(0, 0) = point;
    const BiJet<Bound> shaped_err =
        shape<Bound>(err, post, Bound(), [](const Bound& b, const BigInt& f) { return b.mul_int(abs(f)); });
    BiJet<ComplexBall> out(res.partial.L(), res.partial.M(), ComplexBall::from_rat(Rat(0), prec.bits));
    Bound worst;
    for (int l = 0; l <= out.L(); ++l)
      for (int m = 0; m <= out.M(); ++m) {
        out.at(l, m) = ComplexBall::from_rat(res.partial.at(l, m), prec.bits).add_error(shaped_err.at(l, m));
        worst = max(worst, shaped_err.at(l, m));
      }
    res.jet = std::move(out);
    res.tail = worst;
  } else {
    const long tv = tail_valuation(kernel, seq, K, mu_x, mu_y, val);
    BiJet<PAdic> out(res.partial.L(), res.partial.M(), PAdic::from_rat(Rat(0), p, 1));
    for (int l = 0; l <= out.L(); ++l)
      for (int m = 0; m <= out.M(); ++m) out.at(l, m) = padic_of(res.partial.at(l, m), p, tv, prec.digits);
    res.jet = std::move(out);
    res.tail_valuation = tv;
  }
  res.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return res;
}

void mark_exact_zeros(EvalResult& res, long below_m, const Place& place) {
  const int top = static_cast<int>(std::min<long>(below_m, res.partial.M() + 1L));
  for (int l = 0; l <= res.partial.L(); ++l)
    for (int m = 0; m < top; ++m) {
      res.partial.at(l, m) = 0;
      if (place.is_infinite()) {
        auto& jet = std::get<BiJet<ComplexBall>>(res.jet);
        jet.at(l, m) = ComplexBall::from_rat(Rat(0), jet.at(l, m).prec());
      } else {
        std::get<BiJet<PAdic>>(res.jet).at(l, m) = PAdic::zero_to(place.p(), PAdic::kExactZero);
      }
    }
}

struct Route {
  Kernel kernel;
  int L, M;
  Rat y0;
  Post post;
};

Route route_for(const FunctionInstance& inst, const Rat& y0, int L, int M) {
  switch (inst.id) {
    case FunctionId::F: return {Kernel::H, L, 0, Rat(0), {}};
    case FunctionId::Fm: {
      if (inst.m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative");
      // F_m(x) = d^m H / dy^m (x, 0)
      const int m = static_cast<int>(inst.m);
      return {Kernel::H, L, m, Rat(0), {Post::Column, m, factorial(static_cast<unsigned long>(m))}};
    }
    case FunctionId::G: return {Kernel::G, L, M, y0, {}};
    case FunctionId::H: return {Kernel::H, L, M, y0, {}};
    case FunctionId::Theta: return {Kernel::Theta, L, M, y0, {}};
    case FunctionId::Xi: return {Kernel::Theta, L, M + 1, y0, {Post::YDerivative, 0, 1}};
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, std::string(function_name(inst.id)) + " is not a two-variable function");
}

}  // namespace

EvalResult jet_eval(const FunctionInstance& inst, const Rat& x0, const Rat& y0, int L, int M,
                    const Precision& prec) {
  if (inst.id == FunctionId::GDary) {
    if (L != 0 || M != 0) throw Error(ErrorCode::InvalidArgument, "g_dary is evaluated without derivatives");
    return eval_gdary(x0, y0, inst.d, inst.place, prec);
  }
  if (inst.id == FunctionId::FMulti || inst.id == FunctionId::GMulti || inst.id == FunctionId::HMulti)
    throw Error(ErrorCode::InvalidArgument, "several-variable functions take a point z; use eval_multi");
  const Route r = route_for(inst, y0, L, M);
  const Source src = recurrence_source(inst.rec, inst.a, inst.place);
  EvalResult res = run(src, r.kernel, x0, r.y0, r.L, r.M, inst.place, prec, r.post);
  // G has a zero of order N at y0 and Theta one of order N - 1; those
  // coefficients are exactly zero, not just small
  long below = 0;
  if (inst.id == FunctionId::G || inst.id == FunctionId::Theta || inst.id == FunctionId::Xi) {
    below = static_cast<long>(n_beta(inst.rec, inst.a, y0).count);
    if (inst.id != FunctionId::G) below -= 1;
    if (inst.id == FunctionId::Xi) below -= 1;
  }
  if (below > 0) mark_exact_zeros(res, below, inst.place);
  return res;
}

BiJet<Rat> partial_jet(const FunctionInstance& inst, const Rat& x0, const Rat& y0, int L, int M, std::size_t K,
                       std::vector<std::size_t>* zero_factors) {
  const Route r = route_for(inst, y0, L, M);
  std::vector<Rat> u;
  for (std::size_t k = 0; k <= K; ++k) u.push_back(pow(inst.a, to_ulong_checked(inst.rec.term(k), "exponent R_k")));
  return shape_exact(run_kernel(r.kernel, u, x0, r.y0, r.L, r.M, zero_factors), r.post);
}

EvalResult eval_F(const FunctionInstance& inst, const Rat& x, const Precision& prec) {
  return jet_eval(inst, x, Rat(0), 0, 0, prec);
}

EvalResult eval_G(const FunctionInstance& inst, const Rat& y, const Precision& prec) {
  FunctionInstance g = inst;
  g.id = FunctionId::G;
  return jet_eval(g, Rat(0), y, 0, 0, prec);
}

EvalResult eval_H(const FunctionInstance& inst, const Rat& x, const Rat& y, const Precision& prec) {
  FunctionInstance h = inst;
  h.id = FunctionId::H;
  return jet_eval(h, x, y, 0, 0, prec);
}

EvalResult eval_Theta(const FunctionInstance& inst, const Rat& x, const Rat& y, const Precision& prec) {
  FunctionInstance t = inst;
  t.id = FunctionId::Theta;
  return jet_eval(t, x, y, 0, 0, prec);
}

EvalResult eval_Xi(const FunctionInstance& inst, const Rat& x, const Rat& y, const Precision& prec) {
  FunctionInstance t = inst;
  t.id = FunctionId::Xi;
  return jet_eval(t, x, y, 0, 0, prec);
}

// ---- g(x; z) = sum x^k z^{d^k} ----

EvalResult eval_gdary(const Rat& x, const Rat& z, long d, const Place& place, const Precision& prec) {
  const auto started = Clock::now();
  if (d < 2) throw Error(ErrorCode::BadPoint, "d must be at least 2");
  const bool complex = place.is_infinite();
  const long p = complex ? 0 : place.p();
  if (sgn(z) != 0 && (complex ? abs(z) >= 1 : valuation(z, p) <= 0))
    throw Error(ErrorCode::BadPoint, "g(x;z) needs |z| < 1 at " + place.to_string());

  EvalResult res;
  res.place = place;
  Rat sum = 0;
  const Bound target = Bound::pow2(-(static_cast<long>(prec.bits) + 8));
  const long mu = complex ? 0 : vmin0(x, p);
  const long vz = (complex || sgn(z) == 0) ? 0 : valuation(z, p);
  const double zbits = static_cast<double>(mpz_sizeinbase(z.get_num_mpz_t(), 2) + mpz_sizeinbase(z.get_den_mpz_t(), 2));
  BigInt dk = 1;  // d^k
  Bound tail;
  long tv = PAdic::kExactZero - 1;
  for (std::size_t K = 0;; ++K, dk *= d) {
    if (K >= kMaxTerms || dk.get_d() * zbits > kMaxTermBits)
      throw Error(ErrorCode::InsufficientPrecision, "truncation did not close within the term budget");
    sum += pow(x, K) * pow(z, to_ulong_checked(dk, "exponent d^k"));
    res.K = K;
    if (sgn(z) == 0 || sgn(x) == 0) break;
    const BigInt next = dk * d;  // d^{K+1}
    if (complex) {
      // ratio of consecutive terms past K is at most |x| |z|^{d^{K+1}(d-1)}
      const Bound lx = Bound::log2_abs(x), lz = Bound::log2_abs(z);
      if (!(lx + lz.mul_int(next * (d - 1)) <= Bound(-1.0))) continue;
      tail = (Bound(1.0) + lx.mul_int(BigInt(static_cast<unsigned long>(K + 1))) + lz.mul_int(next)).exp2();
      if (tail <= target) break;
    } else {
      if (next * (d - 1) * vz + mu < 0) continue;
      tv = clamp_valuation(BigInt(static_cast<unsigned long>(K + 1)) * mu + next * vz);
      if (tv >= prec.digits) break;
    }
  }
  res.partial = BiJet<Rat>::constant(0, 0, sum, Rat(0));
  if (complex) {
    res.jet = BiJet<ComplexBall>::constant(0, 0, ComplexBall::from_rat(sum, prec.bits).add_error(tail),
                                           ComplexBall::from_rat(Rat(0), prec.bits));
    res.tail = tail;
  } else {
    res.jet = BiJet<PAdic>::constant(0, 0, padic_of(sum, p, tv, prec.digits), PAdic::from_rat(Rat(0), p, 1));
    res.tail_valuation = tv;
  }
  res.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return res;
}

// ---- several-variable functions ----

Rat monomial_value(const LinearRecurrence& rec, const MPoint& z, std::size_t k) {
  const auto e = monomial_exponents(rec, k);
  if (z.coords.size() != e.size()) throw Error(ErrorCode::BadPoint, "point dimension differs from the order");
  Rat r = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (z.coords[i] == 1) continue;
    r *= pow(z.coords[i], to_ulong_checked(e[i], "monomial exponent"));
  }
  return r;
}

namespace {

Source multi_source(const LinearRecurrence& rec, const MPoint& z) {
  const std::size_t n = rec.order();
  if (z.coords.size() != n) throw Error(ErrorCode::BadPoint, "point dimension differs from the order");
  first_positive_window(rec);
  // |M(Omega^k z)| <= |z_i|^{R_{k+n-1-i}} (0-based i) when every |z_j| <= 1
  std::size_t best = n;
  for (std::size_t i = 0; i < n; ++i) {
    const Rat& c = z.coords[i];
    if (sgn(c) == 0) throw Error(ErrorCode::BadPoint, "coordinates must be nonzero");
    if (z.place.is_infinite()) {
      if (abs(c) > 1) throw Error(ErrorCode::NotInDomain, "coordinate " + to_string(c) + " has |z_i| > 1");
      if (abs(c) < 1 && (best == n || abs(c) < abs(z.coords[best]))) best = i;
    } else {
      const long v = valuation(c, z.place.p());
      if (v < 0) throw Error(ErrorCode::NotInDomain, "coordinate " + to_string(c) + " has |z_i|_p > 1");
      if (v > 0 && (best == n || v > valuation(z.coords[best], z.place.p()))) best = i;
    }
  }
  if (best == n) throw Error(ErrorCode::NotInDomain, "no coordinate has |z_i| < 1, so M(Omega^k z) does not tend to 0");
  const Rat& zb = z.coords[best];
  Source s{DecaySequence{rec, n - 1 - best, abs(zb), z.place.is_infinite() ? 0 : valuation(zb, z.place.p())}, {}, {}};
  s.term = [rec, z](std::size_t k) { return monomial_value(rec, z, k); };
  double size = 0;
  for (const Rat& c : z.coords)
    size += static_cast<double>(mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
  s.bits = [rec, size](std::size_t k) { return rec.term(k + rec.order() - 1).get_d() * size; };
  return s;
}

Route multi_route(FunctionId kind, long m, const Rat& beta, int L) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative");
  const int mm = static_cast<int>(m);
  switch (kind) {
    // x^k M^{m+1} is the m-th y-coefficient of x^k M/(1 - M y) at y = 0
    case FunctionId::FMulti: return {Kernel::H, L, mm, Rat(0), {Post::Column, mm, 1}};
    case FunctionId::GMulti: return {Kernel::G, 0, 0, beta, {}};
    case FunctionId::HMulti: return {Kernel::H, L, mm, beta, {Post::Column, mm, 1}};
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, std::string(function_name(kind)) + " is not a several-variable function");
}

}  // namespace

EvalResult eval_multi(FunctionId kind, const LinearRecurrence& rec, const Rat& x, const MPoint& z, long m,
                      const Rat& beta, int L, const Precision& prec) {
  const Route r = multi_route(kind, m, beta, L);
  const Source src = multi_source(rec, z);
  return run(src, r.kernel, x, r.y0, r.L, r.M, z.place, prec, r.post);
}

BiJet<Rat> partial_multi(FunctionId kind, const LinearRecurrence& rec, const Rat& x, const MPoint& z, long m,
                         const Rat& beta, int L, std::size_t K) {
  const Route r = multi_route(kind, m, beta, L);
  std::vector<Rat> u;
  for (std::size_t k = 0; k <= K; ++k) u.push_back(monomial_value(rec, z, k));
  return shape_exact(run_kernel(r.kernel, u, x, r.y0, r.L, r.M, nullptr), r.post);
}

NBeta n_beta(const LinearRecurrence& rec, const Rat& a, const Rat& beta) {
  NBeta nb;
  if (sgn(beta) == 0) return nb;  // a^{-R} never vanishes
  nb.witnesses = beta_witnesses(rec, a, beta);
  nb.count = nb.witnesses.size();
  return nb;
}

}  // namespace recmahler
