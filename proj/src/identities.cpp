#include "recmahler/identities.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "recmahler/functions.hpp"
#include "recmahler/transform.hpp"

namespace recmahler {

// ---------------------------------------------------------------- transfer

namespace {

std::mutex g_transfer_mutex;
std::map<unsigned, IntPoly> g_A, g_B, g_C;

IntPoly A_locked(unsigned m) {
  if (auto it = g_A.find(m); it != g_A.end()) return it->second;
  IntPoly r(m);
  if (m == 0) {
    r = IntPoly::constant(0, BigInt(1));
  } else if (m == 1) {
    r = -IntPoly::variable(1, 0);
  } else {
    // A_m = -X_1 A_{m-1} + sum_i dA_{m-1}/dX_i X_{i+1}, lifted to m variables
    std::vector<std::size_t> slots(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) slots[i] = i;
    const IntPoly prev = A_locked(m - 1).relabeled(m, slots);
    r = -(IntPoly::variable(m, 0) * prev);
    for (std::size_t i = 0; i + 1 < m; ++i) r += prev.derivative(i) * IntPoly::variable(m, i + 1);
  }
  g_A.emplace(m, r);
  return r;
}

IntPoly B_locked(unsigned m) {
  if (auto it = g_B.find(m); it != g_B.end()) return it->second;
  IntPoly r(2 * m);
  // Leibniz on G H with G^{(j)} = G A_j
  for (unsigned h = 0; h < m; ++h) {
    const unsigned j = m - h;
    std::vector<std::size_t> slots(j);
    for (std::size_t i = 0; i < j; ++i) slots[i] = i;
    const IntPoly Aj = A_locked(j).relabeled(2 * m, slots);
    r += (Aj * IntPoly::variable(2 * m, m + h)).scaled(binomial(m, h));
  }
  g_B.emplace(m, r);
  return r;
}

// B_j(first j images of xs, first j images of ys)
IntPoly B_at(unsigned j, const std::vector<IntPoly>& xs, const std::vector<IntPoly>& ys, std::size_t nvars) {
  if (j == 0) return IntPoly(nvars);
  std::vector<IntPoly> images(xs.begin(), xs.begin() + j);
  images.insert(images.end(), ys.begin(), ys.begin() + j);
  return compose(B_locked(j), images);
}

IntPoly C_locked(unsigned m) {
  if (auto it = g_C.find(m); it != g_C.end()) return it->second;
  const std::size_t n = 2 * m;
  // Divide the forward relation by G and solve it from the bottom up:
  // h_i = X_{i+1} - B_i(h, h) at x = 1 and H_i = Y_{i+1} - B_i(h, H).
  std::vector<IntPoly> h, H;
  for (unsigned i = 0; i < m; ++i) {
    h.push_back(IntPoly::variable(n, i) - B_at(i, h, h, n));
    H.push_back(IntPoly::variable(n, m + i) - B_at(i, h, H, n));
  }
  IntPoly r = -B_at(m, h, H, n);
  g_C.emplace(m, r);
  return r;
}

}  // namespace

IntPoly transfer_A(unsigned m) {
  std::lock_guard lock(g_transfer_mutex);
  return A_locked(m);
}

IntPoly transfer_B(unsigned m) {
  std::lock_guard lock(g_transfer_mutex);
  return B_locked(m);
}

IntPoly transfer_C(unsigned m) {
  std::lock_guard lock(g_transfer_mutex);
  return C_locked(m);
}

TransferPolys transfer_polys(unsigned m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "transfer polynomials start at m = 1");
  return {transfer_A(m), transfer_B(m)};
}

IntPoly transfer_polys_C(unsigned m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "transfer polynomials start at m = 1");
  return transfer_C(m);
}

std::vector<std::string> transfer_variable_names(unsigned m, bool with_y) {
  std::vector<std::string> names;
  for (unsigned i = 1; i <= m; ++i) names.push_back("X" + std::to_string(i));
  if (with_y)
    for (unsigned i = 1; i <= m; ++i) names.push_back("Y" + std::to_string(i));
  return names;
}

// ----------------------------------------------------------------- catalog

const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::ThetaX0: return "THETA_X0";
    case IdentityId::Theta1Y: return "THETA_1Y";
    case IdentityId::ThetaGH: return "THETA_GH";
    case IdentityId::GPrime: return "GPRIME";
    case IdentityId::MahlerGD: return "MAHLER_GD";
    case IdentityId::MahlerS4G: return "MAHLER_S4_G";
    case IdentityId::MahlerS4H: return "MAHLER_S4_H";
    case IdentityId::MahlerS4F: return "MAHLER_S4_F";
    case IdentityId::ShiftG: return "SHIFT_G";
    case IdentityId::ShiftTheta: return "SHIFT_THETA";
    case IdentityId::DerTransfer: return "DER_TRANSFER";
  }
  return "?";
}

IdentityId parse_identity_id(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(c == '-' ? '_' : std::toupper(static_cast<unsigned char>(c)));
  for (const auto& e : identity_catalog())
    if (t == identity_name(e.id)) return e.id;
  throw Error(ErrorCode::ParseError, "unknown identity '" + text + "'");
}

const std::vector<CatalogEntry>& identity_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {IdentityId::ThetaX0, "d^l Theta/dx^l (x, 0) = F^(l)(x)"},
      {IdentityId::Theta1Y, "d^m Theta/dy^m (1, y) = -G^(m+1)(y)"},
      {IdentityId::ThetaGH, "Theta(x, y) = G(y) H(x, y), all jet coefficients"},
      {IdentityId::GPrime, "G'(y) = -G(y) H(1, y); G^(m)(y) = G(y) A_m(H(1,y), ..., d^{m-1}H/dy^{m-1}(1,y))"},
      {IdentityId::MahlerGD, "g(x; z) = x g(x; z^d) + z"},
      {IdentityId::MahlerS4G, "g_j(z) = (1 - beta_j M(z)) g_j(Omega z) along Omega^k z"},
      {IdentityId::MahlerS4H,
       "d^l h_jm/dx^l (x; z) = x d^l h_jm/dx^l (x; Omega z) + l d^{l-1} h_jm/dx^{l-1} (x; Omega z)"
       " + [l = 0] (M(z)/(1 - beta_j M(z)))^{m+1}"},
      {IdentityId::MahlerS4F,
       "d^l f_m/dx^l (x; z) = x d^l f_m/dx^l (x; Omega z) + l d^{l-1} f_m/dx^{l-1} (x; Omega z)"
       " + [l = 0] M(z)^{m+1}"},
      {IdentityId::ShiftG,
       "G(y) = P_j(y) Q_j(y) G~(y); G^(N+m)(beta) = sum_h (N+m; N, m-h, h) p_j Q_j^(m-h)(beta) G~^(h)(beta)"},
      {IdentityId::ShiftTheta,
       "Theta = R(x) P_j Q_j Theta~ + U_j V_j G~, and its derivatives of y-order N+m at (x, beta)"},
      {IdentityId::DerTransfer,
       "Theta derivatives = G (H derivatives + B_m) and back through C_m; at y = 0 the same with F_m"},
  };
  return catalog;
}

const char* case_status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "PASS";
    case CaseStatus::Fail: return "FAIL";
    case CaseStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

// ----------------------------------------------------------------- verify

namespace {

// Raised inside a check when the identity does not apply at the point.
struct Skip {
  std::string reason;
};

template <class S>
struct Scalars {
  typename Backend<S>::Context ctx;
  S zero;
  S one;

  S of(const Rat& q) const { return Backend<S>::from_rat(q, ctx); }
  S of(const BigInt& z) const { return of(Rat(z)); }
  S fact(unsigned long n) const { return of(factorial(n)); }
};

template <class S>
Scalars<S> scalars_for(const IdentityParams& p) {
  typename Backend<S>::Context ctx;
  if constexpr (std::is_same_v<S, ComplexBall>) {
    ctx.bits = p.prec.bits;
  } else {
    ctx.p = p.place.p();
    ctx.digits = p.prec.digits;
  }
  return {ctx, Backend<S>::from_rat(Rat(0), ctx), Backend<S>::from_rat(Rat(1), ctx)};
}

Bound complex_tolerance(const IdentityParams& p) {
  return Bound::pow2(p.tolerance_bits > 0 ? -p.tolerance_bits : -(static_cast<long>(p.prec.bits) - 76));
}

long padic_threshold(const IdentityParams& p) {
  return p.tolerance_bits > 0 ? p.tolerance_bits : p.prec.digits - 8;
}

template <class S>
class Tally {
 public:
  void add(const S& lhs, const S& rhs) {
    const S diff = lhs - rhs;
    ++checks_;
    if constexpr (std::is_same_v<S, ComplexBall>) {
      const Bound b = diff.abs_upper();
      if (!have_ || worst_abs_ < b) {
        worst_abs_ = b;
        worst_ = diff;
      }
    } else {
      const long v = diff.valuation();
      if (!have_ || v < worst_val_) {
        worst_val_ = v;
        worst_ = diff;
      }
    }
    have_ = true;
  }

  /// A qualitative requirement (an exact zero, a nonvanishing value).
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failure_.empty()) failure_ = what;
  }

  void finish(IdentityCase& c, const IdentityParams& p) const {
    c.checks = checks_;
    if constexpr (std::is_same_v<S, ComplexBall>) {
      c.tolerance = complex_tolerance(p);
      c.residual_abs = worst_abs_;
      c.residual = have_ ? worst_ : ComplexBall::from_rat(Rat(0), p.prec.bits);
      c.status = worst_abs_ <= c.tolerance ? CaseStatus::Pass : CaseStatus::Fail;
    } else {
      c.threshold = padic_threshold(p);
      c.residual_valuation = have_ ? worst_val_ : PAdic::kExactZero;
      c.residual = have_ ? worst_ : PAdic::zero_to(p.place.p(), PAdic::kExactZero);
      c.status = c.residual_valuation >= c.threshold ? CaseStatus::Pass : CaseStatus::Fail;
    }
    if (!failure_.empty()) {
      c.status = CaseStatus::Fail;
      c.reason = failure_;
    }
  }

 private:
  bool have_ = false;
  std::size_t checks_ = 0;
  S worst_;
  Bound worst_abs_;
  long worst_val_ = PAdic::kExactZero;
  std::string failure_;
};

FunctionInstance instance(const IdentityParams& p, FunctionId id, const LinearRecurrence& rec, long m = 0) {
  FunctionInstance inst{rec, p.a, p.place, id};
  inst.m = m;
  inst.beta = p.beta;
  inst.d = p.d;
  return inst;
}

template <class S>
BiJet<S> jet(const IdentityParams& p, FunctionId id, const Rat& x0, const Rat& y0, int L, int M,
             long m = 0) {
  return std::get<BiJet<S>>(jet_eval(instance(p, id, p.rec, m), x0, y0, L, M, p.prec).jet);
}

template <class S>
BiJet<S> jet_shifted(const IdentityParams& p, const LinearRecurrence& rec, FunctionId id, const Rat& x0,
                     const Rat& y0, int L, int M) {
  return std::get<BiJet<S>>(jet_eval(instance(p, id, rec), x0, y0, L, M, p.prec).jet);
}

template <class S>
S value_of(const EvalResult& r) {
  return std::get<BiJet<S>>(r.jet).at(0, 0);
}

// d^{l+m} f / dx^l dy^m from the Taylor coefficient
template <class S>
S deriv(const Scalars<S>& sc, const BiJet<S>& j, int l, int m) {
  return j.at(l, m) * sc.of(Rat(factorial(static_cast<unsigned long>(l)) * factorial(static_cast<unsigned long>(m))));
}

// ---- two-variable identities

template <class S>
void theta_x0(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const BiJet<S> T = jet<S>(p, FunctionId::Theta, p.x, Rat(0), p.L, 0);
  const BiJet<S> F = jet<S>(p, FunctionId::F, p.x, Rat(0), p.L, 0);
  for (int l = 0; l <= p.L; ++l) t.add(deriv(sc, T, l, 0), deriv(sc, F, l, 0));
}

template <class S>
void theta_1y(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const BiJet<S> T = jet<S>(p, FunctionId::Theta, Rat(1), p.y, 0, p.M);
  const BiJet<S> G = jet<S>(p, FunctionId::G, Rat(0), p.y, 0, p.M + 1);
  for (int m = 0; m <= p.M; ++m) t.add(deriv(sc, T, 0, m), -deriv(sc, G, 0, m + 1));
}

template <class S>
void theta_gh(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const BiJet<S> T = jet<S>(p, FunctionId::Theta, p.x, p.y, p.L, p.M);
  const BiJet<S> G = jet<S>(p, FunctionId::G, p.x, p.y, p.L, p.M);
  const BiJet<S> H = jet<S>(p, FunctionId::H, p.x, p.y, p.L, p.M);
  const BiJet<S> GH = G * H;
  for (int l = 0; l <= p.L; ++l)
    for (int m = 0; m <= p.M; ++m) t.add(deriv(sc, T, l, m), deriv(sc, GH, l, m));
}

// h_i = d^i H / dy^i (1, y), i < count
template <class S>
std::vector<S> h_at_one(const Scalars<S>& sc, const BiJet<S>& H1, int count) {
  std::vector<S> h;
  for (int i = 0; i < count; ++i) h.push_back(deriv(sc, H1, 0, i));
  return h;
}

template <class S>
void g_prime(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const int top = std::max(1, p.M);
  const BiJet<S> G = jet<S>(p, FunctionId::G, Rat(0), p.y, 0, top);
  const BiJet<S> H1 = jet<S>(p, FunctionId::H, Rat(1), p.y, 0, top - 1);
  const std::vector<S> h = h_at_one(sc, H1, top);
  for (int m = 1; m <= top; ++m) {
    const std::vector<S> args(h.begin(), h.begin() + m);
    t.add(deriv(sc, G, 0, m), G.at(0, 0) * transfer_A(static_cast<unsigned>(m)).evaluate(args, sc.one));
  }
}

template <class S>
void der_transfer(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const int L = p.L, M = p.M;
  const BiJet<S> T = jet<S>(p, FunctionId::Theta, p.x, p.y, L, M);
  const BiJet<S> T1 = jet<S>(p, FunctionId::Theta, Rat(1), p.y, 0, M);
  const BiJet<S> G = jet<S>(p, FunctionId::G, p.x, p.y, L, M);
  const BiJet<S> H = jet<S>(p, FunctionId::H, p.x, p.y, L, M);
  const BiJet<S> H1 = jet<S>(p, FunctionId::H, Rat(1), p.y, 0, M);
  const S g = G.at(0, 0);
  if (Backend<S>::maybe_zero(g)) throw Skip{"G(y) vanishes, the inverse transfer divides by it"};
  const S ginv = Backend<S>::inverse(g);
  const std::vector<S> h = h_at_one(sc, H1, M);
  std::vector<S> theta1;  // (1/G) d^i Theta/dy^i (1, y)
  for (int i = 0; i < M; ++i) theta1.push_back(deriv(sc, T1, 0, i) * ginv);

  for (int l = 0; l <= L; ++l) {
    std::vector<S> Hl, eta;
    for (int i = 0; i < M; ++i) {
      Hl.push_back(deriv(sc, H, l, i));
      eta.push_back(deriv(sc, T, l, i) * ginv);
    }
    for (int m = 0; m <= M; ++m) {
      const unsigned mu = static_cast<unsigned>(m);
      std::vector<S> fwd(h.begin(), h.begin() + m), inv(theta1.begin(), theta1.begin() + m);
      fwd.insert(fwd.end(), Hl.begin(), Hl.begin() + m);
      inv.insert(inv.end(), eta.begin(), eta.begin() + m);
      const S Bm = m == 0 ? sc.zero : transfer_B(mu).evaluate(fwd, sc.one);
      const S Cm = m == 0 ? sc.zero : transfer_C(mu).evaluate(inv, sc.one);
      t.add(deriv(sc, T, l, m), g * (deriv(sc, H, l, m) + Bm));
      t.add(deriv(sc, H, l, m), deriv(sc, T, l, m) * ginv + Cm);
    }
  }

  // at y = 0, where G = 1 and H-derivatives are the F_m
  const BiJet<S> T0 = jet<S>(p, FunctionId::Theta, p.x, Rat(0), L, M);
  const BiJet<S> T10 = jet<S>(p, FunctionId::Theta, Rat(1), Rat(0), 0, M);
  std::vector<BiJet<S>> Fx, F1;
  for (int m = 0; m <= M; ++m) {
    Fx.push_back(jet<S>(p, FunctionId::Fm, p.x, Rat(0), L, 0, m));
    F1.push_back(jet<S>(p, FunctionId::Fm, Rat(1), Rat(0), 0, 0, m));
  }
  for (int l = 0; l <= L; ++l)
    for (int m = 0; m <= M; ++m) {
      std::vector<S> fwd, inv;
      for (int i = 0; i < m; ++i) {
        fwd.push_back(F1[i].at(0, 0));
        inv.push_back(deriv(sc, T10, 0, i));
      }
      for (int i = 0; i < m; ++i) {
        fwd.push_back(deriv(sc, Fx[i], l, 0));
        inv.push_back(deriv(sc, T0, l, i));
      }
      const unsigned mu = static_cast<unsigned>(m);
      const S Bm = m == 0 ? sc.zero : transfer_B(mu).evaluate(fwd, sc.one);
      const S Cm = m == 0 ? sc.zero : transfer_C(mu).evaluate(inv, sc.one);
      t.add(deriv(sc, T0, l, m), deriv(sc, Fx[m], l, 0) + Bm);
      t.add(deriv(sc, Fx[m], l, 0), deriv(sc, T0, l, m) + Cm);
    }
}

// ---- Mahler-type functional equations

template <class S>
void mahler_gd(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  if (p.d < 2) throw Skip{"d must be at least 2"};
  const Rat zd = pow(p.dary_z, static_cast<unsigned long>(p.d));
  const S lhs = value_of<S>(eval_gdary(p.x, p.dary_z, p.d, p.place, p.prec));
  const S inner = value_of<S>(eval_gdary(p.x, zd, p.d, p.place, p.prec));
  t.add(lhs, sc.of(p.x) * inner + sc.of(p.dary_z));
}

MPoint base_point(const IdentityParams& p) {
  MPoint z;
  z.place = p.place;
  z.coords = p.point;
  if (z.coords.empty()) {
    z.coords.assign(p.rec.order(), Rat(1));
    z.coords.back() = Rat(1, 2);
  }
  if (z.coords.size() != p.rec.order()) throw Skip{"point dimension differs from the order of R"};
  return z;
}

template <class S>
void mahler_s4(const IdentityParams& p, FunctionId kind, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const MPoint z = base_point(p);
  const OmegaTransform omega = OmegaTransform::companion(p.rec);
  const int L = kind == FunctionId::GMulti ? 0 : p.L;
  auto at = [&](std::size_t k) -> BiJet<S> {
    const MPoint zk = apply(omega, z, k);
    return std::get<BiJet<S>>(eval_multi(kind, p.rec, p.x, zk, p.m, p.beta, L, p.prec).jet);
  };
  BiJet<S> next = at(0);
  for (std::size_t k = 0; k <= p.shifts; ++k) {
    const BiJet<S> here = std::move(next);
    next = at(k + 1);
    const Rat Mk = monomial_value(p.rec, z, k);
    if (kind == FunctionId::GMulti) {
      t.add(here.at(0, 0), sc.of(Rat(1 - p.beta * Mk)) * next.at(0, 0));
      continue;
    }
    const unsigned long e = static_cast<unsigned long>(p.m + 1);
    const Rat w = kind == FunctionId::HMulti ? pow(Rat(Mk / (1 - p.beta * Mk)), e) : pow(Mk, e);
    for (int l = 0; l <= L; ++l) {
      S rhs = sc.of(p.x) * deriv(sc, next, l, 0);
      if (l > 0) rhs = rhs + sc.of(Rat(l)) * deriv(sc, next, l - 1, 0);
      if (l == 0) rhs = rhs + sc.of(w);
      t.add(deriv(sc, here, l, 0), rhs);
    }
  }
}

// ---- shift decomposition

using YPoly = std::vector<Rat>;  // ascending coefficients in y

YPoly times_linear(const YPoly& f, const Rat& c) {  // f (1 - c y)
  YPoly r(f.size() + 1, Rat(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i] += f[i];
    r[i + 1] -= c * f[i];
  }
  return r;
}

// f / (1 - y/beta), which must be exact
YPoly divide_at(const YPoly& f, const Rat& beta) {
  if (f.size() < 2) throw Error(ErrorCode::InvalidArgument, "polynomial is not divisible by 1 - y/beta");
  // synthetic division by y - beta, then multiply by -beta
  YPoly b(f.size() - 1);
  Rat carry = 0;
  for (std::size_t i = f.size() - 1; i >= 1; --i) {
    carry = f[i] + beta * carry;
    b[i - 1] = carry;
  }
  if (sgn(Rat(f[0] + beta * b[0])) != 0)
    throw Error(ErrorCode::InvalidArgument, "polynomial is not divisible by 1 - y/beta");
  for (Rat& c : b) c *= -beta;
  return b;
}

BiJet<Rat> ypoly_jet(const YPoly& f, const Rat& y0, int L, int M) {
  const BiJet<Rat> y = coordinate_jet<Rat>(L, M, false, y0, {});
  BiJet<Rat> acc(L, M, Rat(0));
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * y + BiJet<Rat>::constant(L, M, f[i], Rat(0));
  return acc;
}

BiJet<Rat> xpow_jet(std::size_t k, const Rat& x0, int L, int M) {
  const BiJet<Rat> x = coordinate_jet<Rat>(L, M, true, x0, {});
  BiJet<Rat> acc = BiJet<Rat>::constant(L, M, Rat(1), Rat(0));
  for (std::size_t i = 0; i < k; ++i) acc = acc * x;
  return acc;
}

struct ShiftData {
  std::size_t k0 = 0;
  std::size_t N = 0;
  LinearRecurrence tilde;
  YPoly P, Q, U;
  /// V_j as sum_k a^{R_k} x^k v_k(y)
  std::vector<std::pair<Rat, YPoly>> V;
};

ShiftData shift_data(const IdentityParams& p) {
  if (sgn(p.beta) == 0) throw Skip{"beta = 0 is never a zero of G"};
  const std::size_t k0 = compute_k0(p.rec, p.a, {p.beta}, p.place);
  const NBeta nb = n_beta(p.rec, p.a, p.beta);
  const std::set<std::size_t> zeros(nb.witnesses.begin(), nb.witnesses.end());
  ShiftData s{k0, nb.count, p.rec.shift(k0), {Rat(1)}, {Rat(1)}, {Rat(1)}, {}};
  std::vector<Rat> u;
  for (std::size_t k = 0; k < k0; ++k) u.push_back(pow(p.a, to_ulong_checked(p.rec.term(k), "exponent R_k")));
  const Rat inv_beta = 1 / p.beta;
  for (std::size_t i = 0; i < s.N; ++i) s.P = times_linear(s.P, inv_beta);
  for (std::size_t i = 0; i + 1 < s.N; ++i) s.U = times_linear(s.U, inv_beta);
  for (std::size_t k = 0; k < k0; ++k)
    if (!zeros.count(k)) s.Q = times_linear(s.Q, u[k]);
  for (std::size_t k = 0; k < k0; ++k) {
    YPoly w{Rat(1)};
    for (std::size_t j = 0; j < k0; ++j)
      if (j != k) w = times_linear(w, u[j]);
    for (std::size_t i = 0; i + 1 < s.N; ++i) w = divide_at(w, p.beta);
    s.V.emplace_back(u[k], std::move(w));
  }
  return s;
}

BiJet<Rat> v_jet(const ShiftData& s, const Rat& x0, const Rat& y0, int L, int M) {
  BiJet<Rat> acc(L, M, Rat(0));
  for (std::size_t k = 0; k < s.V.size(); ++k)
    acc += (xpow_jet(k, x0, L, M) * ypoly_jet(s.V[k].second, y0, L, M)).scaled(s.V[k].first);
  return acc;
}

// p_j Q_j^{(i)}(beta) style constants: i-th derivative of a polynomial at y0
Rat ypoly_deriv(const YPoly& f, const Rat& y0, int i) {
  return Rat(ypoly_jet(f, y0, 0, i).at(0, i) * Rat(factorial(static_cast<unsigned long>(i))));
}

template <class S>
void shift_g(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const ShiftData s = shift_data(p);
  const int N = static_cast<int>(s.N);
  const int top = p.M + N;
  for (const Rat& y0 : {p.y, p.beta}) {
    const BiJet<S> G = jet<S>(p, FunctionId::G, Rat(0), y0, 0, top);
    const BiJet<S> Gt = jet_shifted<S>(p, s.tilde, FunctionId::G, Rat(0), y0, 0, top);
    const BiJet<S> PQ = convert_jet<S>(ypoly_jet(s.P, y0, 0, top) * ypoly_jet(s.Q, y0, 0, top), sc.ctx);
    const BiJet<S> rhs = PQ * Gt;
    for (int m = 0; m <= top; ++m) t.add(deriv(sc, G, 0, m), deriv(sc, rhs, 0, m));
  }

  const BiJet<S> G = jet<S>(p, FunctionId::G, Rat(0), p.beta, 0, top);
  const BiJet<S> Gt = jet_shifted<S>(p, s.tilde, FunctionId::G, Rat(0), p.beta, 0, p.M);
  for (int m = 0; m < N; ++m) {
    bool exact = false;
    if constexpr (std::is_same_v<S, ComplexBall>) {
      exact = G.at(0, m).is_exact_zero();
    } else {
      exact = G.at(0, m).zero() && G.at(0, m).v() == PAdic::kExactZero;
    }
    t.require(exact, "G^(" + std::to_string(m) + ")(beta) is not an exact zero");
  }
  t.require(!Backend<S>::maybe_zero(Gt.at(0, 0)), "G~(beta) may vanish");
  const Rat pj = Rat(factorial(s.N)) * pow(Rat(-1 / p.beta), s.N);
  for (int m = 0; m <= p.M; ++m) {
    S rhs = sc.zero;
    for (int h = 0; h <= m; ++h) {
      const BigInt mult = multinomial(s.N, static_cast<unsigned long>(m - h), static_cast<unsigned long>(h));
      rhs = rhs + sc.of(Rat(Rat(mult) * pj * ypoly_deriv(s.Q, p.beta, m - h))) * deriv(sc, Gt, 0, h);
    }
    t.add(deriv(sc, G, 0, N + m), rhs);
  }
}

template <class S>
void shift_theta(const IdentityParams& p, Tally<S>& t) {
  const auto sc = scalars_for<S>(p);
  const ShiftData s = shift_data(p);
  const int N = static_cast<int>(s.N);
  const int L = p.L, top = p.M + N;
  for (const Rat& y0 : {p.y, p.beta}) {
    const BiJet<S> T = jet<S>(p, FunctionId::Theta, p.x, y0, L, top);
    const BiJet<S> Tt = jet_shifted<S>(p, s.tilde, FunctionId::Theta, p.x, y0, L, top);
    const BiJet<S> Gt = jet_shifted<S>(p, s.tilde, FunctionId::G, p.x, y0, L, top);
    const BiJet<Rat> RPQ =
        xpow_jet(s.k0, p.x, L, top) * ypoly_jet(s.P, y0, L, top) * ypoly_jet(s.Q, y0, L, top);
    const BiJet<Rat> UV = ypoly_jet(s.U, y0, L, top) * v_jet(s, p.x, y0, L, top);
    const BiJet<S> rhs = convert_jet<S>(RPQ, sc.ctx) * Tt + convert_jet<S>(UV, sc.ctx) * Gt;
    for (int l = 0; l <= L; ++l)
      for (int m = 0; m <= top; ++m) t.add(deriv(sc, T, l, m), deriv(sc, rhs, l, m));
  }

  // derivatives of y-order N + m at (x, beta) through the multinomial sums
  const unsigned long Np = s.N > 0 ? s.N - 1 : 0;
  const int mu = std::min(1, N);
  const Rat pj = Rat(factorial(s.N)) * pow(Rat(-1 / p.beta), s.N);
  const Rat uj = Rat(factorial(Np)) * pow(Rat(-1 / p.beta), Np);
  const BiJet<S> T = jet<S>(p, FunctionId::Theta, p.x, p.beta, L, top);
  const BiJet<S> Tt = jet_shifted<S>(p, s.tilde, FunctionId::Theta, p.x, p.beta, L, p.M);
  const BiJet<S> Gt = jet_shifted<S>(p, s.tilde, FunctionId::G, Rat(0), p.beta, 0, p.M + mu);
  const BiJet<Rat> R = xpow_jet(s.k0, p.x, L, 0);
  const BiJet<Rat> V = v_jet(s, p.x, p.beta, L, p.M + mu);
  for (int l = 0; l <= L; ++l)
    for (int m = 0; m <= p.M; ++m) {
      S rhs = sc.zero;
      for (int h1 = 0; h1 <= l; ++h1) {
        const Rat r = Rat(binomial(l, h1)) * R.at(l - h1, 0) * Rat(factorial(l - h1));
        for (int h2 = 0; h2 <= m; ++h2) {
          const BigInt mult = multinomial(s.N, m - h2, h2);
          const Rat c = Rat(r * Rat(mult) * pj * ypoly_deriv(s.Q, p.beta, m - h2));
          rhs = rhs + sc.of(c) * deriv(sc, Tt, h1, h2);
        }
      }
      for (int h3 = 0; h3 <= m + mu; ++h3) {
        const int vm = m + mu - h3;
        const BigInt mult = multinomial(Np, static_cast<unsigned long>(vm), static_cast<unsigned long>(h3));
        const Rat c = Rat(Rat(mult) * uj * V.at(l, vm) * Rat(factorial(l) * factorial(vm)));
        rhs = rhs + sc.of(c) * deriv(sc, Gt, 0, h3);
      }
      t.add(deriv(sc, T, l, N + m), rhs);
    }
}

template <class S>
void run_identity(IdentityId id, const IdentityParams& p, Tally<S>& t) {
  switch (id) {
    case IdentityId::ThetaX0: return theta_x0(p, t);
    case IdentityId::Theta1Y: return theta_1y(p, t);
    case IdentityId::ThetaGH: return theta_gh(p, t);
    case IdentityId::GPrime: return g_prime(p, t);
    case IdentityId::MahlerGD: return mahler_gd(p, t);
    case IdentityId::MahlerS4G: return mahler_s4(p, FunctionId::GMulti, t);
    case IdentityId::MahlerS4H: return mahler_s4(p, FunctionId::HMulti, t);
    case IdentityId::MahlerS4F: return mahler_s4(p, FunctionId::FMulti, t);
    case IdentityId::ShiftG: return shift_g(p, t);
    case IdentityId::ShiftTheta: return shift_theta(p, t);
    case IdentityId::DerTransfer: return der_transfer(p, t);
  }
}

std::string describe(IdentityId id, const IdentityParams& p) {
  std::ostringstream out;
  out << "a=" << to_string(p.a) << " place=" << p.place.to_string();
  switch (id) {
    case IdentityId::ThetaX0: out << " x=" << to_string(p.x) << " L=" << p.L; break;
    case IdentityId::Theta1Y:
    case IdentityId::GPrime: out << " y=" << to_string(p.y) << " M=" << p.M; break;
    case IdentityId::ThetaGH:
    case IdentityId::DerTransfer:
      out << " x=" << to_string(p.x) << " y=" << to_string(p.y) << " L=" << p.L << " M=" << p.M;
      break;
    case IdentityId::MahlerGD:
      out.str("");
      out << "place=" << p.place.to_string() << " x=" << to_string(p.x) << " z=" << to_string(p.dary_z)
          << " d=" << p.d;
      break;
    case IdentityId::MahlerS4G:
    case IdentityId::MahlerS4H:
    case IdentityId::MahlerS4F: {
      out.str("");
      out << "place=" << p.place.to_string() << " x=" << to_string(p.x) << " beta=" << to_string(p.beta)
          << " m=" << p.m << " L=" << p.L << " k<=" << p.shifts << " z=(";
      std::vector<Rat> pt = p.point;
      if (pt.empty()) {
        pt.assign(p.rec.order(), Rat(1));
        pt.back() = Rat(1, 2);
      }
      for (std::size_t i = 0; i < pt.size(); ++i) out << (i ? "," : "") << to_string(pt[i]);
      out << ")";
      break;
    }
    case IdentityId::ShiftG:
      out << " y=" << to_string(p.y) << " beta=" << to_string(p.beta) << " M=" << p.M;
      break;
    case IdentityId::ShiftTheta:
      out << " x=" << to_string(p.x) << " y=" << to_string(p.y) << " beta=" << to_string(p.beta) << " L=" << p.L
          << " M=" << p.M;
      break;
  }
  return out.str();
}

template <class S>
void verify_with(IdentityId id, const IdentityParams& p, IdentityCase& c) {
  Tally<S> t;
  try {
    run_identity(id, p, t);
  } catch (const Skip& s) {
    c.status = CaseStatus::Skipped;
    c.reason = s.reason;
    return;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::PoleAtY:
      case ErrorCode::NotInDomain:
      case ErrorCode::BadPoint:
      case ErrorCode::ZeroBeta:
      case ErrorCode::ZeroConstantTerm:
        c.status = CaseStatus::Skipped;
        c.reason = e.what();
        return;
      default: throw;
    }
  }
  t.finish(c, p);
}

}  // namespace

IdentityCase verify(IdentityId id, const IdentityParams& params) {
  IdentityCase c;
  c.id = id;
  c.place = params.place;
  c.params = describe(id, params);
  if (params.L < 0 || params.M < 0) throw Error(ErrorCode::InvalidArgument, "orders must be nonnegative");
  if (params.place.is_infinite()) {
    c.tolerance = complex_tolerance(params);
    verify_with<ComplexBall>(id, params, c);
  } else {
    c.threshold = padic_threshold(params);
    verify_with<PAdic>(id, params, c);
  }
  return c;
}

std::vector<SuiteCase> default_suite(const Place& place, const Precision& prec) {
  IdentityParams base;
  base.rec = LinearRecurrence::make({1, 1}, {1, 2});
  base.place = place;
  base.prec = prec;
  // several-variable equations run on Fibonacci itself, whose companion
  // matrix is Omega and whose M(1, 1/2) = 1
  IdentityParams multi = base;
  multi.rec = LinearRecurrence::make({1, 1}, {0, 1});
  multi.point = {Rat(1), Rat(1, 2)};
  multi.beta = 1;
  multi.m = 1;
  std::vector<Rat> betas = {Rat(2), Rat(1, 3)};

  if (!place.is_infinite()) {
    const long p = place.p();
    // points with |.|_p <= 1: reciprocals of primes other than p
    std::vector<long> others;
    for (long q : {3L, 5L, 7L})
      if (q != p) others.push_back(q);
    base.a = Rat(p);
    base.x = Rat(1, others[0]);
    base.y = Rat(1, others[1]);
    base.dary_z = Rat(p);
    multi.place = place;
    multi.x = base.x;
    multi.point = {Rat(1), Rat(p)};
    betas = {Rat(1, p), Rat(1)};  // N = 1 since R_0 = 1, and N = 0
  }

  std::vector<SuiteCase> suite;
  for (IdentityId id : {IdentityId::ThetaX0, IdentityId::Theta1Y, IdentityId::ThetaGH, IdentityId::GPrime,
                        IdentityId::MahlerGD})
    suite.push_back({id, base});
  suite.push_back({IdentityId::MahlerS4G, multi});
  IdentityParams off_pole = multi;
  off_pole.beta = 3;  // 1 - beta M(z) must not vanish for h_jm
  suite.push_back({IdentityId::MahlerS4H, off_pole});
  suite.push_back({IdentityId::MahlerS4F, off_pole});
  for (const Rat& b : betas)
    for (IdentityId id : {IdentityId::ShiftG, IdentityId::ShiftTheta}) {
      IdentityParams q = base;
      q.beta = b;
      q.L = 1;
      q.M = 2;
      suite.push_back({id, q});
    }
  suite.push_back({IdentityId::DerTransfer, base});
  return suite;
}

// -------------------------------------------------------------- rank check

const char* rank_mode_name(RankMode m) { return m == RankMode::RRR ? "RRR" : "SSS"; }

RankCheck rank_check(RankMode mode, const std::vector<Rat>& betas, int M) {
  if (M < 0) throw Error(ErrorCode::InvalidArgument, "M must be nonnegative");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (sgn(betas[i]) == 0) throw Error(ErrorCode::ZeroBeta, "beta_" + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (betas[i] == betas[j]) throw Error(ErrorCode::DuplicateBeta, "beta " + to_string(betas[i]) + " repeats");
  }
  RankCheck rc;
  rc.mode = mode;
  rc.betas = betas;
  rc.M = M;
  const std::size_t s = betas.size();
  // [X^t] (X/(1-bX))^{e} = binom(t-1, e-1) b^{t-e} for t >= e
  auto power_coeff = [](const Rat& b, unsigned long e, unsigned long t) -> Rat {
    if (t < e) return Rat(0);
    return Rat(binomial(t - 1, e - 1)) * pow(b, t - e);
  };
  if (mode == RankMode::RRR) {
    const std::size_t rows = (s + 1) * static_cast<std::size_t>(M + 1) + 2;
    rc.matrix.assign(rows, {});
    for (std::size_t t = 0; t < rows; ++t) {
      auto& row = rc.matrix[t];
      row.push_back(Rat(t == 0 ? 1 : 0));  // delta
      for (int m = 0; m <= M; ++m) row.push_back(Rat(t == static_cast<std::size_t>(m + 1) ? 1 : 0));
      for (const Rat& b : betas)
        for (int m = 0; m <= M; ++m) row.push_back(power_coeff(b, static_cast<unsigned long>(m + 1), t));
    }
  } else {
    // column j: [X^t] b_j X/(1 - b_j X) = b_j^t
    const std::size_t rows = s + 2;
    rc.matrix.assign(rows, std::vector<Rat>(s, Rat(0)));
    for (std::size_t t = 1; t < rows; ++t)
      for (std::size_t j = 0; j < s; ++j) rc.matrix[t][j] = pow(betas[j], static_cast<unsigned long>(t));
  }
  if (rc.unknowns() == 0) return rc;
  rc.rank = rank(rc.matrix);
  rc.kernel = kernel(rc.matrix);
  return rc;
}

}  // namespace recmahler
