#include "recmahler/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "recmahler/error.hpp"

namespace recmahler {

UPoly::UPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const BigInt& c, std::size_t deg) {
  std::vector<BigInt> v(deg + 1, 0);
  v[deg] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear(const BigInt& r) { return UPoly({-r, BigInt(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt UPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Rat UPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rat(*it);
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<BigInt> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return UPoly(std::move(d));
}

BigInt UPoly::content() const {
  BigInt g = 0;
  for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

UPoly UPoly::primitive() const {
  if (is_zero()) return *this;
  BigInt g = content();
  if (leading() < 0) g = -g;
  std::vector<BigInt> v = c_;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return UPoly(std::move(v));
}

UPoly UPoly::operator-() const {
  std::vector<BigInt> v = c_;
  for (auto& x : v) x = -x;
  return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

std::optional<UPoly> divide_exact(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (a.is_zero()) return UPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<BigInt> rem = a.c_;
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const BigInt& lb = b.c_.back();
  const std::size_t db = b.c_.size() - 1;
  for (std::size_t i = q.size(); i-- > 0;) {
    const BigInt& top = rem[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    const BigInt t = top / lb;
    for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= t * b.c_[j];
    q[i] = t;
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return UPoly(std::move(q));
}

std::string UPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const BigInt& c = c_[i];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i > 0) {
      if (mag != 1) out << "*";
      out << "X";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

namespace {

// lc(b)^(deg a - deg b + 1) a mod b
UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
  std::vector<BigInt> r = a.coeffs();
  const std::vector<BigInt>& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const BigInt& lb = bc.back();
  while (!r.empty() && r.size() - 1 >= db) {
    const BigInt top = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& x : r) x *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= top * bc[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return UPoly(std::move(r));
}

}  // namespace

UPoly gcd(UPoly a, UPoly b) {
  a = a.primitive();
  b = b.primitive();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    UPoly r = pseudo_remainder(a, b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_squarefree(const UPoly& f) { return gcd(f, f.derivative()).degree() == 0; }

long euler_phi(long m) {
  long result = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

int moebius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

UPoly cyclotomic(long m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
  UPoly num({BigInt(1)}), den({BigInt(1)});
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    const int mu = moebius(m / d);
    if (mu == 0) continue;
    const UPoly factor = UPoly::monomial(1, static_cast<std::size_t>(d)) - UPoly({BigInt(1)});
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * factor;
  }
  return *divide_exact(num, den);
}

UPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
  const std::size_t n = xs.size();
  if (ys.size() != n) throw Error(ErrorCode::InvalidArgument, "interpolation sizes differ");
  // Newton divided differences, then expand the Newton form.
  std::vector<Rat> dd(ys.begin(), ys.end());
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / Rat(xs[i] - xs[i - j]);
  std::vector<Rat> poly(n, Rat(0));
  for (std::size_t i = n; i-- > 0;) {
    // poly = poly * (X - xs[i]) + dd[i]
    std::vector<Rat> next(n, Rat(0));
    for (std::size_t k = 0; k + 1 < n; ++k) next[k + 1] += poly[k];
    for (std::size_t k = 0; k < n; ++k) next[k] -= Rat(xs[i]) * poly[k];
    next[0] += dd[i];
    poly = std::move(next);
  }
  std::vector<BigInt> out;
  for (const auto& c : poly) {
    if (c.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "interpolant is not integral");
    out.push_back(c.get_num());
  }
  return UPoly(std::move(out));
}

namespace {

using ModPoly = std::vector<long>;

long mulmod(long a, long b, long p) { return static_cast<long>((static_cast<__int128>(a) * b) % p); }

long powmod(long a, long e, long p) {
  long r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly rem(ModPoly a, const ModPoly& b, long p) {
  const long inv = powmod(b.back(), p - 2, p);
  const std::size_t db = b.size() - 1;
  trim(a);
  while (a.size() >= b.size()) {
    const long t = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = ((a[shift + j] - mulmod(t, b[j], p)) % p + p) % p;
    trim(a);
  }
  return a;
}

ModPoly quo(ModPoly a, const ModPoly& b, long p) {
  const long inv = powmod(b.back(), p - 2, p);
  const std::size_t db = b.size() - 1;
  trim(a);
  if (a.size() < b.size()) return {};
  ModPoly q(a.size() - db, 0);
  while (a.size() >= b.size()) {
    const long t = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    q[shift] = t;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = ((a[shift + j] - mulmod(t, b[j], p)) % p + p) % p;
    trim(a);
  }
  return q;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(r);
  return r;
}

ModPoly gcd_mod(ModPoly a, ModPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

ModPoly powmod_poly(ModPoly base, long e, const ModPoly& f, long p) {
  ModPoly r{1};
  base = rem(base, f, p);
  while (e > 0) {
    if (e & 1) r = rem(mul(r, base, p), f, p);
    base = rem(mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<int> factor_degrees_mod(const UPoly& f, long p) {
  ModPoly g;
  for (const auto& c : f.coeffs()) g.push_back(static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p))));
  trim(g);
  if (static_cast<int>(g.size()) - 1 != f.degree()) return {};
  ModPoly dg;
  for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(mulmod(g[i], static_cast<long>(i % p), p));
  trim(dg);
  if (dg.empty() || gcd_mod(g, dg, p).size() != 1) return {};

  std::vector<int> degrees;
  ModPoly h{0, 1};
  for (int d = 1; 2 * d <= static_cast<int>(g.size()) - 1; ++d) {
    h = powmod_poly(h, p, g, p);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] - 1 + p) % p;
    trim(hx);
    const ModPoly common = gcd_mod(g, hx, p);
    const int dc = static_cast<int>(common.size()) - 1;
    if (dc > 0) {
      for (int k = 0; k < dc / d; ++k) degrees.push_back(d);
      g = quo(g, common, p);
      h = rem(h, g, p);
    }
  }
  if (g.size() > 1) degrees.push_back(static_cast<int>(g.size()) - 1);
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

}  // namespace recmahler
