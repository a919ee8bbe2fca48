#include "recmahler/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace recmahler {

IntPoly IntPoly::constant(std::size_t nvars, const BigInt& c) {
  IntPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

IntPoly IntPoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  Monomial e(nvars, 0);
  e[i] = 1;
  IntPoly p(nvars);
  p.add_term(e, BigInt(1));
  return p;
}

BigInt IntPoly::coefficient(const Monomial& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

unsigned IntPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

void IntPoly::add_term(const Monomial& e, const BigInt& c) {
  if (e.size() != nvars_) throw Error(ErrorCode::InvalidArgument, "monomial has the wrong number of variables");
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void IntPoly::check_same(const IntPoly& o) const {
  if (o.nvars_ != nvars_) throw Error(ErrorCode::InvalidArgument, "polynomials live in different rings");
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPoly IntPoly::operator-() const { return scaled(BigInt(-1)); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  a.check_same(b);
  IntPoly r(a.nvars_);
  IntPoly::Monomial e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

IntPoly IntPoly::scaled(const BigInt& c) const {
  IntPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

IntPoly IntPoly::derivative(std::size_t i) const {
  if (i >= nvars_) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  IntPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Monomial f = e;
    --f[i];
    r.add_term(f, c * e[i]);
  }
  return r;
}

IntPoly IntPoly::relabeled(std::size_t nvars, const std::vector<std::size_t>& slots) const {
  if (slots.size() != nvars_) throw Error(ErrorCode::InvalidArgument, "one slot per variable required");
  IntPoly r(nvars);
  for (const auto& [e, c] : terms_) {
    Monomial f(nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (slots[i] >= nvars) throw Error(ErrorCode::InvalidArgument, "slot out of range");
      f[slots[i]] += e[i];
    }
    r.add_term(f, c);
  }
  return r;
}

std::string IntPoly::to_string(const std::vector<std::string>& names) const {
  if (names.size() != nvars_) throw Error(ErrorCode::InvalidArgument, "one name per variable required");
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, BigInt>> order(terms_.begin(), terms_.end());
  auto degree = [](const Monomial& e) { return std::accumulate(e.begin(), e.end(), 0u); };
  std::stable_sort(order.begin(), order.end(), [&](const auto& u, const auto& v) {
    const unsigned du = degree(u.first), dv = degree(v.first);
    if (du != dv) return du > dv;
    return u.first > v.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : order) {
    const bool neg = sgn(c) < 0;
    const BigInt mag = abs(c);
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    const bool bare = degree(e) == 0;
    if (mag != 1 || bare) out << recmahler::to_string(mag);
    bool star = mag != 1;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (star) out << "*";
      out << names[i];
      if (e[i] > 1) out << "^" << e[i];
      star = true;
    }
  }
  return out.str();
}

IntPoly compose(const IntPoly& p, const std::vector<IntPoly>& images) {
  // the target ring is read off the images
  if (images.empty()) throw Error(ErrorCode::InvalidArgument, "compose needs at least one image");
  const std::size_t n = images.front().nvars();
  return p.evaluate(images, IntPoly::constant(n, BigInt(1)));
}

}  // namespace recmahler
