#include "recmahler/height.hpp"

#include <algorithm>

#include "recmahler/error.hpp"

namespace recmahler {

Height height(const Rat& q) {
  Height h;
  h.house = abs(q);
  h.den = q.get_den();
  h.norm = std::max(h.house, Rat(h.den));
  return h;
}

Rat padic_abs(const Rat& q, long p) {
  if (sgn(q) == 0) return Rat(0);
  const long v = valuation(q, p);
  const Rat pv = pow(Rat(p), static_cast<unsigned long>(v < 0 ? -v : v));
  return v >= 0 ? Rat(1) / pv : pv;
}

bool liouville_check(const Rat& q, const Place& place) {
  if (sgn(q) == 0) throw Error(ErrorCode::ZeroInput, "Liouville bound needs a nonzero rational");
  const Rat norm = height(q).norm;
  const Rat lhs = place.is_infinite() ? abs(q) : padic_abs(q, place.p());
  return lhs * norm * norm >= 1;
}

}  // namespace recmahler
