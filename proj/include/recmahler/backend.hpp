#pragma once

#include <variant>

#include "recmahler/complex_ball.hpp"
#include "recmahler/error.hpp"
#include "recmahler/padic.hpp"
#include "recmahler/place.hpp"
#include "recmahler/rat.hpp"

namespace recmahler {

struct ExactContext {};

struct ComplexContext {
  mpfr_prec_t bits = 256;
};

struct PAdicContext {
  long p = 2;
  long digits = 64;
};

/// Uniform access to the three scalar backends used by the evaluators:
/// exact rationals (truncated sums only), complex balls and p-adics.
template <class S>
struct Backend;

template <>
struct Backend<Rat> {
  using Context = ExactContext;
  static constexpr const char* kName = "exact";
  static Rat from_rat(const Rat& q, const Context&) { return q; }
  static bool maybe_zero(const Rat& q) { return sgn(q) == 0; }
  static Rat inverse(const Rat& q) {
    if (sgn(q) == 0) throw Error(ErrorCode::ZeroConstantTerm, "inverse of exact zero");
    return Rat(1) / q;
  }
};

template <>
struct Backend<ComplexBall> {
  using Context = ComplexContext;
  static constexpr const char* kName = "complex";
  static ComplexBall from_rat(const Rat& q, const Context& ctx) { return ComplexBall::from_rat(q, ctx.bits); }
  static bool maybe_zero(const ComplexBall& z) { return z.contains_zero(); }
  static ComplexBall inverse(const ComplexBall& z) { return z.inverse(); }
};

template <>
struct Backend<PAdic> {
  using Context = PAdicContext;
  static constexpr const char* kName = "padic";
  static PAdic from_rat(const Rat& q, const Context& ctx) { return PAdic::from_rat(q, ctx.p, ctx.digits); }
  static bool maybe_zero(const PAdic& z) { return z.zero(); }
  static PAdic inverse(const PAdic& z) { return z.inverse(); }
};

/// Backend-tagged value as it appears in reports.
using PrecisionScalar = std::variant<ComplexBall, PAdic>;

/// Working precision for both approximate backends; the place picks one.
struct Precision {
  mpfr_prec_t bits = 256;
  long digits = 64;
};

}  // namespace recmahler
