#pragma once

#include "recmahler/place.hpp"
#include "recmahler/rat.hpp"

namespace recmahler {

/// house, den and ||q|| = max(house, den) of a rational.
struct Height {
  Rat house;
  BigInt den;
  Rat norm;
};

Height height(const Rat& q);

/// |q|_p = p^{-v_p(q)}; 0 maps to 0.
Rat padic_abs(const Rat& q, long p);

/// Whether |q|_place >= ||q||^{-2}, the Liouville-type lower bound for a
/// nonzero rational. Throws Error(ZeroInput) for q = 0.
bool liouville_check(const Rat& q, const Place& place);

}  // namespace recmahler
