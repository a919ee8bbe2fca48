#pragma once

#include <optional>
#include <vector>

#include "recmahler/complex_ball.hpp"
#include "recmahler/upoly.hpp"

namespace recmahler {

/// Certified inclusion disks for all complex roots of a squarefree
/// integer polynomial. Each returned ball contains exactly one root and the
/// balls are pairwise disjoint. Empty optional when certification fails
/// (for instance when f has repeated roots).
std::optional<std::vector<ComplexBall>> isolate_roots(const UPoly& f, mpfr_prec_t prec = 256);

/// Index of a root that is real, positive, and strictly larger in modulus
/// than every other root, provided the disks certify it.
std::optional<std::size_t> dominant_root(const std::vector<ComplexBall>& roots);

}  // namespace recmahler
