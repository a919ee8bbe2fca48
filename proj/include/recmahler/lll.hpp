#pragma once

#include "recmahler/linalg.hpp"

namespace recmahler {

/// Rows of an LLL-reduced basis together with the Gram-Schmidt data
/// needed to bound the shortest vector of the lattice.
struct LllResult {
  IntMatrix basis;
  /// d[i] = prod_{j<=i} |b_j*|^2, so |b_i*|^2 = d[i] / d[i-1] (d[-1] = 1).
  std::vector<BigInt> d;
  std::size_t swaps = 0;
};

/// Integral LLL on linearly independent integer rows with Lovasz
/// parameter delta in (1/4, 1]. All arithmetic is exact (the
/// fraction-free variant keeps d_i and d_{i-1} mu_{ij} integral).
/// Throws InvalidArgument for dependent rows or a bad delta.
LllResult lll_reduce(IntMatrix basis, const Rat& delta = Rat(99, 100));

/// |b_i*|^2 for the reduced basis.
Rat gram_schmidt_norm2(const LllResult& r, std::size_t i);

}  // namespace recmahler
