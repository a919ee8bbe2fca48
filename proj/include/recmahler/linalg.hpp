#pragma once

#include <cstddef>
#include <vector>

#include "recmahler/rat.hpp"

namespace recmahler {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<std::vector<Rat>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, const IntVector& v);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
BigInt determinant(IntMatrix m);

/// Row echelon form computed fraction-free; rows are integer multiples of
/// the input rows' span and `pivots` lists pivot columns in order.
struct Echelon {
  IntMatrix rows;
  std::vector<std::size_t> pivots;
};

Echelon echelon(IntMatrix m);

/// Clears denominators row by row.
IntMatrix integer_rows(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Basis of the right kernel {v : m v = 0}, each vector primitive integral.
std::vector<IntVector> kernel(const RatMatrix& m);
std::vector<IntVector> kernel(const IntMatrix& m);

}  // namespace recmahler
