#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recmahler/complex_ball.hpp"
#include "recmahler/linalg.hpp"

namespace recmahler {

/// A value handed to the probe. `recompute`, when set, evaluates the same
/// quantity at a requested precision so a found relation can be rechecked.
struct LabeledValue {
  std::string label;
  ComplexBall value;
  std::function<ComplexBall(mpfr_prec_t)> recompute;
};

enum class ProbeOutcome { Found, None };
const char* probe_outcome_name(ProbeOutcome o);

struct RelationCertificate {
  /// one label per coordinate of `relation` (monomials for algebraic_probe)
  std::vector<std::string> labels;
  long degree = 1;
  BigInt height;
  long digits = 0;
  ProbeOutcome outcome = ProbeOutcome::None;

  /// FOUND: primitive integer vector with first nonzero entry positive
  IntVector relation;
  /// upper bound on |sum c_i v_i| at the working precision
  Bound residual;
  /// the same after recomputing every value at twice the precision
  std::optional<Bound> recheck_residual;

  /// NONE: log10 of the smallest Gram-Schmidt norm of the reduced basis,
  /// a lower bound for every nonzero lattice vector, against log10 of the
  /// largest norm a relation of the given height could have.
  double log10_lattice_floor = 0;
  double log10_relation_norm = 0;
  /// floor above the relation norm: no relation of height <= bound exists
  /// (up to the rounding of the scaled values)
  bool height_excluded = false;
  std::size_t dimension = 0;
};

/// Integer relation search on the lattice [I | N v] with N = 10^(digits-8)
/// (real and imaginary parts get separate columns). FOUND iff a reduced
/// row has height <= `height` and |sum c_i v_i| < 10^-(digits/2).
/// Throws InsufficientPrecision when a value's radius exceeds 10^-digits
/// or its precision is below the requested digits.
RelationCertificate integer_relation(const std::vector<LabeledValue>& values, const BigInt& height, long digits);

/// Exponent vectors in `nvars` variables of total degree <= D, constant
/// first, then degree by degree in lexicographic order (graded lex).
std::vector<std::vector<unsigned>> monomial_basis(std::size_t nvars, long D);

inline constexpr std::size_t kDefaultBasisCap = 64;

/// integer_relation on all monomials of total degree <= D in the values
/// (the constant 1 included). Throws BasisTooLarge beyond `basis_cap`.
RelationCertificate algebraic_probe(const std::vector<LabeledValue>& values, long D, const BigInt& height,
                                    long digits, std::size_t basis_cap = kDefaultBasisCap);

/// Bits needed to carry `digits` decimal digits plus guard bits.
mpfr_prec_t bits_for_digits(long digits);

}  // namespace recmahler
