#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "recmahler/linalg.hpp"
#include "recmahler/place.hpp"
#include "recmahler/recurrence.hpp"
#include "recmahler/verdict.hpp"

namespace recmahler {

/// Square nonnegative integer matrix acting multiplicatively on points:
/// (Omega z)_i = prod_j z_j^{omega_ij}. Powers are cached and shared.
class OmegaTransform {
 public:
  explicit OmegaTransform(IntMatrix m);

  /// omega_{i1} = c_i and omega_{i,i+1} = 1, zero elsewhere.
  static OmegaTransform companion(const LinearRecurrence& rec);

  std::size_t size() const { return m_.size(); }
  const IntMatrix& matrix() const { return m_; }
  IntMatrix power(std::size_t k) const;

  /// det(X I - Omega)
  UPoly char_poly() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<IntMatrix> powers;
  };

  IntMatrix m_;
  std::shared_ptr<Cache> cache_;
};

/// A point with nonzero rational coordinates, tagged with its place.
struct MPoint {
  std::vector<Rat> coords;
  Place place = Place::infinity();
};

/// Default cap on the bit size of a coordinate produced by apply().
inline constexpr unsigned long kExponentBitCap = 1UL << 20;

/// Omega^k z exactly. Throws ExponentOverflow past the bit cap and BadPoint
/// for zero coordinates or a dimension mismatch.
MPoint apply(const OmegaTransform& omega, const MPoint& z, std::size_t k,
             unsigned long bit_cap = kExponentBitCap);

/// (R_{k+n-1}, ..., R_k): the exponents of M(Omega^k z).
std::vector<BigInt> monomial_exponents(const LinearRecurrence& rec, std::size_t k);

Clause check_I(const OmegaTransform& omega);
Clause check_II(const OmegaTransform& omega, std::size_t K = 60);

struct ConditionIII {
  Clause clause;
  /// Largest c with log|z_i^{(k)}| <= -c rho^k over the tested upper range.
  double c = 0;
  std::string c_decimal;
};
ConditionIII check_III(const OmegaTransform& omega, const MPoint& z, std::size_t K = 60);

struct IVBounds {
  long height = 20;
  long modulus = 12;
};

/// Cofactor test at a prime place, bounded relation search at infinity.
/// `method` reports which route ran.
struct ConditionIV {
  Clause clause;
  std::string method;
  std::vector<BigInt> witness;  // relation exponents when FAIL at infinity
  long progression_start = 0;
  long progression_step = 0;
};
ConditionIV check_IV(const OmegaTransform& omega, const MPoint& z, const IVBounds& bounds = {});

struct OmegaConditionReport {
  Place place = Place::infinity();
  std::vector<Clause> clauses;
  Verdict overall = Verdict::Unknown;
  std::string c_estimate;
  std::string iv_method;
  std::vector<BigInt> iv_witness;
};

OmegaConditionReport check_omega(const OmegaTransform& omega, const MPoint& z, std::size_t K = 60,
                                 const IVBounds& bounds = {});

}  // namespace recmahler
