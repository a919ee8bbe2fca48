#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "recmahler/complex_ball.hpp"
#include "recmahler/place.hpp"
#include "recmahler/upoly.hpp"
#include "recmahler/verdict.hpp"

namespace recmahler {

/// R_{k+n} = c_1 R_{k+n-1} + ... + c_n R_k with nonnegative integer data.
/// Terms are memoized in a cache shared between copies.
class LinearRecurrence {
 public:
  /// Throws OrderTooSmall, LastCoeffZero, NegativeCoeff or AllZeroInit.
  static LinearRecurrence make(std::vector<BigInt> c, std::vector<BigInt> init);

  std::size_t order() const { return c_.size(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const std::vector<BigInt>& init() const { return init_; }

  BigInt term(std::size_t k) const;
  /// R_0 .. R_{count-1}
  std::vector<BigInt> terms(std::size_t count) const;

  /// X^n - c_1 X^{n-1} - ... - c_n
  UPoly char_poly() const;
  /// c_1 + ... + c_n
  BigInt coeff_sum() const;

  /// R_1 != 0 and R_k R_{k+2} = R_{k+1}^2 for 0 <= k <= n-2.
  bool is_geometric() const;

  /// Same coefficients, initial terms R_{k0} .. R_{k0+n-1}.
  LinearRecurrence shift(std::size_t k0) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<BigInt> terms;
  };

  LinearRecurrence(std::vector<BigInt> c, std::vector<BigInt> init);

  std::vector<BigInt> c_;
  std::vector<BigInt> init_;
  std::shared_ptr<Cache> cache_;
};

/// First index K such that the window R_{K-n+1..K} has a positive minimum,
/// together with that minimum. Throws NotGrowing when none appears soon or
/// when the coefficient sum is below 2.
struct GrowthWindow {
  std::size_t index;
  BigInt minimum;
};
GrowthWindow first_positive_window(const LinearRecurrence& rec, std::size_t from = 0);

struct RootOfUnityRatio {
  bool found = false;
  long order = 0;  // smallest m with a primitive m-th root of unity ratio
};

/// Whether rho_i / rho_j is a root of unity for some pair of distinct roots.
/// Throws NonSquarefree when f has a repeated root.
RootOfUnityRatio ratio_roots_root_of_unity(const UPoly& f);

/// prod_i f(X rho_i) over the roots rho_i of the monic polynomial f.
UPoly ratio_polynomial(const UPoly& f);

struct IrreducibilityResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<UPoly> factor;
  std::string evidence;
};

IrreducibilityResult is_irreducible_over_Q(const UPoly& f);

struct ConditionReport {
  Place place = Place::infinity();
  std::vector<Clause> clauses;
  Verdict overall = Verdict::Unknown;
  /// For a prime place, the archimedean clauses implied by the prime ones.
  std::vector<Clause> implied;
};

ConditionReport check_condition(const LinearRecurrence& rec, const Place& place);

struct GrowthEstimate {
  ComplexBall rho;
  ComplexBall c;
};

/// Perron root and the constant in R_k ~ c rho^k from the last ten indices
/// up to K. Throws ConditionNotMet unless the archimedean condition holds.
GrowthEstimate growth_estimate(const LinearRecurrence& rec, std::size_t K, mpfr_prec_t prec = 256);

/// Indices k with a^{-R_k} = beta, all of them (the set is finite).
std::vector<std::size_t> beta_witnesses(const LinearRecurrence& rec, const Rat& a, const Rat& beta);

/// Smallest k0 with 1 - a^{R_k} beta_j != 0 for all k >= k0 and all j.
/// Throws BadScale unless 0 < |a| < 1 at the place.
std::size_t compute_k0(const LinearRecurrence& rec, const Rat& a, const std::vector<Rat>& betas,
                       const Place& place);

/// Throws BadScale unless 0 < |a| < 1 at the place.
void check_scale(const Rat& a, const Place& place);

}  // namespace recmahler
