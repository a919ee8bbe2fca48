#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "recmahler/backend.hpp"
#include "recmahler/bijet.hpp"
#include "recmahler/recurrence.hpp"
#include "recmahler/transform.hpp"

namespace recmahler {

enum class FunctionId { F, Fm, G, H, Theta, Xi, GDary, FMulti, GMulti, HMulti };

const char* function_name(FunctionId id);
/// Accepts the names above in any case ("theta", "F_m", "h_jm", "g_dary", ...).
FunctionId parse_function_id(const std::string& text);

/// One of the entire functions generated by R and a scale a. Parameters
/// that an id does not use are ignored.
struct FunctionInstance {
  LinearRecurrence rec;
  Rat a;
  Place place = Place::infinity();
  FunctionId id = FunctionId::F;
  long m = 0;     // F_m, f_m, h_jm
  Rat beta = 0;   // g_j, h_jm
  long d = 2;     // g_dary
};

/// Backend jet plus its truncation certificate. Coefficient (l, m) of the
/// jet is (1/(l! m!)) times the partial derivative; a plain value is the
/// (0, 0) coefficient.
struct EvalResult {
  Place place = Place::infinity();
  std::variant<BiJet<ComplexBall>, BiJet<PAdic>> jet;
  /// Exact truncated jet before conversion to the backend.
  BiJet<Rat> partial;
  /// Terms 0..K were summed exactly.
  std::size_t K = 0;
  /// Largest bound on the truncation error over all coefficients (complex).
  Bound tail;
  /// Lower bound on the valuation of the truncation error (p-adic).
  long tail_valuation = PAdic::kExactZero;
  double wall_seconds = 0;
  /// Indices k whose factor 1 - a^{R_k} y vanishes at the point.
  std::vector<std::size_t> zero_factors;

  const BiJet<ComplexBall>& complex() const { return std::get<BiJet<ComplexBall>>(jet); }
  const BiJet<PAdic>& padic() const { return std::get<BiJet<PAdic>>(jet); }
  PrecisionScalar value(int l = 0, int m = 0) const;
};

/// Certified jet of inst at (x0, y0) truncated at x-order L and y-order M.
/// F and F_m ignore y; G ignores x. Multi-variable ids go through
/// eval_multi. Throws BadScale, NotGrowing, PoleError for H at a pole, and
/// InsufficientPrecision when the tail does not close.
EvalResult jet_eval(const FunctionInstance& inst, const Rat& x0, const Rat& y0, int L, int M,
                    const Precision& prec = {});

EvalResult eval_F(const FunctionInstance& inst, const Rat& x, const Precision& prec = {});
EvalResult eval_G(const FunctionInstance& inst, const Rat& y, const Precision& prec = {});
EvalResult eval_H(const FunctionInstance& inst, const Rat& x, const Rat& y, const Precision& prec = {});
EvalResult eval_Theta(const FunctionInstance& inst, const Rat& x, const Rat& y, const Precision& prec = {});
EvalResult eval_Xi(const FunctionInstance& inst, const Rat& x, const Rat& y, const Precision& prec = {});

/// The exact jet of the first K+1 terms (or factors). This is what
/// jet_eval converts into the backend; tests use it at small K as an oracle.
BiJet<Rat> partial_jet(const FunctionInstance& inst, const Rat& x0, const Rat& y0, int L, int M,
                       std::size_t K, std::vector<std::size_t>* zero_factors = nullptr);

/// g(x; z) = sum x^k z^{d^k} for |z| < 1 at the place. Throws BadPoint.
EvalResult eval_gdary(const Rat& x, const Rat& z, long d, const Place& place, const Precision& prec = {});

/// Several-variable functions at x and the point z under the companion
/// transform of rec: f_m(x; z), g_j(z) and h_jm(x; z), with x-jets up to L.
/// The point must satisfy |z_i| <= 1 for all i and |z_i| < 1 for some i at
/// its place, otherwise NotInDomain.
EvalResult eval_multi(FunctionId kind, const LinearRecurrence& rec, const Rat& x, const MPoint& z,
                      long m, const Rat& beta, int L = 0, const Precision& prec = {});

/// Truncated several-variable sum over k = 0..K in exact arithmetic.
BiJet<Rat> partial_multi(FunctionId kind, const LinearRecurrence& rec, const Rat& x, const MPoint& z, long m,
                         const Rat& beta, int L, std::size_t K);

/// M(Omega^k z) = z_1^{R_{k+n-1}} ... z_n^{R_k}
Rat monomial_value(const LinearRecurrence& rec, const MPoint& z, std::size_t k);

struct NBeta {
  std::size_t count = 0;
  std::vector<std::size_t> witnesses;
};

/// Number of k with a^{-R_k} = beta, the order of G at beta.
NBeta n_beta(const LinearRecurrence& rec, const Rat& a, const Rat& beta);

}  // namespace recmahler
