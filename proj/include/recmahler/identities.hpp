#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "recmahler/backend.hpp"
#include "recmahler/linalg.hpp"
#include "recmahler/mpoly.hpp"
#include "recmahler/recurrence.hpp"

namespace recmahler {

/// G^{(m)}(y) = G(y) A_m(H(1,y), ..., d^{m-1}H/dy^{m-1}(1,y)); A_m lives in
/// m variables X_1..X_m and A_0 = 1.
IntPoly transfer_A(unsigned m);

/// d^{l+m}Theta/dx^l dy^m = G (d^{l+m}H/dx^l dy^m + B_m(X, Y)) with
/// X_i = d^{i-1}H/dy^{i-1}(1,y) and Y_i = d^{l+i-1}H/dx^l dy^{i-1}(x,y).
/// Variables are X_1..X_m, Y_1..Y_m; B_0 = 0.
IntPoly transfer_B(unsigned m);

/// The inverse direction: d^{l+m}H/dx^l dy^m = (1/G) d^{l+m}Theta/dx^l dy^m
/// + C_m(X, Y) with X_i = (1/G) d^{i-1}Theta/dy^{i-1}(1,y) and
/// Y_i = (1/G) d^{l+i-1}Theta/dx^l dy^{i-1}(x,y).
IntPoly transfer_C(unsigned m);

struct TransferPolys {
  IntPoly A;
  IntPoly B;
};

/// A_m and B_m for m >= 1 (InvalidArgument otherwise).
TransferPolys transfer_polys(unsigned m);
IntPoly transfer_polys_C(unsigned m);

/// "X1".."Xm" and, with Y, "Y1".."Ym".
std::vector<std::string> transfer_variable_names(unsigned m, bool with_y);

enum class IdentityId {
  ThetaX0,
  Theta1Y,
  ThetaGH,
  GPrime,
  MahlerGD,
  MahlerS4G,
  MahlerS4H,
  MahlerS4F,
  ShiftG,
  ShiftTheta,
  DerTransfer,
};

const char* identity_name(IdentityId id);
IdentityId parse_identity_id(const std::string& text);

struct CatalogEntry {
  IdentityId id;
  const char* statement;
};

/// Every identity verify() knows, with the relation it checks.
const std::vector<CatalogEntry>& identity_catalog();

/// Everything an identity may need; each one reads its own fields.
struct IdentityParams {
  LinearRecurrence rec = LinearRecurrence::make({1, 1}, {0, 1});
  Rat a{1, 2};
  Place place = Place::infinity();
  Precision prec;
  Rat x{1, 3};
  Rat y{1, 4};
  int L = 2;
  int M = 3;
  /// zero of G for the shift identities, beta_j for g_j and h_jm
  Rat beta = 1;
  /// m of f_m and h_jm
  long m = 0;
  /// g(x; z) = x g(x; z^d) + z at z = dary_z
  long d = 2;
  Rat dary_z{1, 2};
  /// several-variable point; empty means (1, ..., 1, 1/2)
  std::vector<Rat> point;
  /// Omega^k z for k = 0..shifts
  std::size_t shifts = 10;
  /// replaces the default tolerance when positive: 2^-tolerance_bits at
  /// infinity, valuation >= tolerance_bits at a prime
  long tolerance_bits = 0;
};

enum class CaseStatus { Pass, Fail, Skipped };
const char* case_status_name(CaseStatus s);

struct IdentityCase {
  IdentityId id = IdentityId::ThetaX0;
  std::string params;
  Place place = Place::infinity();
  /// LHS - RHS of the worst check
  PrecisionScalar residual;
  /// complex: upper bound on |LHS - RHS| over all checks
  Bound residual_abs;
  /// p-adic: lower bound on v(LHS - RHS) over all checks
  long residual_valuation = PAdic::kExactZero;
  Bound tolerance;
  long threshold = 0;
  std::size_t checks = 0;
  CaseStatus status = CaseStatus::Skipped;
  std::string reason;
};

/// Evaluate both sides of an identity by separate routes and compare.
/// Complex tolerance is 2^-(bits-76), p-adic threshold digits-8. Poles,
/// points outside the domain and beta = 0 give Skipped with a reason.
IdentityCase verify(IdentityId id, const IdentityParams& params);

struct SuiteCase {
  IdentityId id;
  IdentityParams params;
};

/// The full catalog at parameters where every identity applies. At
/// infinity: a = 1/2, the shift identities at beta = 2 and beta = 1/3, the
/// several-variable equations along Omega^k (1, 1/2) for k <= 10. At a
/// prime p: a = p and points of absolute value at most 1.
std::vector<SuiteCase> default_suite(const Place& place, const Precision& prec = {});

enum class RankMode { RRR, SSS };
const char* rank_mode_name(RankMode m);

struct RankCheck {
  RankMode mode = RankMode::RRR;
  std::vector<Rat> betas;
  int M = 0;
  /// rows: Taylor coefficients at X = 0; columns: unknowns
  RatMatrix matrix;
  std::size_t rank = 0;
  std::vector<IntVector> kernel;

  std::size_t unknowns() const { return matrix.empty() ? 0 : matrix.front().size(); }
  bool full_rank() const { return rank == unknowns(); }
};

/// RRR: columns 1, X^{m+1}, (X/(1-b_j X))^{m+1} for m <= M with
/// (s+1)(M+1)+2 Taylor rows. Full column rank means
/// sum c_{0m} X^{m+1} + sum c_{jm} (X/(1-b_j X))^{m+1} = delta only for
/// c = 0, delta = 0.
/// SSS: prod (1-b_j X)^{d_j} = 1 has logarithmic derivative
/// sum b_j d_j X/(1-b_j X) = 0 up to a factor; columns are the d_j.
/// Throws ZeroBeta and DuplicateBeta.
RankCheck rank_check(RankMode mode, const std::vector<Rat>& betas, int M);

}  // namespace recmahler
