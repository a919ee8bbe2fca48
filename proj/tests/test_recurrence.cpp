#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "recmahler/error.hpp"
#include "recmahler/linalg.hpp"
#include "recmahler/recurrence.hpp"
#include "recmahler/roots.hpp"

using namespace recmahler;

namespace {

LinearRecurrence rec(std::vector<long> c, std::vector<long> init) {
  std::vector<BigInt> cc(c.begin(), c.end()), ii(init.begin(), init.end());
  return LinearRecurrence::make(cc, ii);
}

LinearRecurrence fib() { return rec({1, 1}, {1, 2}); }

UPoly poly(std::vector<long> c) { return UPoly(std::vector<BigInt>(c.begin(), c.end())); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

const Clause& clause(const std::vector<Clause>& cs, const std::string& name) {
  return *std::find_if(cs.begin(), cs.end(), [&](const Clause& c) { return c.name == name; });
}

}  // namespace

TEST_CASE("make_recurrence validation") {
  CHECK(code_of([] { rec({1, 1}, {0, 0}); }) == ErrorCode::AllZeroInit);
  CHECK(code_of([] { rec({1, 0}, {1, 1}); }) == ErrorCode::LastCoeffZero);
  CHECK(code_of([] { rec({1}, {1}); }) == ErrorCode::OrderTooSmall);
  CHECK(code_of([] { rec({-1, 1}, {1, 1}); }) == ErrorCode::NegativeCoeff);
}

TEST_CASE("terms") {
  const auto f = fib();
  const std::vector<BigInt> expect{1, 2, 3, 5, 8};
  CHECK(f.terms(5) == expect);
  CHECK(rec({1, 2}, {1, 2}).term(2) == 4);
  CHECK(rec({3, 0, 1}, {4, 0, 7}).term(0) == 4);
  // Binet-free oracle: F_{k+2} from the doubling identities via mpz_fib_ui
  for (unsigned long k = 0; k <= 200; ++k) {
    BigInt F;
    mpz_fib_ui(F.get_mpz_t(), k + 2);
    CHECK(f.term(k) == F);
  }
}

TEST_CASE("terms agree with companion matrix powers") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<long> c(n), init(n);
    for (auto& x : c) x = static_cast<long>(rng() % 3);
    c.back() = 1 + static_cast<long>(rng() % 2);
    for (auto& x : init) x = static_cast<long>(rng() % 5);
    init[0] = 1;
    const auto r = rec(c, init);
    // state (R_{k+n-1},...,R_k) advanced by the companion matrix
    IntMatrix A(n, IntVector(n, 0));
    for (std::size_t j = 0; j < n; ++j) A[0][j] = c[j];
    for (std::size_t i = 1; i < n; ++i) A[i][i - 1] = 1;
    IntVector state(n);
    for (std::size_t i = 0; i < n; ++i) state[i] = init[n - 1 - i];
    IntMatrix P = identity_matrix(n);
    for (std::size_t k = 0; k <= 200; ++k) {
      CHECK(multiply(P, state)[n - 1] == r.term(k));
      P = multiply(A, P);
    }
  }
}

TEST_CASE("is_geometric") {
  CHECK(rec({1, 2}, {1, 2}).is_geometric());
  CHECK_FALSE(fib().is_geometric());
  CHECK_FALSE(rec({1, 1}, {0, 1}).is_geometric());
}

TEST_CASE("cyclotomic polynomials and phi") {
  CHECK(cyclotomic(1) == poly({-1, 1}));
  CHECK(cyclotomic(2) == poly({1, 1}));
  CHECK(cyclotomic(6) == poly({1, -1, 1}));
  CHECK(cyclotomic(12) == poly({1, 0, -1, 0, 1}));
  for (long m = 1; m < 60; ++m) CHECK(cyclotomic(m).degree() == euler_phi(m));
}

TEST_CASE("ratio_roots_root_of_unity") {
  CHECK_FALSE(ratio_roots_root_of_unity(poly({-1, -1, 1})).found);
  const auto r = ratio_roots_root_of_unity(poly({-2, 0, 1}));
  CHECK(r.found);
  CHECK(r.order == 2);
  CHECK_FALSE(ratio_roots_root_of_unity(poly({2, -3, 1})).found);
  // X^3 - 2: ratios are primitive cube roots of unity
  CHECK(ratio_roots_root_of_unity(poly({-2, 0, 0, 1})).order == 3);
  CHECK(code_of([] { ratio_roots_root_of_unity(poly({1, -2, 1})); }) == ErrorCode::NonSquarefree);
}

// Numeric oracle over every ordered pair of certified roots, visited in a
// shuffled order: a ratio is a root of unity iff it has modulus one and a
// small power equals one.
TEST_CASE("root-of-unity verdict matches a numeric pairwise oracle in any root order") {
  const std::vector<UPoly> polys{poly({-1, -1, 1}), poly({-2, 0, 1}), poly({2, -3, 1}), poly({-2, 0, 0, 1}),
                                 poly({-1, -1, 0, 1}), poly({-3, 0, 0, 0, 1}), poly({-1, -2, -1, 1}),
                                 poly({-5, 0, -1, 0, 1})};
  std::mt19937_64 rng(17);
  for (const auto& f : polys) {
    const bool exact = ratio_roots_root_of_unity(f).found;
    auto roots = *isolate_roots(f, 128);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      std::shuffle(roots.begin(), roots.end(), rng);
      bool numeric = false;
      for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j) {
          if (i == j) continue;
          const std::complex<double> q = std::complex<double>(roots[i].re().to_double(), roots[i].im().to_double()) /
                                         std::complex<double>(roots[j].re().to_double(), roots[j].im().to_double());
          for (int m = 1; m <= 60 && !numeric; ++m)
            if (std::abs(std::pow(q, m) - 1.0) < 1e-9) numeric = true;
        }
      CHECK(numeric == exact);
    }
  }
}

TEST_CASE("is_irreducible_over_Q") {
  CHECK(is_irreducible_over_Q(poly({-1, -1, 1})).verdict == Verdict::Pass);
  const auto f = is_irreducible_over_Q(poly({2, -3, 1}));
  CHECK(f.verdict == Verdict::Fail);
  REQUIRE(f.factor);
  CHECK((*f.factor == poly({-1, 1}) || *f.factor == poly({-2, 1})));
  CHECK(is_irreducible_over_Q(poly({-2, 0, 1})).verdict == Verdict::Pass);
  // X^4 + 1 splits modulo every prime but not over Q
  CHECK(is_irreducible_over_Q(poly({1, 0, 0, 0, 1})).verdict == Verdict::Pass);
  // (X^2 + 1)(X^2 + X + 1)
  const auto g = is_irreducible_over_Q(poly({1, 1, 2, 1, 1}));
  CHECK(g.verdict == Verdict::Fail);
  REQUIRE(g.factor);
  CHECK(divide_exact(poly({1, 1, 2, 1, 1}), *g.factor));
  // X^10 - X - 1 through degree patterns
  std::vector<long> sel(11, 0);
  sel[0] = -1;
  sel[1] = -1;
  sel[10] = 1;
  CHECK(is_irreducible_over_Q(poly(sel)).verdict == Verdict::Pass);
}

TEST_CASE("root isolation certifies disjoint disks") {
  const auto roots = isolate_roots(poly({-1, -1, 1}), 256);
  REQUIRE(roots);
  const auto idx = dominant_root(*roots);
  REQUIRE(idx);
  CHECK(std::abs((*roots)[*idx].re().to_double() - (1 + std::sqrt(5.0)) / 2) < 1e-15);
  CHECK((*roots)[*idx].rad() < Bound::pow2(-200));
  CHECK_FALSE(isolate_roots(poly({1, -2, 1}), 256));
}

TEST_CASE("check_condition") {
  const auto inf = check_condition(fib(), Place::infinity());
  CHECK(inf.overall == Verdict::Pass);
  CHECK(clause(inf.clauses, "phi_pm1_nonzero").evidence == "Phi(1)=-1, Phi(-1)=1");
  const auto p2 = check_condition(fib(), Place::prime(2));
  CHECK(p2.overall == Verdict::Pass);
  CHECK(p2.implied.size() == 3);
  const auto geo = check_condition(rec({1, 2}, {1, 2}), Place::infinity());
  CHECK(geo.overall == Verdict::Fail);
  CHECK(clause(geo.clauses, "not_geometric").verdict == Verdict::Fail);
  const auto sq = check_condition(rec({0, 2}, {1, 1}), Place::infinity());
  CHECK(clause(sq.clauses, "ratio_not_root_of_unity").verdict == Verdict::Fail);
  CHECK(check_condition(rec({0, 2}, {1, 1}), Place::prime(3)).overall == Verdict::Fail);
}

TEST_CASE("prime-place PASS implies every archimedean clause PASS") {
  std::mt19937_64 rng(99);
  int prime_passes = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<long> c(n), init(n);
    for (auto& x : c) x = static_cast<long>(rng() % 4);
    c.back() = 1 + static_cast<long>(rng() % 3);
    for (auto& x : init) x = static_cast<long>(rng() % 4);
    init[n - 1] = 1 + static_cast<long>(rng() % 3);
    const auto r = rec(c, init);
    const auto rep = check_condition(r, Place::prime(3));
    if (rep.overall != Verdict::Pass) continue;
    ++prime_passes;
    const auto inf = check_condition(r, Place::infinity());
    CHECK(clause(inf.clauses, "phi_pm1_nonzero").verdict == Verdict::Pass);
    CHECK(clause(inf.clauses, "ratio_not_root_of_unity").verdict == Verdict::Pass);
  }
  CHECK(prime_passes > 5);
}

TEST_CASE("growth_estimate") {
  const auto g = growth_estimate(fib(), 120);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(g.rho.re().to_double() - phi) < 1e-14);
  CHECK(std::abs(g.c.re().to_double() - phi * phi / std::sqrt(5.0)) < 1e-12);
  const auto h = growth_estimate(rec({2, 1}, {1, 2}), 100);
  CHECK(std::abs(h.rho.re().to_double() - (1 + std::sqrt(2.0))) < 1e-14);
  CHECK(code_of([] { growth_estimate(rec({1, 2}, {1, 2}), 50); }) == ErrorCode::ConditionNotMet);
}

TEST_CASE("terms grow like rho^k once the condition holds") {
  const auto r = rec({1, 0, 1}, {1, 1, 2});
  REQUIRE(check_condition(r, Place::infinity()).overall == Verdict::Pass);
  const auto g = growth_estimate(r, 120);
  CHECK(g.c.rad().to_double() / g.c.re().to_double() < 0.01);
  for (std::size_t k = 20; k < 120; ++k) CHECK(r.term(k + 1) > r.term(k));
}

TEST_CASE("shift and compute_k0") {
  const auto s = fib().shift(2);
  CHECK(s.init() == std::vector<BigInt>{3, 5});
  CHECK(s.coeffs() == fib().coeffs());
  const Rat half(1, 2);
  CHECK(compute_k0(fib(), half, {Rat(2)}, Place::infinity()) == 1);
  CHECK(compute_k0(fib(), half, {Rat(3)}, Place::infinity()) == 0);
  CHECK(compute_k0(fib(), half, {Rat(8), Rat(3)}, Place::infinity()) == 3);
  CHECK(code_of([] { compute_k0(fib(), Rat(2), {Rat(1)}, Place::infinity()); }) == ErrorCode::BadScale);
  CHECK(compute_k0(fib(), Rat(2), {Rat(1, 4)}, Place::prime(2)) == 2);
  CHECK(beta_witnesses(fib(), half, Rat(1, 2)).empty());
  CHECK(beta_witnesses(fib(), half, Rat(3)).empty());
  CHECK(beta_witnesses(fib(), half, Rat(2)) == std::vector<std::size_t>{0});
  CHECK(beta_witnesses(rec({1, 1}, {1, 1}), half, Rat(2)) == std::vector<std::size_t>{0, 1});
}
