#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "recmahler/error.hpp"
#include "recmahler/functions.hpp"
#include "recmahler/lll.hpp"
#include "recmahler/probe.hpp"

using namespace recmahler;

namespace {

LinearRecurrence fib2() { return LinearRecurrence::make({1, 1}, {1, 2}); }

FunctionInstance inst(FunctionId id, LinearRecurrence r = fib2()) {
  return FunctionInstance{std::move(r), Rat(1, 2), Place::infinity(), id};
}

LabeledValue exact(const std::string& label, const Rat& q, long digits) {
  return {label, ComplexBall::from_rat(q, bits_for_digits(digits)),
          [q](mpfr_prec_t bits) { return ComplexBall::from_rat(q, bits); }};
}

// value (l, m) of a jet, recomputable at any precision
LabeledValue jet_value(const std::string& label, const FunctionInstance& f, const Rat& x, const Rat& y, int l,
                       int m, long digits) {
  auto at = [=](mpfr_prec_t bits) {
    return jet_eval(f, x, y, l, m, Precision{bits, 64}).complex().at(l, m);
  };
  return {label, at(bits_for_digits(digits)), at};
}

// Gram-Schmidt over Q, written out directly
std::vector<std::vector<Rat>> gso(const IntMatrix& b, std::vector<std::vector<Rat>>& mu) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rat>> star(n);
  mu.assign(n, std::vector<Rat>(n, Rat(0)));
  auto dot = [](const std::vector<Rat>& u, const std::vector<Rat>& v) -> Rat {
    Rat s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> bi(b[i].begin(), b[i].end());
    star[i] = bi;
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(bi, star[j]) / dot(star[j], star[j]);
      for (std::size_t c = 0; c < bi.size(); ++c) star[i][c] -= mu[i][j] * star[j][c];
    }
  }
  return star;
}

}  // namespace

TEST_CASE("LLL output is size reduced, satisfies Lovasz and keeps the lattice") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> entry(-1000, 1000);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    IntMatrix b(n, IntVector(n));
    for (auto& row : b)
      for (auto& x : row) x = entry(rng);
    const BigInt det = determinant(b);
    if (det == 0) continue;
    const LllResult r = lll_reduce(b);
    CHECK(abs(determinant(r.basis)) == abs(det));
    std::vector<std::vector<Rat>> mu;
    const auto star = gso(r.basis, mu);
    auto norm2 = [](const std::vector<Rat>& v) -> Rat {
      Rat s = 0;
      for (const auto& x : v) s += x * x;
      return s;
    };
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(gram_schmidt_norm2(r, i) == norm2(star[i]));
      for (std::size_t j = 0; j < i; ++j) CHECK(abs(mu[i][j]) <= Rat(1, 2));
      if (i > 0)
        CHECK(norm2(star[i]) >= (Rat(99, 100) - mu[i][i - 1] * mu[i][i - 1]) * norm2(star[i - 1]));
    }
  }
}

TEST_CASE("LLL rejects dependent rows") {
  CHECK_THROWS_AS(lll_reduce({{1, 2}, {2, 4}}), Error);
}

TEST_CASE("monomial basis in graded lex order") {
  const auto b = monomial_basis(2, 2);
  const std::vector<std::vector<unsigned>> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(b == want);
  CHECK(monomial_basis(3, 2).size() == 10);
}

TEST_CASE("(1, 1/2) has the relation (1, -2)") {
  const auto c = integer_relation({exact("one", 1, 50), exact("half", Rat(1, 2), 50)}, BigInt(1000), 50);
  REQUIRE(c.outcome == ProbeOutcome::Found);
  CHECK(c.relation == IntVector{1, -2});
  REQUIRE(c.recheck_residual);
  CHECK(c.recheck_residual->to_double() == 0.0);
}

TEST_CASE("(1, sqrt 2) has no relation of height 1000") {
  const mpfr_prec_t bits = bits_for_digits(50);
  BigFloat s(bits);
  mpfr_sqrt_ui(s.get(), 2, MPFR_RNDN);
  const LabeledValue root{"sqrt2", ComplexBall(s, BigFloat(bits), Bound::pow2(-static_cast<long>(bits))), {}};
  const auto c = integer_relation({exact("one", 1, 50), root}, BigInt(1000), 50);
  CHECK(c.outcome == ProbeOutcome::None);
  CHECK(c.height_excluded);
  CHECK(c.log10_lattice_floor > c.log10_relation_norm);
}

TEST_CASE("positive control: Theta(1, beta) + G'(beta) = 0 at 200 digits") {
  const Rat beta(1, 3);
  const auto c = integer_relation({jet_value("Theta(1,1/3)", inst(FunctionId::Theta), 1, beta, 0, 0, 200),
                                   jet_value("G'(1/3)", inst(FunctionId::G), 0, beta, 0, 1, 200)},
                                  BigInt(1000), 200);
  REQUIRE(c.outcome == ProbeOutcome::Found);
  CHECK(c.relation == IntVector{1, 1});
  CHECK(c.residual < Bound::pow2(-500));  // < 10^-150
  REQUIRE(c.recheck_residual);
  CHECK(*c.recheck_residual < Bound::pow2(-1000));
}

TEST_CASE("planted shift relation G(beta) = Q(beta) G~(beta) is found") {
  // N_beta = 0 at beta = 1/3; shifting by 3 pulls out Q = 1265/1728
  const Rat beta(1, 3);
  const auto c = algebraic_probe({jet_value("G", inst(FunctionId::G), 0, beta, 0, 0, 120),
                                  jet_value("G~", inst(FunctionId::G, fib2().shift(3)), 0, beta, 0, 0, 120)},
                                 1, BigInt(1000000), 120);
  REQUIRE(c.outcome == ProbeOutcome::Found);
  CHECK(c.labels == std::vector<std::string>{"1", "G", "G~"});
  CHECK(c.relation == IntVector{0, 1728, -1265});
}

TEST_CASE("duplicated value") {
  const auto v = exact("v", Rat(7, 9), 40);
  const auto c = algebraic_probe({v, v}, 1, BigInt(10), 40);
  REQUIRE(c.outcome == ProbeOutcome::Found);
  CHECK(c.relation == IntVector{0, 1, -1});
}

TEST_CASE("planted relations are recovered 100 times out of 100") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> digit(0, 9);
  std::uniform_int_distribution<long> coef(-20, 20);
  const long digits = 100;
  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 3;
    std::vector<Rat> v;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      BigInt num = 0;
      for (int d = 0; d < 110; ++d) num = 10 * num + digit(rng);
      v.push_back(Rat(num, pow(BigInt(10), 110)));
      v.back().canonicalize();
    }
    IntVector planted(n);
    Rat last = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      planted[i] = coef(rng);
      last += v[i] * Rat(planted[i]);
    }
    planted[n - 1] = -1;
    v.push_back(last);
    std::vector<LabeledValue> values;
    for (std::size_t i = 0; i < n; ++i) values.push_back(exact("v" + std::to_string(i), v[i], digits));
    const auto c = integer_relation(values, BigInt(1000), digits);
    BigInt h_planted = 1, h_found = 0;
    for (const auto& x : planted) h_planted = std::max(h_planted, BigInt(abs(x)));
    for (const auto& x : c.relation) h_found = std::max(h_found, BigInt(abs(x)));
    if (c.outcome == ProbeOutcome::Found && h_found <= h_planted) ++found;
  }
  CHECK(found == 100);
}

TEST_CASE("negative control stays NONE at three precisions") {
  const Rat t(1, 3);
  for (long digits : {200L, 250L, 300L}) {
    const auto c = algebraic_probe({jet_value("F", inst(FunctionId::F), t, 0, 0, 0, digits),
                                    jet_value("G", inst(FunctionId::G), 0, t, 0, 0, digits),
                                    jet_value("Theta", inst(FunctionId::Theta), t, t, 0, 0, digits)},
                                   2, BigInt(1000000), digits);
    CHECK(c.outcome == ProbeOutcome::None);
    CHECK(c.height_excluded);
    CHECK(c.labels.size() == 10);
  }
}

TEST_CASE("probe preconditions") {
  std::vector<LabeledValue> many;
  for (int i = 0; i < 10; ++i) many.push_back(exact("v" + std::to_string(i), Rat(i + 1, 7), 30));
  try {
    algebraic_probe(many, 3, BigInt(100), 30);
    FAIL("expected BasisTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BasisTooLarge);
  }
  LabeledValue fuzzy{"fuzzy", ComplexBall::from_rat(Rat(1, 3), 256).add_error(Bound::pow2(-20)), {}};
  try {
    integer_relation({exact("one", 1, 50), fuzzy}, BigInt(100), 50);
    FAIL("expected InsufficientPrecision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientPrecision);
  }
}
